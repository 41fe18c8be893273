import json
import subprocess
import sys

import pytest

from gridesigns.catalog import CATALOG
from gridesigns.cli import dump_design, parse_design, run


def _write(tmp_path, block, name="b.json"):
    path = tmp_path / name
    path.write_text(dump_design(block))
    return str(path)


def _json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_design_file_round_trip_is_byte_stable():
    text = dump_design(CATALOG[0].block(), {"name": "row 1"})
    block, meta = parse_design(text)
    assert meta == {"name": "row 1"}
    assert dump_design(block, meta) == text
    shuffled = json.dumps({"shape": [2, 2, 4], "block": list(reversed([list(p) for p in block.points])),
                           "meta": meta})
    assert dump_design(*parse_design(shuffled)) == text


def test_construct_des3(capsys):
    assert run(["construct", "--family", "des3", "--p", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["shape"] == [7, 3, 13]
    assert len(doc["block"]) == 17


def test_construct_to_file(tmp_path):
    out = tmp_path / "d.json"
    assert run(["construct", "--family", "des2", "--p", "3", "-o", str(out)]) == 0
    assert json.loads(out.read_text())["shape"] == [13, 7]


def test_verify_row1(tmp_path, capsys):
    path = _write(tmp_path, CATALOG[0].block())
    assert run(["verify", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["is_2_design"] is True
    assert doc["lambda"] == "2" and doc["b"] == "16"
    assert run(["verify", path, "--method", "alternating"]) == 0


def test_verify_not_4_design(tmp_path, capsys):
    path = _write(tmp_path, CATALOG[0].block())
    assert run(["verify", path, "--t", "4"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "not a 4-design"
    assert run(["verify", path, "--t", "2"]) == 0


def test_verify_false(tmp_path, capsys):
    from gridesigns.grid import Block
    path = _write(tmp_path, Block.of((2, 2, 4), [(0, 0, 0), (0, 0, 1), (0, 0, 2)]))
    assert run(["verify", path]) == 1
    assert json.loads(capsys.readouterr().out)["is_2_design"] is False


def test_reports_are_mutually_consistent(tmp_path, capsys):
    blk = CATALOG[8].block()
    path = _write(tmp_path, blk)
    run(["verify", path])
    ver = json.loads(capsys.readouterr().out)
    run(["stab", path])
    stab = json.loads(capsys.readouterr().out)
    run(["lambda", path])
    lam = json.loads(capsys.readouterr().out)
    assert ver["lambda"] == lam["lambda"] == "4320"
    assert stab["order"] == lam["stab_order"] == ver["stab_order"]
    v, k = blk.shape.v, blk.k
    assert int(lam["lambda"]) * v * (v - 1) == k * (k - 1) * int(lam["b"])


def test_arrays_subcommand(tmp_path, capsys):
    path = _write(tmp_path, CATALOG[0].block())
    assert run(["arrays", path, "--J", "3"]) == 0
    assert json.loads(capsys.readouterr().out) == [{"J": "3", "counts": [3, 1, 1, 1]}]
    assert run(["arrays", path]) == 0
    assert [e["J"] for e in json.loads(capsys.readouterr().out)] == ["1", "2", "1,2", "3", "1,3", "2,3"]
    assert run(["arrays", path, "--J", "1,2,3"]) == 2


def test_ft_subcommand(tmp_path, capsys):
    path = _write(tmp_path, CATALOG[0].block())
    assert run(["ft", path]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["flag_transitive"] is False and doc["prefilter_passed"] is False


def test_search_subcommands(capsys):
    assert run(["search-params", "--s", "3", "--max-k", "7"]) == 0
    lines = _json_lines(capsys.readouterr().out)
    assert {"e": [2, 2, 4], "k": 6, "v": 16, "trivial": False} in lines
    assert run(["search-blocks", "--shape", "2,2,4", "--k", "6"]) == 0
    out = capsys.readouterr()
    lines = _json_lines(out.out)
    assert len(lines) == 7
    assert sorted(int(x["lambda"]) for x in lines) == [2, 6, 6, 6, 12, 12, 12]
    assert json.loads(out.err)["complete"] is True


def test_catalog_verify(capsys):
    assert run(["catalog-verify"]) == 0
    assert len(_json_lines(capsys.readouterr().out)) == 10


@pytest.mark.parametrize("content", ["{bad", '{"shape": [2, 2]}', '{"shape": [2, 2], "block": [[0, 5]]}',
                                     '{"shape": [2, 2], "block": [[0, 0]], "extra": 1}'])
def test_bad_input_exits_2(tmp_path, capsys, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    assert run(["verify", str(path)]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_missing_file_and_unknown_flag(capsys):
    assert run(["verify", "/nonexistent/file.json"]) == 2
    with pytest.raises(SystemExit) as exc:
        run(["verify", "x.json", "--bogus"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gridesigns", "search-params", "--s", "2", "--max-k", "5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert {"e": [3, 7], "k": 5, "v": 21, "trivial": False} in _json_lines(proc.stdout)
