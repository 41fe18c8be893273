import math
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gridesigns.arrays import array_of
from gridesigns.constructions import (
    ConstructionIntegrityError,
    assemble,
    construct,
    des2,
    des3,
    des4_2,
    des_parameters,
    des_shape,
    lambda_des2_closed_form,
)
from gridesigns.criteria import check_2design, lambda_of, square_sums
from gridesigns.grid import GridShape, cell_geometry, coordset
from gridesigns.symmetry import stabilizer


@pytest.mark.parametrize("s,p,e,v,k", [
    (2, 2, (7, 3), 21, 5),
    (3, 2, (7, 3, 13), 273, 17),
    (4, 2, (7, 3, 13, 241), 65793, 257),
])
def test_family_shapes(s, p, e, v, k):
    fam = des_shape(s, p)
    assert (fam.shape.e, fam.v, fam.k) == (e, v, k)
    assert des_parameters(fam.shape) == p


def test_family_shape_rejects_small_arguments():
    with pytest.raises(ValueError):
        des_shape(1, 2)
    with pytest.raises(ValueError):
        des_shape(2, 1)
    assert des_parameters(GridShape((2, 2, 4))) is None


@given(st.integers(2, 12), st.integers(2, 5))
def test_family_shape_identities(p, i):
    fam = des_shape(5, p)
    e = fam.shape.e
    assert math.prod(e[:i]) == p ** (2 ** i) + p ** (2 ** (i - 1)) + 1
    assert sum(x - 1 for x in e[1:i]) == p ** (2 ** (i - 1)) - p
    if i >= 3:
        q = lambda j: p ** (2 ** (j - 2))  # noqa: E731
        assert e[i - 1] - 1 == (e[i - 2] - 1) * (q(i) + q(i - 1))


@given(st.integers(2, 12), st.integers(2, 5))
def test_family_block_size_satisfies_v_minus_one(p, s):
    fam = des_shape(s, p)
    assert fam.v - 1 == fam.k * (fam.k - 1)


def test_des2_small_cases():
    assert des2(2).points == ((0, 0), (1, 0), (2, 0), (3, 1), (3, 2))
    blk = des2(3)
    assert blk.k == 10
    assert array_of(blk, coordset([0])).tolist() == [1, 1, 1, 1, 2, 2, 2] + [0] * 6


@pytest.mark.parametrize("p", range(2, 11))
def test_des2_arrays_and_verdict(p):
    blk = des2(p)
    fam = des_shape(2, p)
    assert (blk.shape.v, blk.k) == (p ** 4 + p ** 2 + 1, p ** 2 + 1) == (fam.v, fam.k)
    h = (p * p - p) // 2
    cols = array_of(blk, coordset([0])).tolist()
    assert cols == [1] * (p + 1) + [2] * h + [0] * (len(cols) - p - 1 - h)
    rows = array_of(blk, coordset([1])).tolist()
    assert rows == [p + 1] + [1] * (p * p - p)
    assert check_2design(blk, "all").is_2_design
    # with k(k-1) = v-1 the arrays target reduces to k + c_J - 1
    sq = square_sums(blk)
    for m in blk.shape.proper_masks():
        assert sq[m] == blk.k + cell_geometry(blk.shape, m)[0] - 1


def test_des2_closed_form_values():
    assert lambda_des2_closed_form(2) == 20
    for p in (2, 3):
        blk = des2(p)
        assert lambda_of(blk, stabilizer(blk).order)[0] == lambda_des2_closed_form(p)


def test_des3_p2_points():
    layered = [p for p in des3(2).points if p[2] != 0]
    assert sorted(layered) == sorted([
        (4, 1, 1), (4, 1, 2), (5, 1, 3), (5, 1, 4), (6, 1, 5), (6, 1, 6),
        (4, 2, 7), (4, 2, 8), (5, 2, 9), (5, 2, 10), (6, 2, 11), (6, 2, 12)])
    blk = des3(2)
    assert array_of(blk, coordset([0])).tolist() == [1, 1, 1, 2, 4, 4, 4]
    assert array_of(blk, coordset([1])).tolist() == [3, 7, 7]


@pytest.mark.parametrize("p", range(2, 8))
def test_des3_integrity_and_verdict(p):
    blk = des3(p)
    assert blk.k == p ** 4 + 1
    layers = Counter(q[2] for q in blk.points if q[2])
    assert sorted(layers) == list(range(1, blk.shape.e[2]))
    assert set(layers.values()) == {1}
    assert check_2design(blk, "all").is_2_design


def test_des3_odd_column_pattern():
    p = 3
    blk = des3(p)
    e2 = blk.shape.e[1]
    h = (p * p - p) // 2
    cols = array_of(blk, coordset([0])).tolist()
    assert cols == [1] + [p * p] * p + [e2 + 1] * h + [(p - 1) ** 2] * p + [e2 - 1] * h


@pytest.mark.parametrize("p", [3, 4])
def test_des3_unadjusted_tables_fail_integrity(p):
    with pytest.raises(ConstructionIntegrityError):
        des3(p, literal=True)


def test_des4_2_block():
    blk = des4_2()
    assert (blk.shape.v, blk.k) == (65793, 257)
    assert sum(1 for q in blk.points if q[3]) == 240
    assert array_of(blk, coordset([0])).tolist() == [33, 33, 33, 50, 36, 36, 36]
    vals = Counter(int(x) for x in array_of(blk, coordset([1, 2])).ravel() if x)
    assert vals == Counter({3: 1, 1: 2, 5: 12, 6: 12, 10: 12})


def test_des4_2_listed_runs_fail_integrity():
    with pytest.raises(ConstructionIntegrityError):
        des4_2(literal=True)


def test_assemble_checks_layers():
    shape = des_shape(2, 2).shape
    with pytest.raises(ConstructionIntegrityError, match="layer 1"):
        assemble([(0,), (1,), (2,)], [(3, 1), (4, 1), (5, 2)], shape)
    with pytest.raises(ConstructionIntegrityError, match="layer 0"):
        assemble([(0,)], [(3, 0), (3, 1), (3, 2)], shape)
    blk = assemble([(a,) for a in range(3)], [(3, 1), (3, 2)], shape)
    assert blk == des2(2)


def test_construct_dispatch():
    assert construct("des2", 2) == des2(2)
    with pytest.raises(ValueError):
        construct("des4", 3)
    with pytest.raises(ValueError):
        construct("nope", 2)
