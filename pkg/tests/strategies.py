"""Hypothesis strategies for shapes, blocks and group elements."""

from __future__ import annotations

import math

from hypothesis import strategies as st

from gridesigns.catalog import CATALOG
from gridesigns.grid import Block, GridShape, PermTuple


@st.composite
def shapes(draw, s_min: int = 2, s_max: int = 4, e_max: int = 5, v_max: int = 200) -> GridShape:
    s = draw(st.integers(s_min, s_max))
    e = []
    for i in range(s):
        room = v_max // max(1, math.prod(e)) // 2 ** (s - i - 1)
        e.append(draw(st.integers(2, max(2, min(e_max, room)))))
    return GridShape(tuple(e))


@st.composite
def blocks(draw, shape: GridShape | None = None, k_min: int = 1, k_max: int = 12, **shape_kw) -> Block:
    if shape is None:
        shape = draw(shapes(**shape_kw))
    k = draw(st.integers(k_min, min(k_max, shape.v)))
    idx = draw(st.lists(st.integers(0, shape.v - 1), min_size=k, max_size=k, unique=True))
    return Block(shape, tuple(shape.decode(i) for i in sorted(idx)))


@st.composite
def elements(draw, shape: GridShape) -> PermTuple:
    return PermTuple(tuple(tuple(draw(st.permutations(range(n)))) for n in shape.e))


@st.composite
def catalog_images(draw) -> Block:
    """A catalog block moved by a random group element: always a 2-design."""
    row = draw(st.sampled_from(CATALOG))
    blk = row.block()
    return blk.image(draw(elements(blk.shape)))


def mixed_blocks() -> st.SearchStrategy[Block]:
    """Random blocks, with catalog designs mixed in so both verdicts occur."""
    return st.one_of(blocks(), catalog_images())
