"""Hypothesis strategies shared by the property tests."""
from hypothesis import strategies as st

from srdops.simplicial import _minimize, SimplicialComplex


@st.composite
def complexes(draw, max_n: int = 5):
    """Random complex whose facets cover every vertex."""
    n = draw(st.integers(1, max_n))
    full = (1 << n) - 1
    masks = draw(st.lists(st.integers(1, full), min_size=1, max_size=6))
    covered = 0
    for m in masks:
        covered |= m
    # every uncovered vertex becomes an isolated point
    masks += [1 << v for v in range(n) if not covered >> v & 1]
    return SimplicialComplex(n, _minimize(masks))


@st.composite
def faces_of(draw, K):
    return draw(st.sampled_from(K.face_masks))


def exps(n: int, hi: int = 3):
    return st.tuples(*[st.integers(0, hi)] * n)
