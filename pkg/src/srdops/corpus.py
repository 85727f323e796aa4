"""Named example complexes and exhaustive small corpora."""
from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterator

from .simplicial import SimplicialComplex, _minimize, build_complex, join, simplex


def boundary_triangle() -> SimplicialComplex:
    """Boundary of the 2-simplex; face ideal ``<x1 x2 x3>``."""
    return build_complex(3, [[0, 1], [0, 2], [1, 2]])


def path_of_three_edges() -> SimplicialComplex:
    """Edges 12, 23, 34; face ideal ``<x1 x3, x1 x4, x2 x4>``."""
    return build_complex(4, [[0, 1], [1, 2], [2, 3]])


def cone_over_path() -> SimplicialComplex:
    """Triangles 125, 235, 345: the cone with apex 5 over the path."""
    return build_complex(5, [[0, 1, 4], [1, 2, 4], [2, 3, 4]])


def named() -> dict[str, SimplicialComplex]:
    return {
        "K_A": boundary_triangle(),
        "K_B": path_of_three_edges(),
        "K_C": cone_over_path(),
        "point": simplex(1),
        "simplex2": simplex(2),
        "simplex3": simplex(3),
    }


def _canonical(n: int, facets: tuple[int, ...]) -> tuple[int, ...]:
    best = None
    for perm in permutations(range(n)):
        img = []
        for f in facets:
            m = 0
            for v in range(n):
                if f >> v & 1:
                    m |= 1 << perm[v]
            img.append(m)
        key = tuple(sorted(img))
        if best is None or key < best:
            best = key
    return best  # type: ignore[return-value]


def small_complexes(max_n: int = 4, include_empty: bool = True) -> Iterator[SimplicialComplex]:
    """Every complex on at most ``max_n`` vertices, one per isomorphism class.

    All vertices are used; ``{∅}`` on zero vertices is included when asked.
    """
    if include_empty:
        yield simplex(0)
    for n in range(1, max_n + 1):
        full = (1 << n) - 1
        subsets = list(range(1, full + 1))
        seen = set()
        # antichains are enumerated as sets of maximal faces
        for k in range(1, len(subsets) + 1):
            found_any = False
            for combo in combinations(subsets, k):
                if any(a & b == a for a in combo for b in combo if a != b):
                    continue
                found_any = True
                covered = 0
                for f in combo:
                    covered |= f
                if covered != full:
                    continue
                key = _canonical(n, combo)
                if key in seen:
                    continue
                seen.add(key)
                yield SimplicialComplex(n, _minimize(key))
            if not found_any:
                break


def corpus() -> list[tuple[str, SimplicialComplex]]:
    """Named complexes followed by all complexes on at most 4 vertices."""
    out = list(named().items())
    out += [(f"small{i}", K) for i, K in enumerate(small_complexes(4))]
    return out


__all__ = [
    "boundary_triangle",
    "path_of_three_edges",
    "cone_over_path",
    "named",
    "small_complexes",
    "corpus",
    "join",
]
