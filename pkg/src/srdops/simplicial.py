"""Finite abstract simplicial complexes, closed stars and the star poset.

Vertices are ``0 .. n-1`` internally.  A face is stored as an integer bit
mask; the public functions accept any iterable of vertex indices and
return faces as ``frozenset``.  A complex keeps only its facets and
enumerates faces on demand.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from . import kernels
from .errors import BadIndex, EmptyComplex, GhostVertex, NotAFace

Face = frozenset

__all__ = [
    "Face",
    "SimplicialComplex",
    "StarNode",
    "StarPoset",
    "build_complex",
    "simplex",
    "is_face",
    "closed_star",
    "open_complement",
    "star_leq",
    "star_poset",
    "f_vector",
    "join",
    "nerve_complex",
    "complex_from_json",
    "complex_to_json",
    "poset_dot",
    "complex_dot",
]


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def face_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key: by size, then lexicographically on sorted vertices."""
    return popcount(mask), tuple(sorted(members(mask)))


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex given by its facets (an antichain of bit masks).

    Construct through :func:`build_complex` for validated input.  Direct
    construction is used internally for subcomplexes, which may leave some
    of the ``n_vertices`` ambient vertices unused.
    """

    n_vertices: int
    facet_masks: tuple[int, ...]

    @cached_property
    def face_table(self) -> bytes:
        return bytes(kernels.face_table(self.n_vertices, self.facet_masks))

    @cached_property
    def face_masks(self) -> tuple[int, ...]:
        table = self.face_table
        return tuple(sorted((m for m in range(len(table)) if table[m]), key=face_key))

    @property
    def facets(self) -> list[frozenset[int]]:
        return [members(f) for f in self.facet_masks]

    def faces(self) -> list[frozenset[int]]:
        return [members(m) for m in self.face_masks]

    @property
    def dim(self) -> int:
        return max(popcount(f) for f in self.facet_masks) - 1

    def has_mask(self, mask: int) -> bool:
        return mask < len(self.face_table) and bool(self.face_table[mask])

    def check_mask(self, face: Iterable[int]) -> int:
        """Bit mask of ``face`` after range validation."""
        m = 0
        for v in face:
            if not isinstance(v, int) or v < 0 or v >= self.n_vertices:
                raise BadIndex(f"vertex {v!r} outside [0, {self.n_vertices})")
            m |= 1 << v
        return m

    def face_mask(self, face: Iterable[int]) -> int:
        m = self.check_mask(face)
        if not self.face_table[m]:
            raise NotAFace(f"{sorted(members(m))} is not a face")
        return m

    def facets_containing(self, mask: int) -> int:
        """Bit mask over facet positions of the facets containing ``mask``."""
        out = 0
        for i, f in enumerate(self.facet_masks):
            if f & mask == mask:
                out |= 1 << i
        return out

    def __contains__(self, face: object) -> bool:
        if isinstance(face, int):
            return self.has_mask(face)
        return self.has_mask(mask_of(face))  # type: ignore[arg-type]

    def __repr__(self) -> str:
        fs = ", ".join("{" + ",".join(str(v) for v in sorted(members(f))) + "}" for f in self.facet_masks)
        return f"SimplicialComplex(n={self.n_vertices}, facets=[{fs}])"


def _minimize(masks: Iterable[int]) -> tuple[int, ...]:
    uniq = sorted(set(masks), key=lambda m: -popcount(m))
    kept: list[int] = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return tuple(sorted(kept, key=face_key))


def _raw(n: int, masks: Iterable[int]) -> SimplicialComplex:
    return SimplicialComplex(n, _minimize(masks))


def build_complex(n_vertices: int, facets: Sequence[Iterable[int]]) -> SimplicialComplex:
    """Validated complex on vertices ``0..n_vertices-1`` from a facet list.

    The facet list is reduced to its inclusion-maximal members.  Every
    vertex must lie in some facet.
    """
    if n_vertices < 0:
        raise BadIndex("negative vertex count")
    facets = list(facets)
    if not facets:
        raise EmptyComplex("a complex needs at least one facet (use [[]] for {∅})")
    masks = []
    for f in facets:
        m = 0
        for v in f:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n_vertices:
                raise BadIndex(f"vertex {v!r} outside [0, {n_vertices})")
            m |= 1 << v
        masks.append(m)
    K = _raw(n_vertices, masks)
    covered = 0
    for f in K.facet_masks:
        covered |= f
    missing = [v for v in range(n_vertices) if not covered >> v & 1]
    if missing:
        raise GhostVertex(f"vertices {missing} lie in no facet")
    return K


def simplex(n: int) -> SimplicialComplex:
    """The full simplex on ``n`` vertices (``n = 0`` gives ``{∅}``)."""
    return build_complex(n, [range(n)])


def is_face(K: SimplicialComplex, face: Iterable[int]) -> bool:
    return K.has_mask(K.check_mask(face))


def closed_star(K: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    """``st(σ) = {τ : τ ∪ σ ∈ K}``, whose facets are the facets of K containing σ."""
    s = K.face_mask(sigma)
    return SimplicialComplex(K.n_vertices, tuple(f for f in K.facet_masks if f & s == s))


def _open_complement_masks(K: SimplicialComplex, s: int) -> list[int]:
    table = K.face_table
    return [t for t in K.face_masks if not table[t | s]]


def open_complement(K: SimplicialComplex, sigma: Iterable[int]) -> set[frozenset[int]]:
    """All faces τ with τ ∪ σ not a face."""
    s = K.face_mask(sigma)
    return {members(t) for t in _open_complement_masks(K, s)}


def star_leq(K: SimplicialComplex, tau: Iterable[int], sigma: Iterable[int]) -> bool:
    """``st(τ) ⊆ st(σ)``, decided on the sets of facets containing each face."""
    t = K.face_mask(tau)
    s = K.face_mask(sigma)
    ft = K.facets_containing(t)
    return ft & K.facets_containing(s) == ft


def f_vector(K: SimplicialComplex) -> tuple[int, ...]:
    """``(f_{-1}, f_0, ..., f_{dim K})``."""
    counts = [0] * (K.dim + 2)
    for m in K.face_masks:
        counts[popcount(m)] += 1
    return tuple(counts)


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; the vertices of ``K2`` are shifted past those of ``K1``."""
    shift = K1.n_vertices
    return _raw(
        K1.n_vertices + K2.n_vertices,
        (f1 | (f2 << shift) for f1 in K1.facet_masks for f2 in K2.facet_masks),
    )


# -- star poset ------------------------------------------------------------


@dataclass(frozen=True)
class StarNode:
    index: int
    representative: frozenset[int]
    facet_set: int
    faces: tuple[frozenset[int], ...]
    star: SimplicialComplex

    @property
    def rep_mask(self) -> int:
        return mask_of(self.representative)


@dataclass(frozen=True)
class StarPoset:
    """Distinct closed stars of K ordered by containment.

    ``below[i]`` is the bit mask of nodes ``j`` with ``st_j ⊆ st_i``.  Node 0
    is always ``st(∅) = K``; further nodes follow the size/lex order of
    their smallest face.
    """

    complex: SimplicialComplex
    nodes: tuple[StarNode, ...]
    below: tuple[int, ...]
    node_by_face: Mapping[int, int] = field(compare=False, repr=False)

    @property
    def top(self) -> int:
        return 0

    @property
    def proper(self) -> list[int]:
        """Indices of nodes whose star is not all of K."""
        return [i for i in range(len(self.nodes)) if i != self.top]

    def node_of(self, face: Iterable[int]) -> int:
        return self.node_by_face[self.complex.face_mask(face)]

    def node_of_mask(self, mask: int) -> int:
        try:
            return self.node_by_face[mask]
        except KeyError:
            raise NotAFace(f"{sorted(members(mask))} is not a face") from None

    def leq(self, i: int, j: int) -> bool:
        return bool(self.below[j] >> i & 1)

    def covers(self, nodes: Iterable[int] | None = None) -> list[tuple[int, int]]:
        """Covering pairs ``(i, j)`` with ``i < j`` and nothing in between."""
        pool = list(range(len(self.nodes))) if nodes is None else sorted(nodes)
        out = []
        for j in pool:
            for i in pool:
                if i == j or not self.leq(i, j):
                    continue
                if not any(k not in (i, j) and self.leq(i, k) and self.leq(k, j) for k in pool):
                    out.append((i, j))
        return sorted(out)

    def label(self, i: int) -> str:
        rep = sorted(self.nodes[i].representative)
        return "st(" + ",".join(str(v + 1) for v in rep) + ")" if rep else "st()"


def star_poset(K: SimplicialComplex) -> StarPoset:
    groups: dict[int, list[int]] = {}
    for m in K.face_masks:
        groups.setdefault(K.facets_containing(m), []).append(m)
    # face_masks is already in size/lex order, so group[0] is the smallest face
    ordered = sorted(groups.items(), key=lambda kv: face_key(kv[1][0]))
    nodes = []
    node_by_face = {}
    for idx, (fset, faces) in enumerate(ordered):
        star = SimplicialComplex(
            K.n_vertices, tuple(f for i, f in enumerate(K.facet_masks) if fset >> i & 1)
        )
        nodes.append(StarNode(idx, members(faces[0]), fset, tuple(members(f) for f in faces), star))
        for f in faces:
            node_by_face[f] = idx
    below = []
    for nj in nodes:
        m = 0
        for ni in nodes:
            if ni.facet_set & nj.facet_set == ni.facet_set:
                m |= 1 << ni.index
        below.append(m)
    return StarPoset(K, tuple(nodes), tuple(below), node_by_face)


def _maximal_chains(poset: StarPoset, pool: list[int]) -> Iterator[tuple[int, ...]]:
    covers = poset.covers(pool)
    up: dict[int, list[int]] = {i: [] for i in pool}
    has_lower = set()
    for i, j in covers:
        up[i].append(j)
        has_lower.add(j)

    def extend(chain: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        nxt = up[chain[-1]]
        if not nxt:
            yield chain
        for j in nxt:
            yield from extend(chain + (j,))

    for i in pool:
        if i not in has_lower:
            yield from extend((i,))


def nerve_complex(K: SimplicialComplex) -> SimplicialComplex:
    """Order complex of the proper part of the star poset.

    Vertex ``i`` of the result is the node ``star_poset(K).proper[i]``.
    With no proper stars the result is ``{∅}`` on zero vertices.
    """
    P = star_poset(K)
    pool = P.proper
    if not pool:
        return SimplicialComplex(0, (0,))
    pos = {node: i for i, node in enumerate(pool)}
    facets = [mask_of(pos[i] for i in chain) for chain in _maximal_chains(P, pool)]
    return _raw(len(pool), facets)


# -- I/O -------------------------------------------------------------------


def complex_from_json(data: str | Mapping) -> SimplicialComplex:
    """Parse ``{"n_vertices": n, "facets": [[...], ...]}`` with 1-based vertices."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        n = int(data["n_vertices"])
        facets = [[int(v) - 1 for v in f] for f in data["facets"]]
    except (KeyError, TypeError) as exc:
        raise BadIndex(f"malformed complex JSON: {exc}") from None
    return build_complex(n, facets)


def complex_to_json(K: SimplicialComplex) -> dict:
    return {
        "n_vertices": K.n_vertices,
        "facets": [sorted(v + 1 for v in f) for f in K.facets],
    }


def poset_dot(P: StarPoset) -> str:
    lines = ["digraph stars {", "  rankdir=BT;"]
    for node in P.nodes:
        faces = ";".join("{" + ",".join(str(v + 1) for v in sorted(f)) + "}" for f in node.faces)
        lines.append(f'  n{node.index} [label="{P.label(node.index)}\\n{faces}"];')
    for i, j in P.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def complex_dot(K: SimplicialComplex, labels: Sequence[str] | None = None) -> str:
    """Undirected DOT graph of the 1-skeleton; facets listed as a comment."""
    labels = list(labels) if labels is not None else [str(v + 1) for v in range(K.n_vertices)]
    lines = ["graph complex {"]
    lines.append("  // facets: " + " ".join(
        "{" + ",".join(labels[v] for v in sorted(f)) + "}" for f in K.facets))
    for v in range(K.n_vertices):
        lines.append(f'  v{v} [label="{labels[v]}"];')
    for m in K.face_masks:
        if popcount(m) == 2:
            i, j = sorted(members(m))
            lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
