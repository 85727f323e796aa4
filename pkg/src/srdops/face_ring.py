"""Squarefree monomial ideals and the complex/ideal dictionary.

An ideal is stored as its minimal generating set, an antichain of bit
masks under inclusion (divisibility of squarefree monomials).  The zero
ideal has no generators; the unit ideal is generated by the empty mask.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .errors import AmbientMismatch, EmptyComplex, SRError
from .simplicial import (
    SimplicialComplex,
    _open_complement_masks,
    _raw,
    face_key,
    members,
    popcount,
)

__all__ = [
    "SquarefreeMonomialIdeal",
    "ideal",
    "face_ideal",
    "star_face_ideal",
    "minimal_primes",
    "combine",
    "monomial_in_ideal",
    "dual_complex",
    "restrict_to_faces",
]


def _antichain(masks: Iterable[int]) -> tuple[int, ...]:
    uniq = sorted(set(masks), key=popcount)
    kept: list[int] = []
    for m in uniq:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return tuple(sorted(kept, key=face_key))


@dataclass(frozen=True)
class SquarefreeMonomialIdeal:
    n: int
    generators: tuple[int, ...]

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "SquarefreeMonomialIdeal":
        return cls(n, _antichain(masks))

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return self.generators == (0,)

    def gens(self) -> list[frozenset[int]]:
        return [members(g) for g in self.generators]

    def contains_mask(self, mask: int) -> bool:
        return any(g & mask == g for g in self.generators)

    def exponent_vectors(self) -> list[list[int]]:
        return [[(g >> i) & 1 for i in range(self.n)] for g in self.generators]

    def vertex_lists(self) -> list[list[int]]:
        """Generators as sorted 1-based vertex lists."""
        return [sorted(v + 1 for v in members(g)) for g in self.generators]

    def __str__(self) -> str:
        if self.is_zero:
            return "<0>"
        parts = []
        for g in self.generators:
            vs = sorted(members(g))
            parts.append("*".join(f"x{v + 1}" for v in vs) if vs else "1")
        return "<" + ", ".join(parts) + ">"


def ideal(n: int, generators: Iterable[Iterable[int]]) -> SquarefreeMonomialIdeal:
    """Ideal generated by the squarefree monomials on the given vertex sets."""
    masks = []
    for g in generators:
        m = 0
        for v in g:
            if not 0 <= v < n:
                raise SRError(f"variable index {v} outside [0, {n})")
            m |= 1 << v
        masks.append(m)
    return SquarefreeMonomialIdeal.from_masks(n, masks)


def _minimal_nonfaces(K: SimplicialComplex) -> list[int]:
    table = K.face_table
    out = set()
    for f in K.face_masks:
        for v in range(K.n_vertices):
            bit = 1 << v
            if f & bit:
                continue
            m = f | bit
            if table[m]:
                continue
            sub = m
            ok = True
            while sub:
                low = sub & -sub
                if not table[m ^ low]:
                    ok = False
                    break
                sub ^= low
            if ok:
                out.add(m)
    return sorted(out, key=face_key)


def face_ideal(K: SimplicialComplex) -> SquarefreeMonomialIdeal:
    """``I_K``, generated by the minimal non-faces of K."""
    return SquarefreeMonomialIdeal.from_masks(K.n_vertices, _minimal_nonfaces(K))


def star_face_ideal(K: SimplicialComplex, sigma: Iterable[int]) -> SquarefreeMonomialIdeal:
    """``I_{st(σ)}`` as an ideal of R: generated by the faces outside the star."""
    s = K.face_mask(sigma)
    return SquarefreeMonomialIdeal.from_masks(K.n_vertices, _open_complement_masks(K, s))


def minimal_primes(K: SimplicialComplex) -> list[SquarefreeMonomialIdeal]:
    """One prime per facet, generated by the variables off that facet."""
    full = (1 << K.n_vertices) - 1
    out = []
    for f in K.facet_masks:
        off = full & ~f
        out.append(SquarefreeMonomialIdeal.from_masks(
            K.n_vertices, [1 << v for v in range(K.n_vertices) if off >> v & 1]))
    return out


def _check_same(I: SquarefreeMonomialIdeal, J: SquarefreeMonomialIdeal) -> None:
    if I.n != J.n:
        raise AmbientMismatch(f"ideals live in {I.n} and {J.n} variables")


def combine(
    I: SquarefreeMonomialIdeal, J: SquarefreeMonomialIdeal, mode: str = "sum"
) -> SquarefreeMonomialIdeal:
    """Sum (union of generators) or intersection (pairwise lcm) of two ideals."""
    _check_same(I, J)
    if mode == "sum":
        return SquarefreeMonomialIdeal.from_masks(I.n, I.generators + J.generators)
    if mode == "intersection":
        return SquarefreeMonomialIdeal.from_masks(
            I.n, [g | h for g in I.generators for h in J.generators])
    raise ValueError(f"unknown mode {mode!r}")


def intersect_all(ideals: Sequence[SquarefreeMonomialIdeal]) -> SquarefreeMonomialIdeal:
    return reduce(lambda x, y: combine(x, y, "intersection"), ideals)


def sum_all(ideals: Sequence[SquarefreeMonomialIdeal]) -> SquarefreeMonomialIdeal:
    return reduce(lambda x, y: combine(x, y, "sum"), ideals)


def monomial_in_ideal(m: Sequence[int], I: SquarefreeMonomialIdeal) -> bool:
    if len(m) != I.n:
        raise AmbientMismatch(f"monomial has {len(m)} exponents, ideal has {I.n} variables")
    support = 0
    for i, e in enumerate(m):
        if e < 0:
            raise SRError("negative exponent")
        if e:
            support |= 1 << i
    return I.contains_mask(support)


def dual_complex(I: SquarefreeMonomialIdeal) -> SimplicialComplex:
    """Complex of the vertex sets σ with ``x_σ`` outside ``I``.

    Vertices ``i`` with ``x_i ∈ I`` are kept in the ambient range but lie
    in no face.
    """
    if I.is_unit:
        raise EmptyComplex("the unit ideal has no dual complex")
    outside = [m for m in range(1 << I.n) if not I.contains_mask(m)]
    return _raw(I.n, outside)


def restrict_to_faces(I: SquarefreeMonomialIdeal, K: SimplicialComplex) -> SquarefreeMonomialIdeal:
    """Image of ``I`` in ``R_K``: keep the generators that are faces of K.

    Two ideals of the polynomial ring agree modulo ``I_K`` iff their images
    here coincide.
    """
    _check_same(I, SquarefreeMonomialIdeal(K.n_vertices, ()))
    return SquarefreeMonomialIdeal(I.n, tuple(g for g in I.generators if K.has_mask(g)))
