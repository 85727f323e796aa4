"""Two-sided ideals of D(R_K) as down-sets of the proper star poset.

Every proper two-sided ideal is a sum of principal ideals ``<x_σ>``, and
``<x_τ> ⊆ <x_σ>`` exactly when ``st(τ) ⊆ st(σ)``.  An ideal is therefore
stored as the down-closed set of proper stars whose face monomials it
contains.  The unit ideal is a separate flag since ``st(σ) = K`` never
enters a down-set.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

from . import kernels
from .errors import AmbientMismatch, NotInDR, OracleDisagreement, TooLarge, ZeroElement
from .face_ring import (
    SquarefreeMonomialIdeal,
    combine as ring_combine,
    minimal_primes,
    restrict_to_faces,
    star_face_ideal,
)
from .simplicial import (
    SimplicialComplex,
    StarPoset,
    _open_complement_masks,
    mask_of,
    members,
    poset_dot,
    star_poset,
)
from .weyl import WeylElement, _support, in_dR_traves

DEFAULT_CAP = 20

__all__ = [
    "TwoSidedIdeal",
    "poset_of",
    "zero_ideal",
    "unit_ideal",
    "principal_ideal",
    "ideal_of_element",
    "contains",
    "combine",
    "localization_kernel",
    "enumerate_ideals",
    "d_stable_ideals",
    "contract",
    "hasse_dot",
    "audit_distinctness",
]


@lru_cache(maxsize=512)
def poset_of(K: SimplicialComplex) -> StarPoset:
    return star_poset(K)


@dataclass(frozen=True)
class TwoSidedIdeal:
    poset: StarPoset
    down: int
    unit: bool = False

    @property
    def complex(self) -> SimplicialComplex:
        return self.poset.complex

    @property
    def is_zero(self) -> bool:
        return not self.unit and self.down == 0

    def nodes(self) -> list[int]:
        return [i for i in range(len(self.poset.nodes)) if self.down >> i & 1]

    def maximal_nodes(self) -> list[int]:
        """Canonical generators: the maximal stars of the down-set."""
        ns = self.nodes()
        return [j for j in ns if not any(i != j and self.poset.leq(j, i) for i in ns)]

    def generator_faces(self) -> list[frozenset[int]]:
        if self.unit:
            return [frozenset()]
        return [self.poset.nodes[i].representative for i in self.maximal_nodes()]

    def to_json(self) -> dict:
        gens = [] if self.unit else sorted(sorted(v + 1 for v in f) for f in self.generator_faces())
        return {"unit": self.unit, "generators": gens}

    def label(self) -> str:
        if self.unit:
            return "<1>"
        if self.is_zero:
            return "<0>"
        gens = sorted(sorted(v + 1 for v in f) for f in self.generator_faces())
        return "<" + ", ".join("x" + "x".join(str(v) for v in g) for g in gens) + ">"

    def __le__(self, other: "TwoSidedIdeal") -> bool:
        return contains(self, other)


def zero_ideal(K: SimplicialComplex) -> TwoSidedIdeal:
    return TwoSidedIdeal(poset_of(K), 0)


def unit_ideal(K: SimplicialComplex) -> TwoSidedIdeal:
    return TwoSidedIdeal(poset_of(K), 0, unit=True)


def _principal_mask(P: StarPoset, face_mask: int) -> TwoSidedIdeal:
    node = P.node_of_mask(face_mask)
    if node == P.top:
        return TwoSidedIdeal(P, 0, unit=True)
    return TwoSidedIdeal(P, P.below[node])


def principal_ideal(K: SimplicialComplex, sigma: Iterable[int]) -> TwoSidedIdeal:
    """``<x_σ>``: all stars contained in ``st(σ)``, or the unit ideal if ``st(σ) = K``."""
    P = poset_of(K)
    return _principal_mask(P, K.face_mask(sigma))


def ideal_of_element(K: SimplicialComplex, elt: WeylElement) -> TwoSidedIdeal:
    """Two-sided ideal generated by an operator: the sum of ``<x_supp(a)>``
    over its terms ``c x^a d^(b)`` that survive modulo ``I_K``."""
    if elt.n != K.n_vertices:
        raise AmbientMismatch(f"operator has {elt.n} variables, complex has {K.n_vertices}")
    P = poset_of(K)
    result = zero_ideal(K)
    alive = False
    for a, b, _ in elt.terms():
        if not in_dR_traves(K, a, b, elt.field):
            raise NotInDR(f"term x^{a} d^({b}) is not in D(R)")
        A = _support(a)
        if not K.has_mask(A):
            continue
        alive = True
        result = combine(result, _principal_mask(P, A), "sum")
    if not alive:
        raise ZeroElement("operator is zero in D(R)")
    return result


def _same(I: TwoSidedIdeal, J: TwoSidedIdeal) -> None:
    if I.poset.complex != J.poset.complex:
        raise AmbientMismatch("ideals of different rings")


def contains(I: TwoSidedIdeal, J: TwoSidedIdeal) -> bool:
    """True when ``I ⊆ J``."""
    _same(I, J)
    if J.unit:
        return True
    if I.unit:
        return False
    return I.down & J.down == I.down


def combine(I: TwoSidedIdeal, J: TwoSidedIdeal, mode: str = "sum") -> TwoSidedIdeal:
    _same(I, J)
    if mode == "sum":
        if I.unit or J.unit:
            return TwoSidedIdeal(I.poset, 0, unit=True)
        return TwoSidedIdeal(I.poset, I.down | J.down)
    if mode == "intersection":
        if I.unit:
            return J
        if J.unit:
            return I
        return TwoSidedIdeal(I.poset, I.down & J.down)
    raise ValueError(f"unknown mode {mode!r}")


def localization_kernel(K: SimplicialComplex, sigma: Iterable[int]) -> TwoSidedIdeal:
    """Kernel of ``D(R) -> D(R)[1/x_σ]``: the extension of ``I_{st(σ)}``."""
    P = poset_of(K)
    s = K.face_mask(sigma)
    result = zero_ideal(K)
    for t in _open_complement_masks(K, s):
        result = combine(result, _principal_mask(P, t), "sum")
    return result


def _check_cap(P: StarPoset, cap: int) -> None:
    if len(P.proper) > cap:
        raise TooLarge(f"{len(P.proper)} proper stars exceed the cap of {cap}")


def enumerate_ideals(K: SimplicialComplex, cap: int = DEFAULT_CAP) -> list[TwoSidedIdeal]:
    """All proper two-sided ideals, zero first, in increasing down-set mask order."""
    P = poset_of(K)
    _check_cap(P, cap)
    pool = P.proper
    # relabel proper nodes 0..m-1 for the kernel, then map back
    below = []
    for j in pool:
        below.append(mask_of(k for k, i in enumerate(pool) if P.leq(i, j)))
    out = []
    for local in kernels.downsets(below):
        out.append(TwoSidedIdeal(P, mask_of(pool[k] for k in members(local))))
    out.sort(key=lambda I: (bin(I.down).count("1"), I.down))
    return out


def contract(I: TwoSidedIdeal) -> SquarefreeMonomialIdeal:
    """``I ∩ R`` as an ideal of R, generated by the ``x_σ`` with ``st(σ)`` in the down-set."""
    K = I.complex
    if I.unit:
        return SquarefreeMonomialIdeal(K.n_vertices, (0,))
    faces = [m for m in K.face_masks if I.down >> I.poset.node_by_face[m] & 1]
    return SquarefreeMonomialIdeal.from_masks(K.n_vertices, faces)


def _ring_closure(K: SimplicialComplex, seed: Iterable[SquarefreeMonomialIdeal],
                  modes: Sequence[str]) -> set[SquarefreeMonomialIdeal]:
    found = set(seed)
    frontier = list(found)
    while frontier:
        fresh = []
        for I in frontier:
            for J in list(found):
                for mode in modes:
                    H = restrict_to_faces(ring_combine(I, J, mode), K)
                    if H not in found:
                        found.add(H)
                        fresh.append(H)
        frontier = fresh
    return found


def prime_sum_intersections(K: SimplicialComplex) -> set[SquarefreeMonomialIdeal]:
    """Intersections of sums of minimal primes, as ideals of R (unit excluded)."""
    primes = [restrict_to_faces(P, K) for P in minimal_primes(K)]
    sums = set()
    for mask in range(1, 1 << len(primes)):
        acc = SquarefreeMonomialIdeal(K.n_vertices, ())
        for i, P in enumerate(primes):
            if mask >> i & 1:
                acc = ring_combine(acc, P, "sum")
        sums.add(restrict_to_faces(acc, K))
    closed = _ring_closure(K, sums, ("intersection",))
    return {I for I in closed if not I.is_unit}


def d_stable_ideals(K: SimplicialComplex, cap: int = DEFAULT_CAP) -> list[SquarefreeMonomialIdeal]:
    """Proper D(R)-stable ideals of R: the sum/intersection closure of the ``I_{st(σ)}``.

    Each result is also checked to be an intersection of sums of minimal primes.
    """
    P = poset_of(K)
    _check_cap(P, cap)
    seed = {star_face_ideal(K, members(m)) for m in K.face_masks}
    closed = _ring_closure(K, seed, ("sum", "intersection"))
    witnesses = prime_sum_intersections(K)
    for I in closed:
        if I not in witnesses:
            raise OracleDisagreement(f"{I} is not an intersection of sums of minimal primes")
    return sorted(closed, key=lambda I: (len(I.generators), I.generators))


def _cover_pairs(ideals: Sequence[TwoSidedIdeal]) -> list[tuple[int, int]]:
    out = []
    for j, J in enumerate(ideals):
        below = [i for i, I in enumerate(ideals) if i != j and I != J and contains(I, J)]
        for i in below:
            I = ideals[i]
            if not any(k != i and ideals[k] != I and contains(I, ideals[k]) for k in below):
                out.append((i, j))
    return sorted(out)


def hasse_dot(obj: Union[Sequence[TwoSidedIdeal], StarPoset]) -> str:
    """DOT digraph of covering relations, edges pointing upward."""
    if isinstance(obj, StarPoset):
        return poset_dot(obj)
    ideals = list(obj)
    lines = ["digraph ideals {", "  rankdir=BT;"]
    for i, I in enumerate(ideals):
        lines.append(f'  i{i} [label="{I.label()}"];')
    for i, j in _cover_pairs(ideals):
        lines.append(f"  i{i} -> i{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def audit_distinctness(K: SimplicialComplex, cap: int = DEFAULT_CAP) -> int:
    """Check that distinct antichains of proper stars generate distinct ideals.

    For every ordered pair of distinct down-sets, some canonical generator
    ``x_τ`` of one is absent from the other.  Absence is decided twice:
    by ``contains`` on principal ideals, and by monomial membership in the
    contraction to R.  Returns the number of pairs examined.
    """
    ideals = enumerate_ideals(K, cap)
    P = poset_of(K)
    contracted = [contract(I) for I in ideals]
    pairs = 0
    for i, I in enumerate(ideals):
        for j, J in enumerate(ideals):
            if i == j:
                continue
            pairs += 1
            separated = False
            for src, dst, dst_ring in ((I, J, contracted[j]), (J, I, contracted[i])):
                for node in src.maximal_nodes():
                    rep = P.nodes[node].rep_mask
                    by_lattice = not contains(_principal_mask(P, rep), dst)
                    by_ring = not dst_ring.contains_mask(rep)
                    if by_lattice != by_ring:
                        raise OracleDisagreement(
                            f"membership of x_{sorted(members(rep))} disagrees")
                    separated = separated or by_lattice
            if not separated:
                raise OracleDisagreement(f"down-sets {I.down:#x} and {J.down:#x} not separated")
    return pairs
