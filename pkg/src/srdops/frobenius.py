"""Characteristic-p structure of R_K over its subring of q-th powers.

``R`` is free over ``R^q`` on the face-supported monomials ``x^a`` with
every ``a_i < q``; grouping them by the star of their support gives the
Frobenius summands and their multiplicities.  An operator of order below
``q`` is ``R^q``-linear, so it is a matrix over those generators whose
entries are monomials with exponents divisible by ``q``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Mapping, Optional

from . import kernels
from .dideals import TwoSidedIdeal, _principal_mask, ideal_of_element, poset_of, zero_ideal
from .errors import (
    AmbientMismatch,
    BadQ,
    FieldMismatch,
    NotInDR,
    OracleDisagreement,
    QTooSmall,
    TooLarge,
)
from .simplicial import SimplicialComplex, f_vector, members, popcount
from .weyl import Coeff, Exps, FieldSpec, Poly, WeylElement, _support, apply, in_dR_traves

MAX_GENERATORS = 5000

__all__ = [
    "prime_power",
    "FrobeniusDecomposition",
    "HKPolynomial",
    "BlockMatrix",
    "multiplicities",
    "hk_polynomial",
    "hk_bruteforce",
    "block_support",
    "j_ideal",
    "frobenius_generators",
    "operator_matrix",
    "reblock",
    "entry_supports",
]


def prime_power(q: int) -> Optional[tuple[int, int]]:
    """``(p, r)`` with ``q = p**r`` and ``r >= 1``, or ``None``."""
    if not isinstance(q, int) or q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    r = 0
    while q % p == 0:
        q //= p
        r += 1
    return (p, r) if q == 1 else None


def _require_prime_power(q: int) -> tuple[int, int]:
    pr = prime_power(q)
    if pr is None:
        raise BadQ(f"q = {q!r} is not a prime power >= 2")
    return pr


@dataclass(frozen=True)
class FrobeniusDecomposition:
    q: int
    complex: SimplicialComplex
    entries: Mapping[int, int]

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def to_json(self) -> dict:
        P = poset_of(self.complex)
        from .face_ring import star_face_ideal

        rows = []
        for node, m in sorted(self.entries.items()):
            rep = P.nodes[node].representative
            rows.append({
                "star_face": sorted(v + 1 for v in rep),
                "star_facets": [sorted(v + 1 for v in f) for f in P.nodes[node].star.facets],
                "star_generators": star_face_ideal(self.complex, rep).vertex_lists(),
                "m": m,
            })
        return {"q": self.q, "multiplicities": rows, "hk": self.total}


def multiplicities(K: SimplicialComplex, q: int) -> FrobeniusDecomposition:
    """``m_st(q)``: sum of ``(q-1)^(dim α + 1)`` over faces ``α`` sharing that star."""
    _require_prime_power(q)
    P = poset_of(K)
    entries = {i: 0 for i in range(len(P.nodes))}
    for m in K.face_masks:
        entries[P.node_by_face[m]] += (q - 1) ** popcount(m)
    return FrobeniusDecomposition(q, K, entries)


@dataclass(frozen=True)
class HKPolynomial:
    """``HK(q) = sum_i f_i (q-1)^(i+1)`` from the f-vector ``(f_-1, ..., f_dimK)``."""

    f: tuple[int, ...]

    @property
    def dim(self) -> int:
        """Krull dimension of R, one more than dim K."""
        return len(self.f) - 1

    @property
    def e_hk(self) -> int:
        return self.f[-1]

    def evaluate(self, q: int) -> int:
        return sum(fi * (q - 1) ** i for i, fi in enumerate(self.f))

    def coefficients(self) -> list[int]:
        """Coefficients of HK as a polynomial in ``q``, constant term first."""
        from math import comb

        out = [0] * len(self.f)
        for i, fi in enumerate(self.f):
            for k in range(i + 1):
                out[k] += fi * comb(i, k) * (-1) ** (i - k)
        return out

    def __str__(self) -> str:
        return " + ".join(f"{fi}(q-1)^{i}" for i, fi in enumerate(self.f))


def hk_polynomial(K: SimplicialComplex) -> HKPolynomial:
    return HKPolynomial(f_vector(K))


def hk_bruteforce(K: SimplicialComplex, q: int) -> int:
    """Count monomials with all exponents below ``q`` and face support."""
    if not isinstance(q, int) or q < 2:
        raise BadQ(f"q must be an integer >= 2, got {q!r}")
    return kernels.count_face_box(K.face_table, K.n_vertices, q)


def block_support(K: SimplicialComplex, sigma: Iterable[int], tau: Iterable[int]) -> Optional[int]:
    """Star-poset node of ``st(σ ∪ τ)``, or ``None`` when ``σ ∪ τ`` is not a face."""
    s = K.face_mask(sigma)
    t = K.face_mask(tau)
    if not K.has_mask(s | t):
        return None
    return poset_of(K).node_by_face[s | t]


def j_ideal(K: SimplicialComplex, sigma: Iterable[int], tau: Iterable[int]) -> TwoSidedIdeal:
    """``J(st σ, st τ)``: ``<x_{σ∪τ}>`` when ``σ ∪ τ`` is a face, else zero."""
    s = K.face_mask(sigma)
    t = K.face_mask(tau)
    if not K.has_mask(s | t):
        return zero_ideal(K)
    return _principal_mask(poset_of(K), s | t)


# -- endomorphism matrices ---------------------------------------------------


def _gen_key(a: Exps) -> tuple:
    return (sum(a), tuple(-x for x in a))


def frobenius_generators(K: SimplicialComplex, q: int) -> list[Exps]:
    """Free ``R^q``-basis of R: face-supported ``x^a`` with every ``a_i < q``."""
    n = K.n_vertices
    gens = [a for a in product(range(q), repeat=n) if K.has_mask(_support(a))]
    return sorted(gens, key=_gen_key)


def _split(m: Exps, q: int) -> tuple[Exps, Exps]:
    """``m = q*e + r`` with ``0 <= r_i < q``; returns ``(q*e, r)``."""
    return tuple(x - x % q for x in m), tuple(x % q for x in m)


def _add(u: Exps, v: Exps) -> Exps:
    return tuple(x + y for x, y in zip(u, v))


@dataclass(frozen=True)
class BlockMatrix:
    """An ``R^q``-linear endomorphism of R on the Frobenius generators.

    ``blocks[(row, col)]`` is the entry polynomial ``E`` (exponents
    divisible by ``q``) such that generator ``x^row`` contributes
    ``E * x^col`` to its image.
    """

    complex: SimplicialComplex
    field: FieldSpec
    q: int
    generators: tuple[Exps, ...]
    blocks: Mapping[tuple[Exps, Exps], Poly] = field(repr=False)

    @property
    def p(self) -> int:
        return self.field.characteristic

    @cached_property
    def _rows(self) -> dict[Exps, list[tuple[Exps, Poly]]]:
        rows: dict[Exps, list[tuple[Exps, Poly]]] = {}
        for (r, col), entry in self.blocks.items():
            rows.setdefault(r, []).append((col, entry))
        return rows

    def image(self, row: Exps) -> Poly:
        out: dict[Exps, Coeff] = {}
        for col, entry in self._rows.get(row, ()):
            for e, c in entry.items():
                m = _add(e, col)
                out[m] = out.get(m, 0) + c
        return {m: c for m, c in out.items() if c}

    def act(self, monomial: Exps) -> Poly:
        """Image of ``x^monomial`` using ``R^q``-linearity, reduced mod ``I_K``."""
        K = self.complex
        if not K.has_mask(_support(monomial)):
            return {}
        shift, row = _split(tuple(monomial), self.q)
        F = self.field
        out: dict[Exps, Coeff] = {}
        for m, c in self.image(row).items():
            t = _add(m, shift)
            if K.has_mask(_support(t)):
                out[t] = F(out.get(t, 0) + c)
        return {m: c for m, c in out.items() if c}

    def dense(self) -> list[list[Poly]]:
        index = {g: i for i, g in enumerate(self.generators)}
        rows: list[list[Poly]] = [[{} for _ in self.generators] for _ in self.generators]
        for (r, col), entry in self.blocks.items():
            rows[index[r]][index[col]] = dict(entry)
        return rows

    def is_identity(self) -> bool:
        zero = (0,) * self.complex.n_vertices
        return set(self.blocks) == {(g, g) for g in self.generators} and all(
            self.blocks[(g, g)] == {zero: 1} for g in self.generators)

    def to_json(self) -> dict:
        blocks = []
        for (r, col), entry in sorted(self.blocks.items(), key=lambda kv: (_gen_key(kv[0][0]), _gen_key(kv[0][1]))):
            blocks.append({
                "row": list(r),
                "col": list(col),
                "entry": [{"exp": list(e), "coeff": int(c)} for e, c in sorted(entry.items())],
            })
        return {
            "q": self.q,
            "p": self.p,
            "generators": [list(g) for g in self.generators],
            "blocks": blocks,
        }


def _collect(K: SimplicialComplex, F: FieldSpec, q: int, gens: list[Exps],
             image_of) -> dict[tuple[Exps, Exps], Poly]:
    blocks: dict[tuple[Exps, Exps], dict[Exps, Coeff]] = {}
    for g in gens:
        for m, c in image_of(g).items():
            e, col = _split(m, q)
            entry = blocks.setdefault((g, col), {})
            entry[e] = F(entry.get(e, 0) + c)
    clean = {}
    for key, entry in blocks.items():
        entry = {e: c for e, c in entry.items() if c}
        if entry:
            clean[key] = entry
    return clean


def _check_level(K: SimplicialComplex, q: int) -> None:
    size = hk_bruteforce(K, q)
    if size > MAX_GENERATORS:
        raise TooLarge(f"HK({q}) = {size} generators exceed {MAX_GENERATORS}")


def operator_matrix(K: SimplicialComplex, elt: WeylElement, q: int, check: bool = True) -> BlockMatrix:
    """Matrix of ``elt`` as an ``R^q``-linear map on the Frobenius generators.

    With ``check`` the matrix is compared against direct application on
    every ``x^(a + q c)`` with ``c`` in ``{0, 1}^n``.
    """
    p, _ = _require_prime_power(q)
    F = elt.field
    if F.characteristic != p:
        raise FieldMismatch(f"q = {q} needs characteristic {p}, operator is over {F}")
    if elt.n != K.n_vertices:
        raise AmbientMismatch(f"operator has {elt.n} variables, complex has {K.n_vertices}")
    if elt.order >= q:
        raise QTooSmall(f"order {elt.order} is not below q = {q}")
    for a, b, _ in elt.terms():
        if not in_dR_traves(K, a, b, F):
            raise NotInDR(f"term x^{a} d^({b}) is not in D(R)")
    _check_level(K, q)
    gens = frobenius_generators(K, q)
    blocks = _collect(K, F, q, gens, lambda g: apply(elt, {g: 1}, K))
    M = BlockMatrix(K, F, q, tuple(gens), blocks)
    if check:
        for g in gens:
            for c in product((0, 1), repeat=K.n_vertices):
                m = tuple(g[i] + q * c[i] for i in range(K.n_vertices))
                if M.act(m) != apply(elt, {m: 1}, K):
                    raise OracleDisagreement(f"matrix and operator disagree on x^{m}")
    return M


def reblock(M: BlockMatrix, p: Optional[int] = None) -> BlockMatrix:
    """The same endomorphism written over ``R^(pq)``."""
    p = M.p if p is None else p
    if p != M.p:
        raise FieldMismatch(f"refinement factor {p} differs from characteristic {M.p}")
    K = M.complex
    q2 = M.q * p
    _check_level(K, q2)
    gens = frobenius_generators(K, q2)
    blocks = _collect(K, M.field, q2, gens, M.act)
    return BlockMatrix(K, M.field, q2, tuple(gens), blocks)


def entry_supports(M: BlockMatrix) -> Iterator[tuple[Exps, Exps, Exps]]:
    """``(row, col, entry exponent)`` for every nonzero monomial entry."""
    for (r, col), entry in M.blocks.items():
        for e in entry:
            yield r, col, e
