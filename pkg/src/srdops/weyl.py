"""Divided-power Weyl algebra over Q or F_p, and membership in D(R_K).

An element is a finite sum of terms ``c x^a d^(b)`` with all ``x`` to the
left of all divided powers ``d^(b) = d^b / b!``.  Binomial coefficients are
computed in the integers and only then mapped into the field, so the same
code serves every characteristic.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from . import kernels
from .errors import (
    AmbientMismatch,
    FieldMismatch,
    ParseError,
    SRError,
    SupportNotAFace,
)
from .face_ring import minimal_primes
from .simplicial import SimplicialComplex, star_leq

Exps = tuple[int, ...]
Coeff = Union[int, Fraction]
Poly = dict[Exps, Coeff]

__all__ = [
    "FieldSpec",
    "QQ",
    "GF",
    "WeylElement",
    "binomial",
    "lucas_binomial",
    "multiply",
    "commutator",
    "apply",
    "reduce_mod",
    "parse",
    "in_dR_traves",
    "in_dR_star",
    "dR_basis_up_to",
    "preserves_face_ideal_oracle",
    "face_ideal_witness",
    "oracle_bound",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class FieldSpec:
    """``characteristic == 0`` is Q (exact fractions), otherwise F_p."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise SRError(f"characteristic must be 0 or a prime, got {self.characteristic}")

    def __call__(self, x: Coeff) -> Coeff:
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def inverse(self, x: Coeff) -> Coeff:
        x = self(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / x
        return pow(int(x), -1, self.characteristic)

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


def lucas_binomial(n: int, k: int, p: int) -> int:
    """``C(n, k) mod p`` digit by digit in base ``p``."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        out = out * math.comb(ni, ki) % p
        n //= p
        k //= p
    return out


def binomial(n: int, k: int, field: FieldSpec = QQ, lucas: bool = False) -> Coeff:
    """``C(n, k)`` as a field element; exact integer route unless ``lucas``."""
    p = field.characteristic
    if lucas and p:
        return lucas_binomial(n, k, p)
    return field(math.comb(n, k) if 0 <= k <= n else 0)


# -- elements --------------------------------------------------------------


def _fmt_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)


class WeylElement:
    """Immutable normal-form element of the divided-power Weyl algebra."""

    __slots__ = ("n", "field", "_terms")

    def __init__(self, n: int, field: FieldSpec, terms: Mapping[tuple[Exps, Exps], Coeff] = ()):
        clean: dict[tuple[Exps, Exps], Coeff] = {}
        for (a, b), c in dict(terms).items():
            a, b = tuple(a), tuple(b)
            if len(a) != n or len(b) != n:
                raise AmbientMismatch(f"exponent vectors must have length {n}")
            if min(a + b, default=0) < 0:
                raise SRError("negative exponent")
            c = field(c)
            if c:
                clean[(a, b)] = c
        self.n = n
        self.field = field
        self._terms = clean

    # constructors
    @classmethod
    def zero(cls, n: int, field: FieldSpec = QQ) -> "WeylElement":
        return cls(n, field)

    @classmethod
    def one(cls, n: int, field: FieldSpec = QQ) -> "WeylElement":
        return cls.monomial(n, (0,) * n, (0,) * n, 1, field)

    @classmethod
    def monomial(cls, n: int, a: Sequence[int], b: Sequence[int], c: Coeff = 1,
                 field: FieldSpec = QQ) -> "WeylElement":
        return cls(n, field, {(tuple(a), tuple(b)): c})

    @classmethod
    def x(cls, n: int, i: int, k: int = 1, field: FieldSpec = QQ) -> "WeylElement":
        """``x_i^k`` with 0-based ``i``."""
        a = [0] * n
        a[i] = k
        return cls.monomial(n, a, (0,) * n, 1, field)

    @classmethod
    def d(cls, n: int, i: int, k: int = 1, field: FieldSpec = QQ) -> "WeylElement":
        """Divided power ``d_i^(k)`` with 0-based ``i``."""
        b = [0] * n
        b[i] = k
        return cls.monomial(n, (0,) * n, b, 1, field)

    # inspection
    def terms(self) -> list[tuple[Exps, Exps, Coeff]]:
        """Terms sorted by ``(b, a)``."""
        return [(a, b, c) for (a, b), c in sorted(self._terms.items(), key=lambda t: (t[0][1], t[0][0]))]

    def coefficient(self, a: Sequence[int], b: Sequence[int]) -> Coeff:
        return self._terms.get((tuple(a), tuple(b)), self.field(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def order(self) -> int:
        """Largest ``|b|`` over the terms; ``-1`` for zero."""
        return max((sum(b) for _, b in self._terms), default=-1)

    # arithmetic
    def _check(self, other: "WeylElement") -> None:
        if not isinstance(other, WeylElement):
            raise TypeError(f"expected WeylElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if other.n != self.n:
            raise AmbientMismatch(f"{self.n} vs {other.n} variables")

    def __add__(self, other: "WeylElement") -> "WeylElement":
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return WeylElement(self.n, self.field, out)

    def __neg__(self) -> "WeylElement":
        return WeylElement(self.n, self.field, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + (-other)

    def scale(self, c: Coeff) -> "WeylElement":
        c = self.field(c)
        return WeylElement(self.n, self.field, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, self.field, frozenset(self._terms.items())))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for a, b, c in self.terms():
            toks = [_fmt_coeff(c)]
            for i, e in enumerate(a):
                if e == 1:
                    toks.append(f"x[{i + 1}]")
                elif e:
                    toks.append(f"x[{i + 1}]^{e}")
            for i, e in enumerate(b):
                if e:
                    toks.append(f"d[{i + 1}]^({e})")
            parts.append(" ".join(toks))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"WeylElement(n={self.n}, field={self.field}, '{self}')"


@lru_cache(maxsize=65536)
def _one_var(a1: int, b1: int, a2: int, b2: int) -> tuple[tuple[int, int, int], ...]:
    """``x^a1 d^(b1) * x^a2 d^(b2)`` in one variable, integer coefficients.

    Uses ``d^(b) x^a = sum_j C(a, j) x^(a-j) d^(b-j)`` and
    ``d^(s) d^(t) = C(s+t, s) d^(s+t)``.
    """
    out = []
    for j in range(min(b1, a2) + 1):
        c = math.comb(a2, j) * math.comb(b1 - j + b2, b2)
        if c:
            out.append((a1 + a2 - j, b1 - j + b2, c))
    return tuple(out)


def _mul_terms(a1: Exps, b1: Exps, a2: Exps, b2: Exps) -> Iterator[tuple[Exps, Exps, int]]:
    factors = [_one_var(a1[i], b1[i], a2[i], b2[i]) for i in range(len(a1))]
    for combo in product(*factors):
        c = 1
        for _, _, ci in combo:
            c *= ci
        yield tuple(t[0] for t in combo), tuple(t[1] for t in combo), c


def multiply(u: WeylElement, v: WeylElement) -> WeylElement:
    u._check(v)
    F = u.field
    out: dict[tuple[Exps, Exps], Coeff] = {}
    for (a1, b1), c1 in u._terms.items():
        for (a2, b2), c2 in v._terms.items():
            c12 = c1 * c2
            for a, b, c in _mul_terms(a1, b1, a2, b2):
                key = (a, b)
                out[key] = out.get(key, 0) + F(c12 * c)
    return WeylElement(u.n, F, out)


def commutator(u: WeylElement, v: WeylElement) -> WeylElement:
    return multiply(u, v) - multiply(v, u)


# -- action on polynomials -------------------------------------------------


def _support(e: Sequence[int]) -> int:
    m = 0
    for i, v in enumerate(e):
        if v:
            m |= 1 << i
    return m


def reduce_mod(poly: Mapping[Exps, Coeff], K: SimplicialComplex) -> Poly:
    """Drop the monomials of ``poly`` lying in ``I_K``."""
    return {e: c for e, c in poly.items() if c and K.has_mask(_support(e))}


def apply(op: WeylElement, poly: Mapping[Exps, Coeff], K: Optional[SimplicialComplex] = None) -> Poly:
    """Act with ``op`` on a polynomial ``{exponents: coefficient}``.

    ``d^(b)`` sends ``x^e`` to ``C(e, b) x^(e-b)`` coordinatewise.  With
    ``K`` given, the result is reduced modulo ``I_K``.
    """
    F = op.field
    n = op.n
    if K is not None and K.n_vertices != n:
        raise AmbientMismatch(f"operator has {n} variables, complex has {K.n_vertices}")
    out: dict[Exps, Coeff] = {}
    for e, pc in poly.items():
        if len(e) != n:
            raise AmbientMismatch(f"monomial {e} has wrong length")
        pc = F(pc)
        if not pc:
            continue
        for (a, b), c in op._terms.items():
            k = 1
            for i in range(n):
                if e[i] < b[i]:
                    k = 0
                    break
                k *= math.comb(e[i], b[i])
            if not k:
                continue
            r = tuple(a[i] + e[i] - b[i] for i in range(n))
            out[r] = out.get(r, 0) + F(c * pc * k)
    out = {e: F(c) for e, c in out.items() if F(c)}
    if K is not None:
        out = reduce_mod(out, K)
    return out


# -- text form -------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<x>x\[(?P<xi>\d+)\](?:\^(?P<xe>\d+))?)"
    r"|(?P<d>d\[(?P<di>\d+)\](?:\^\((?P<de>\d+)\))?)"
    r"|(?P<c>[+-]?\d+(?:/\d+)?))"
)


def _parse_term(text: str, n: int, field: FieldSpec) -> WeylElement:
    pos = 0
    text = text.strip()
    result = WeylElement.one(n, field)
    coeff: Coeff = 1
    seen_factor = False
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        if m.group("c") is not None:
            if seen_factor:
                raise ParseError("coefficient must come first in a term")
            coeff = coeff * Fraction(m.group("c"))
            continue
        seen_factor = True
        if m.group("x") is not None:
            i, k = int(m.group("xi")), int(m.group("xe") or 1)
            factory = WeylElement.x
        else:
            i, k = int(m.group("di")), int(m.group("de") or 1)
            factory = WeylElement.d
        if not 1 <= i <= n:
            raise ParseError(f"variable index {i} outside 1..{n}")
        result = result * factory(n, i - 1, k, field)
    try:
        return result.scale(coeff)
    except ZeroDivisionError:
        raise ParseError(f"coefficient {coeff} is not defined in {field}") from None


def parse(text: str, n: int, field: FieldSpec = QQ) -> WeylElement:
    """Read ``c x[i]^k ... d[j]^(m) ... + ...`` (1-based indices).

    Factors within a term are multiplied in the order written, so
    ``d[1] x[1]`` means ``x[1] d[1]^(1) + 1``.
    """
    text = text.strip()
    if not text:
        raise ParseError("empty operator text")
    total = WeylElement.zero(n, field)
    for chunk in text.split("+"):
        if not chunk.strip():
            raise ParseError(f"empty term in {text!r}")
        total = total + _parse_term(chunk, n, field)
    return total


# -- membership in D(R_K) --------------------------------------------------


def in_dR_traves(K: SimplicialComplex, a: Sequence[int], b: Sequence[int],
                 field: FieldSpec = QQ) -> bool:
    """``x^a d^(b)`` lies in D(R_K) iff every minimal prime contains ``x^a``
    or misses ``x^b``.  The answer does not depend on the field."""
    A, B = _support(a), _support(b)
    return all(P.contains_mask(A) or not P.contains_mask(B) for P in _primes(K))


@lru_cache(maxsize=256)
def _primes(K: SimplicialComplex):
    return tuple(minimal_primes(K))


def in_dR_star(K: SimplicialComplex, a: Sequence[int], b: Sequence[int]) -> bool:
    """``st(supp a) ⊆ st(supp b)``; both supports must be faces."""
    A, B = _support(a), _support(b)
    if not (K.has_mask(A) and K.has_mask(B)):
        raise SupportNotAFace("star criterion needs both supports to be faces")
    return star_leq(K, _vertices(A), _vertices(B))


def _vertices(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def dR_basis_up_to(K: SimplicialComplex, field: FieldSpec = QQ,
                   max_exp: int = 1) -> list[tuple[Exps, Exps]]:
    """Pairs ``(a, b)`` with entries ``<= max_exp``, face support of ``a``,
    and ``x^a d^(b)`` in D(R_K); lexicographic order."""
    if max_exp < 0:
        raise SRError("max_exp must be nonnegative")
    n = K.n_vertices
    box = list(product(range(max_exp + 1), repeat=n))
    out = []
    for a in box:
        if not K.has_mask(_support(a)):
            continue
        for b in box:
            if in_dR_traves(K, a, b, field):
                out.append((a, b))
    return out


def oracle_bound(b: Sequence[int]) -> int:
    return max(3, sum(b) + 2)


def face_ideal_witness(K: SimplicialComplex, a: Sequence[int], b: Sequence[int],
                       field: FieldSpec = QQ, degree_bound: Optional[int] = None,
                       lucas: bool = False) -> Optional[Exps]:
    """A monomial ``x^c ∈ I_K`` (entries ``<= degree_bound``) whose image under
    ``x^a d^(b)`` is a nonzero monomial outside ``I_K``, or ``None``."""
    n = K.n_vertices
    if len(a) != n or len(b) != n:
        raise AmbientMismatch("exponent vectors must match the number of vertices")
    bound = oracle_bound(b) if degree_bound is None else degree_bound
    nonzero = [_nonzero_row(b[i], bound, field, lucas) for i in range(n)]
    return kernels.ideal_violation(K.face_table, n, list(a), list(b), bound, nonzero)


@lru_cache(maxsize=4096)
def _nonzero_row(bi: int, bound: int, field: FieldSpec, lucas: bool) -> bytes:
    # entry c says whether C(c, bi) survives in the field
    return bytes(1 if binomial(c, bi, field, lucas) else 0 for c in range(bound + 1))


def preserves_face_ideal_oracle(K: SimplicialComplex, a: Sequence[int], b: Sequence[int],
                                field: FieldSpec = QQ,
                                degree_bound: Optional[int] = None) -> bool:
    """Brute-force test that ``x^a d^(b)`` maps ``I_K`` into itself on all
    monomials with exponents up to ``degree_bound`` (default
    ``max(3, |b| + 2)``)."""
    return face_ideal_witness(K, a, b, field, degree_bound) is None
