import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from srdops.errors import AmbientMismatch, FieldMismatch, ParseError, SRError, SupportNotAFace
from srdops.simplicial import simplex
from srdops.weyl import (
    GF,
    QQ,
    WeylElement as W,
    apply,
    binomial,
    commutator,
    dR_basis_up_to,
    face_ideal_witness,
    in_dR_star,
    in_dR_traves,
    lucas_binomial,
    multiply,
    parse,
    preserves_face_ideal_oracle,
)

FIELDS = [QQ, GF(2), GF(3)]


# -- fields and binomials --------------------------------------------------

def test_field_coercion():
    assert QQ(3) == Fraction(3)
    assert GF(5)(Fraction(1, 2)) == 3
    assert GF(3)(-1) == 2
    assert GF(7).inverse(3) == 5
    with pytest.raises(ZeroDivisionError):
        GF(2)(Fraction(1, 2))
    with pytest.raises(SRError):
        W.zero(1, __import__("srdops").FieldSpec(4))


@given(st.integers(0, 300), st.integers(-2, 300), st.sampled_from([2, 3, 5, 7, 11]))
def test_lucas_matches_exact(n, k, p):
    exact = math.comb(n, k) % p if 0 <= k <= n else 0
    assert lucas_binomial(n, k, p) == exact
    assert binomial(n, k, GF(p), lucas=True) == binomial(n, k, GF(p))


# -- multiplication --------------------------------------------------------

def test_d_times_x():
    assert W.d(1, 0) * W.x(1, 0) == W.x(1, 0) * W.d(1, 0) + W.one(1)


@pytest.mark.parametrize("field,coeff", [(QQ, 10), (GF(2), 0), (GF(5), 0), (GF(3), 1)])
def test_divided_powers_compose(field, coeff):
    prod = W.d(1, 0, 2, field) * W.d(1, 0, 3, field)
    assert prod == W.d(1, 0, 5, field).scale(coeff)


def test_identity_and_zero():
    u = parse("3 x[1] d[2]^(2) + x[2]^2", 2)
    assert u * W.one(2) == u == W.one(2) * u
    assert (u * W.zero(2)).order == -1
    assert commutator(u, u) == W.zero(2)


def test_mismatches():
    with pytest.raises(FieldMismatch):
        W.x(1, 0) * W.x(1, 0, field=GF(2))
    with pytest.raises(AmbientMismatch):
        W.x(1, 0) + W.x(2, 0)


def term(n, field=QQ, hi=3):
    return st.tuples(
        st.tuples(*[st.integers(0, hi)] * n),
        st.tuples(*[st.integers(0, hi)] * n),
        st.integers(-3, 3),
    ).map(lambda t: W.monomial(n, t[0], t[1], t[2], field))


def elements(n, field=QQ, hi=3):
    return st.lists(term(n, field, hi), min_size=1, max_size=3).map(
        lambda ts: sum(ts[1:], ts[0]))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_associativity(field, data):
    u, v, w = (data.draw(elements(2, field, 2)) for _ in range(3))
    assert (u * v) * w == u * (v * w)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_distributivity(field, data):
    u, v, w = (data.draw(elements(2, field)) for _ in range(3))
    assert u * (v + w) == u * v + u * w
    assert (v + w) * u == v * u + w * u


@settings(max_examples=60, deadline=None)
@given(elements(2), elements(2))
def test_order_is_additive_in_characteristic_zero(u, v):
    assume(u and v)
    assert (u * v).order == u.order + v.order


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_product_acts_as_composition(field, data):
    # the action is computed independently of the normal-form product
    u, v = data.draw(elements(2, field)), data.draw(elements(2, field))
    e = data.draw(st.tuples(st.integers(0, 6), st.integers(0, 6)))
    assert apply(u * v, {e: 1}) == apply(u, apply(v, {e: 1}))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_jacobi(field, data):
    u, v, w = (data.draw(elements(2, field, 2)) for _ in range(3))
    total = (commutator(u, commutator(v, w)) + commutator(v, commutator(w, u))
             + commutator(w, commutator(u, v)))
    assert not total


# -- commutator identities -------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(st.tuples(*[st.integers(0, 4)] * 3), st.tuples(*[st.integers(0, 4)] * 3), st.integers(0, 2))
def test_euler_weight(a, b, i):
    E = W.x(3, i) * W.d(3, i)
    m = W.monomial(3, a, b)
    assert commutator(E, m) == m.scale(a[i] - b[i])


@settings(max_examples=60, deadline=None)
@given(st.tuples(*[st.integers(0, 4)] * 3), st.tuples(*[st.integers(0, 4)] * 3), st.integers(0, 2))
def test_x_commutator_then_d(a, b, i):
    m = W.monomial(3, a, b)
    assert commutator(m, W.x(3, i)) * W.d(3, i) == m.scale(b[i])


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("r", [0, 1, 2])
def test_frobenius_weight(p, r):
    F, q = GF(p), p ** r
    E = W.x(1, 0, q, F) * W.d(1, 0, q, F)
    for a in range(10):
        for b in range(a % q, 10, q):
            m = W.monomial(1, (a,), (b,), 1, F)
            assert commutator(E, m) == m.scale((a - b) // q)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("r", [0, 1, 2])
def test_x_recovered_from_its_power(p, r):
    F, q = GF(p), p ** r
    assert commutator(W.x(1, 0, 1, F) * W.d(1, 0, q, F), W.x(1, 0, q, F)) == W.x(1, 0, 1, F)


@pytest.mark.parametrize("a", range(2, 7))
def test_descent_identity_reading(a):
    x, xa = W.x(1, 0), W.x(1, 0, a)
    xd2 = x * W.d(1, 0, 2)
    x2d3 = W.x(1, 0, 2) * W.d(1, 0, 3)
    base = commutator(xd2, xa).scale(Fraction(a - 1, 2)) - commutator(x2d3, xa)
    k = Fraction(12, a * (a * a - 1))
    # divided power reading holds
    assert (base + (xa * xd2).scale(a)).scale(k) == W.x(1, 0, a - 1)
    # plain square reading does not
    plain = x * W.d(1, 0) * W.d(1, 0)
    assert (base + (xa * plain).scale(a)).scale(k) != W.x(1, 0, a - 1)


def test_pure_power_commutators_from_proof():
    for a in range(2, 7):
        xa = W.x(1, 0, a)
        lhs = commutator(W.x(1, 0) * W.d(1, 0, 2), xa)
        assert lhs == (xa * W.d(1, 0)).scale(a) + W.x(1, 0, a - 1).scale(math.comb(a, 2))
        lhs = commutator(W.x(1, 0, 2) * W.d(1, 0, 3), xa)
        want = (W.x(1, 0, a + 1) * W.d(1, 0, 2)).scale(a) \
            + (xa * W.d(1, 0)).scale(math.comb(a, 2)) + W.x(1, 0, a - 1).scale(math.comb(a, 3))
        assert lhs == want


@settings(max_examples=50, deadline=None)
@given(st.tuples(*[st.integers(1, 3)] * 3), st.tuples(*[st.integers(0, 3)] * 3), st.integers(0, 2))
def test_lower_one_divided_power(n_, m, j):
    assume(m[j] > 0)
    lowered = list(m)
    lowered[j] -= 1
    assert commutator(W.monomial(3, n_, m), W.x(3, j)) == W.monomial(3, n_, lowered)


def test_absorbing_x_i_rewrite_sign():
    # x^a d^(b) with a_i = 1, b_i = 0 recovered from a commutator with x_i d_i^(2)
    a, b = (1, 1), (0, 1)
    up = W.monomial(2, (2, 1), b)
    c = commutator(up, W.x(2, 0) * W.d(2, 0, 2))
    extra = W.monomial(2, (2, 1), (1, 1))
    assert c == extra.scale(-2) - W.monomial(2, a, b)
    assert W.monomial(2, a, b) == -c - extra.scale(2)


# -- action ----------------------------------------------------------------

def test_apply_examples(K_B):
    assert apply(W.d(1, 0, 2), {(5,): 1}) == {(3,): 10}
    op = W.x(4, 0) * W.d(4, 1)
    assert apply(op, {(0, 1, 1, 0): 1}) == {(1, 0, 1, 0): 1}
    assert apply(op, {(0, 1, 1, 0): 1}, K_B) == {}
    assert apply(op, {}) == {}


# -- parsing ---------------------------------------------------------------

def test_parse_examples():
    assert parse("d[1] x[1]", 1) == W.x(1, 0) * W.d(1, 0) + W.one(1)
    assert parse("1/2 x[2]^3 d[1]^(2)", 2) == W.monomial(2, (0, 3), (2, 0), Fraction(1, 2))
    assert parse("-2", 1) == W.one(1).scale(-2)
    for bad in ["", "x[3]", "x[1] 2", "y[1]", "x[1] +"]:
        with pytest.raises(ParseError):
            parse(bad, 2)
    with pytest.raises(ParseError):
        parse("1/2 x[1]", 1, GF(2))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_parse_round_trip(field, data):
    u = data.draw(elements(3, field))
    assert parse(str(u), 3, field) == u


# -- membership ------------------------------------------------------------

def test_traves_examples(K_A, K_B, K_C):
    assert not in_dR_traves(K_A, (1, 0, 0), (0, 1, 0))
    assert in_dR_traves(K_B, (1, 0, 0, 0), (0, 1, 0, 0))
    assert in_dR_traves(K_B, (0, 0, 0, 1), (0, 0, 1, 0))
    for K in (K_A, K_B, K_C):
        for a in itertools.product(range(3), repeat=K.n_vertices):
            assert in_dR_traves(K, a, a)


def test_star_examples(K_C):
    assert in_dR_star(K_C, (1, 0, 0, 0, 0), (0, 0, 0, 0, 1))
    assert not in_dR_star(K_C, (0, 1, 0, 0, 0), (1, 0, 0, 0, 0))
    with pytest.raises(SupportNotAFace):
        in_dR_star(K_C, (1, 0, 1, 0, 0), (0, 0, 0, 0, 0))


def test_pure_derivations(K_C, K_B):
    # 1 * d^(b) lies in D(R) iff supp b is in every facet
    assert in_dR_traves(K_C, (0,) * 5, (0, 0, 0, 0, 2))
    assert not in_dR_traves(K_C, (0,) * 5, (0, 1, 0, 0, 0))
    assert not any(in_dR_traves(K_B, (0,) * 4, e) for e in [(1, 0, 0, 0), (0, 1, 0, 0)])


def test_oracle_examples(K_A, K_B):
    assert preserves_face_ideal_oracle(K_B, (1, 0, 0, 0), (0, 1, 0, 0), QQ, 3)
    assert face_ideal_witness(K_A, (1, 0, 0), (0, 1, 0), QQ, 3) == (1, 1, 1)
    assert not preserves_face_ideal_oracle(K_A, (1, 0, 0), (0, 1, 0), QQ, 3)
    img = apply(W.x(3, 0) * W.d(3, 1), {(1, 1, 1): 1}, K_A)
    assert img == {(2, 0, 1): 1}


def test_oracle_field_dependence_is_invisible(K_A):
    # x1 d2^(2) kills x2 in char 2 on bound 3 only if every witness vanishes
    for F in FIELDS:
        assert not preserves_face_ideal_oracle(K_A, (1, 0, 0), (0, 2, 0), F)


def test_basis_examples(K_A):
    assert dR_basis_up_to(K_A, QQ, 0) == [((0, 0, 0), (0, 0, 0))]
    full = dR_basis_up_to(simplex(2), QQ, 1)
    assert len(full) == 16
    basis = dR_basis_up_to(K_A, QQ, 1)
    assert len(basis) == 19
    brute = [(a, b) for a in itertools.product(range(2), repeat=3)
             for b in itertools.product(range(2), repeat=3)
             if a != (1, 1, 1) and preserves_face_ideal_oracle(K_A, a, b)]
    assert basis == brute
    # beyond matching supports, only face-support a with a supp b stars
    for a, b in basis:
        if any(b) and a != b:
            assert set(i for i in range(3) if b[i]) <= set(i for i in range(3) if a[i])


def test_basis_rejects_negative(K_A):
    with pytest.raises(SRError):
        dR_basis_up_to(K_A, QQ, -1)
