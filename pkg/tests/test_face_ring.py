import pytest
from hypothesis import given, settings, strategies as st

from srdops.errors import AmbientMismatch, EmptyComplex
from srdops.face_ring import (
    SquarefreeMonomialIdeal,
    combine,
    dual_complex,
    face_ideal,
    ideal,
    intersect_all,
    minimal_primes,
    monomial_in_ideal,
    restrict_to_faces,
    star_face_ideal,
)
from srdops.simplicial import members, simplex

from strategies import complexes


def test_face_ideals(K_A, K_B):
    assert face_ideal(K_A) == ideal(3, [[0, 1, 2]])
    assert face_ideal(K_B) == ideal(4, [[0, 2], [0, 3], [1, 3]])
    assert face_ideal(simplex(3)).is_zero
    assert str(face_ideal(K_B)) == "<x1*x3, x1*x4, x2*x4>"


def test_star_face_ideals(K_B):
    assert star_face_ideal(K_B, [0]) == ideal(4, [[2], [3]])
    assert star_face_ideal(K_B, [1]) == ideal(4, [[3]])
    # stored in R, where I_K is zero
    assert star_face_ideal(K_B, []) == restrict_to_faces(face_ideal(K_B), K_B)
    assert star_face_ideal(K_B, []).is_zero


def test_minimal_primes(K_A, K_B):
    assert set(minimal_primes(K_A)) == {ideal(3, [[2]]), ideal(3, [[1]]), ideal(3, [[0]])}
    assert set(minimal_primes(K_B)) == {
        ideal(4, [[2], [3]]), ideal(4, [[0], [3]]), ideal(4, [[0], [1]])}
    assert minimal_primes(simplex(2)) == [ideal(2, [])]


def test_prime_intersection_is_face_ideal(K_B):
    assert intersect_all(minimal_primes(K_B)) == face_ideal(K_B)


def test_combine_examples():
    I = ideal(3, [[0, 1]])
    assert combine(I, ideal(3, []), "sum") == I
    assert combine(ideal(3, [[0]]), ideal(3, [[1]]), "sum") == ideal(3, [[0], [1]])
    assert combine(ideal(3, [[0]]), ideal(3, [[1]]), "intersection") == ideal(3, [[0, 1]])
    with pytest.raises(AmbientMismatch):
        combine(ideal(2, []), ideal(3, []))
    with pytest.raises(ValueError):
        combine(I, I, "product")


def test_monomial_membership(K_B):
    assert monomial_in_ideal([1, 0, 1, 0], ideal(4, [[2], [3]]))
    assert not monomial_in_ideal([0, 1, 0, 0], ideal(4, [[3]]))
    assert monomial_in_ideal([0, 0, 5, 0], ideal(4, [[2]]))
    with pytest.raises(AmbientMismatch):
        monomial_in_ideal([1, 0], ideal(4, [[3]]))


def test_face_monomial_never_in_its_star_ideal(all_complexes):
    for K in all_complexes:
        for s in K.face_masks:
            exps = [(s >> i) & 1 for i in range(K.n_vertices)]
            assert not monomial_in_ideal(exps, star_face_ideal(K, members(s)))


def test_unit_and_zero():
    unit = SquarefreeMonomialIdeal.from_masks(2, [0, 1])
    assert unit.is_unit and unit.generators == (0,)
    assert str(unit) == "<1>" and str(ideal(2, [])) == "<0>"
    with pytest.raises(EmptyComplex):
        dual_complex(unit)


def test_vertex_lists_are_one_based():
    assert ideal(4, [[2], [0, 3]]).vertex_lists() == [[3], [1, 4]]


@settings(max_examples=80, deadline=None)
@given(complexes())
def test_dual_of_face_ideal_is_the_complex(K):
    assert dual_complex(face_ideal(K)) == K


@settings(max_examples=80, deadline=None)
@given(complexes())
def test_face_ideal_is_intersection_of_star_ideals_of_facets(K):
    stars = [star_face_ideal(K, members(f)) for f in K.facet_masks]
    assert intersect_all(stars) == face_ideal(K)
    assert set(stars) == set(minimal_primes(K))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.integers(0, (1 << n) - 1), max_size=4),
    st.lists(st.integers(0, (1 << n) - 1), max_size=4),
    st.integers(0, (1 << n) - 1))))
def test_sum_and_intersection_membership(data):
    n, g, h, m = data
    I = SquarefreeMonomialIdeal.from_masks(n, g)
    J = SquarefreeMonomialIdeal.from_masks(n, h)
    assert combine(I, J, "sum").contains_mask(m) == (I.contains_mask(m) or J.contains_mask(m))
    assert combine(I, J, "intersection").contains_mask(m) == (
        I.contains_mask(m) and J.contains_mask(m))


def test_restrict_to_faces_drops_nonface_generators(K_B):
    I = ideal(4, [[0, 2], [3]])
    assert restrict_to_faces(I, K_B) == ideal(4, [[3]])
