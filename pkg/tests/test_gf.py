import itertools
import pickle
import random

import pytest
from hypothesis import given, strategies as st

from hypmult.gf import (
    GF, FieldElement, FieldError, embed_build, enumerate_field, extension, field_create, frobenius,
    is_irreducible, parse_field_spec, smallest_irreducible,
)

import props

SMALL = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (2, 6), (3, 3)]


def test_prime_fields():
    F2 = field_create(2)
    assert F2.q == 2 and F2.modulus == (0, 1)
    F5 = field_create(5)
    assert F5.inv(2) == 3


def test_f9_multiplicative_order():
    F = field_create(3, 2)
    for x in range(1, 9):
        assert F.pow(x, 8) == 1
    orders = {min(e for e in range(1, 9) if F.pow(x, e) == 1) for x in range(1, 9)}
    assert 8 in orders


@pytest.mark.parametrize("pk", SMALL)
def test_axioms_exhaustive_pairs(pk):
    F = field_create(*pk)
    if F.q > 64:
        pytest.skip("exhaustive pairs only for q <= 64")
    rng = random.Random(1)
    for a, b in itertools.product(range(F.q), repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
        if b:
            assert F.mul(F.div(a, b), b) == a
        c = rng.randrange(F.q)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def _slow_mul(F, a, b):
    # schoolbook product of coefficient vectors, reduced by the modulus
    x, y = F.coeffs(a), F.coeffs(b)
    prod = [0] * (2 * F.k)
    for i, u in enumerate(x):
        for j, v in enumerate(y):
            prod[i + j] = (prod[i + j] + u * v) % F.p
    m = F.modulus
    for d in range(len(prod) - 1, F.k - 1, -1):
        c = prod[d]
        if c:
            for i, mc in enumerate(m):
                prod[d - F.k + i] = (prod[d - F.k + i] - c * mc) % F.p
    return F.from_coeffs(prod[: F.k])


@pytest.mark.parametrize("pk", [(2, 3), (3, 2), (2, 4), (5, 2)])
def test_table_arithmetic_matches_schoolbook(pk):
    F = field_create(*pk)
    for a, b in itertools.product(range(F.q), repeat=2):
        assert F.mul(a, b) == _slow_mul(F, a, b)
        assert F.add(a, b) == F.from_coeffs([(u + v) % F.p for u, v in zip(F.coeffs(a), F.coeffs(b))])


@pytest.mark.parametrize("pk", SMALL + [(2, 10), (3, 6)])
def test_frobenius_fixed_points(pk):
    F = field_create(*pk)
    for x in range(F.q):
        assert F.pow(x, F.q) == x
        assert F.frobenius(x, F.k) == x
        orbit = {x}
        y = F.frobenius(x)
        while y != x:
            orbit.add(y)
            y = F.frobenius(y)
        assert F.k % len(orbit) == 0


def test_f9_generator_orbit():
    F3, F9 = field_create(3), field_create(3, 2)
    g = FieldElement(F9, 3)  # the class of x
    assert frobenius(g, 1) == g ** 3
    assert frobenius(g, 1) != g and frobenius(g, 2) == g


def test_enumeration():
    assert [e.value for e in enumerate_field(field_create(2))] == [0, 1]
    els = enumerate_field(field_create(2, 3))
    assert len({e.value for e in els}) == 8
    for e in enumerate_field(field_create(3, 2)):
        assert e ** 9 == e


def test_modulus_is_smallest_irreducible():
    for p, k in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        m = smallest_irreducible(p, k)
        assert is_irreducible(m, p)
        # every lexicographically smaller monic candidate (c0 most significant) is reducible
        for cs in itertools.product(range(p), repeat=k):
            if cs < m[:k]:
                assert not is_irreducible(list(cs) + [1], p)


def test_rabin_agrees_with_exhaustive():
    from hypmult.gf import _irreducible_exhaustive, _irreducible_rabin
    for p, k in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)]:
        for cs in itertools.product(range(p), repeat=k):
            m = list(cs) + [1]
            assert _irreducible_exhaustive(m, p) == _irreducible_rabin(m, p)


@pytest.mark.parametrize("src,dst", [((2, 1), (2, 2)), ((2, 2), (2, 4)), ((3, 1), (3, 2)), ((2, 1), (2, 4)), ((3, 2), (3, 4))])
def test_embedding_is_homomorphism(src, dst):
    S, T = field_create(*src), field_create(*dst)
    phi = embed_build(S, T)
    assert phi(1) == 1
    for a, b in itertools.product(range(S.q), repeat=2):
        assert phi(S.add(a, b)) == T.add(phi(a), phi(b))
        assert phi(S.mul(a, b)) == T.mul(phi(a), phi(b))
    # image of the generator is a root of the source modulus
    v = 0
    for c in reversed(S.modulus):
        v = T.add(T.mul(v, phi.image_of_generator), c)
    assert v == 0


def test_errors():
    with pytest.raises(FieldError):
        field_create(4)
    with pytest.raises(FieldError):
        field_create(2, 21)
    with pytest.raises(FieldError):
        embed_build(field_create(2, 2), field_create(2, 3))


def test_field_spec_parsing():
    assert parse_field_spec("5") == field_create(5)
    assert parse_field_spec("3^2") == field_create(3, 2)
    assert parse_field_spec("9") == field_create(3, 2)
    with pytest.raises(FieldError):
        parse_field_spec("6")


def test_pickle_and_element_ops():
    F = field_create(3, 2)
    assert pickle.loads(pickle.dumps(F)) == F
    a, b = F.element(4), F.element(7)
    assert (a * b) / b == a
    assert a - a == 0
    assert (a + 1) - 1 == a


@given(st.randoms(use_true_random=False))
def test_field_axioms_property(rnd):
    props.field_axioms(random.Random(rnd.random()))
