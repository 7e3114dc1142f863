import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qkron.errors import DivisionFailed, InvalidParameter
from qkron.qlaurent import ONE, QLaurent
from qkron.torus import X1, X2, TorusElement, left_divide, word_to_torus

qlaurents = st.lists(
    st.tuples(st.integers(-6, 6), st.integers(-9, 9)), min_size=0, max_size=3
).map(QLaurent)

torus_elements = st.lists(
    st.tuples(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), qlaurents),
    min_size=0,
    max_size=3,
).map(TorusElement)


def q_scalar(k2=2):
    return TorusElement.scalar(QLaurent.q_power(k2))


def test_product_examples():
    x1x2 = X1 * X2
    assert x1x2 * x1x2 == TorusElement.monomial(2, 2, QLaurent.q_power(-2))
    assert TorusElement.one() * x1x2 == x1x2
    # conjugation by X1 scales by q^b
    for a in (-2, 0, 3):
        for b in (-1, 0, 2):
            e = TorusElement.monomial(a, b)
            assert X1 * e * TorusElement.monomial(-1, 0) == e.scale2(2 * b)


def test_pow_examples():
    x1x2 = X1 * X2
    assert x1x2**2 == x1x2 * x1x2
    assert x1x2**0 == TorusElement.one()
    # specialized word powers: (x^1 y^2)^3 = q^(-2*C(3,2)) x^3 y^6
    assert word_to_torus(1, 2) ** 3 == word_to_torus(3, 6).scale2(-12)


def test_word_specialization():
    assert word_to_torus(1, 0) == TorusElement.monomial(1, 0, QLaurent.q_power(1))
    assert word_to_torus(0, 0) == TorusElement.one()
    assert word_to_torus(-1, 2) == TorusElement.monomial(-1, 2, QLaurent.q_power(-3))


def test_word_commutation_identity():
    # x^a y^b = q^(ab) y^b x^a under the torus specialization
    for a in range(-5, 6):
        for b in range(-5, 6):
            lhs = word_to_torus(a, 0) * word_to_torus(0, b)
            rhs = (word_to_torus(0, b) * word_to_torus(a, 0)).scale2(2 * a * b)
            assert lhs == rhs


def test_word_power_closed_form():
    for a in range(-2, 3):
        for b in range(-2, 3):
            for i in range(0, 5):
                lhs = word_to_torus(a, b) ** i
                rhs = word_to_torus(a * i, b * i).scale2(-2 * a * b * math.comb(i, 2))
                assert lhs == rhs


def test_left_divide_examples():
    n = TorusElement.monomial(0, 2, QLaurent.q_power(2)) + TorusElement.one()
    z = left_divide(X1, n)
    assert X1 * z == n
    assert z == TorusElement.monomial(-1, 2, QLaurent.q_power(2)) + TorusElement.monomial(-1, 0)

    e = TorusElement.monomial(2, -3, QLaurent({0: 5, 1: -2}))
    assert left_divide(TorusElement.one(), e) == e

    with pytest.raises(DivisionFailed):
        left_divide(X1 + X2, X1)


def test_left_divide_guards():
    with pytest.raises(InvalidParameter):
        left_divide(TorusElement.zero(), X1)
    assert left_divide(X1, TorusElement.zero()) == TorusElement.zero()
    # non-unit leading coefficient
    bad = TorusElement.monomial(1, 0, QLaurent({0: 2}))
    with pytest.raises(DivisionFailed):
        left_divide(bad, X1 * X1)


@given(torus_elements, torus_elements, torus_elements)
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(torus_elements, torus_elements, torus_elements)
def test_distributivity(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@st.composite
def unit_leading(draw):
    e = draw(torus_elements.filter(bool))
    key, _ = e.lex_leading()
    terms = dict(e.items())
    terms[key] = QLaurent.q_power(draw(st.integers(-4, 4)), draw(st.sampled_from((1, -1))))
    return TorusElement(terms.items())


@given(unit_leading(), torus_elements)
def test_division_roundtrip(d, z):
    assert left_divide(d, d * z) == z


def test_json_roundtrip():
    e = TorusElement.monomial(-2, 3, QLaurent({1: 7})) + TorusElement.monomial(
        0, -1, QLaurent({-4: -2})
    )
    obj = e.to_obj()
    assert obj["terms"][0]["x1"] == -2
    assert TorusElement.from_obj(obj) == e


def test_large_product_path_with_and_without_gmp(monkeypatch):
    import random

    import qkron.qlaurent as qlmod
    import qkron.torus as tmod
    from qkron.torus import _mul_large

    rng = random.Random(11)

    def rnd(nt, nc):
        return TorusElement(
            (
                (rng.randrange(-5, 6), rng.randrange(-5, 6)),
                QLaurent(
                    (rng.randrange(-30, 31), rng.randrange(-99, 100))
                    for _ in range(nc)
                ),
            )
            for _ in range(nt)
        )

    pairs = [(rnd(40, 8), rnd(40, 8)) for _ in range(3)]
    fast = [_mul_large(a._t, b._t) for a, b in pairs if a and b]
    monkeypatch.setattr(qlmod, "_mpz", lambda x: x)
    monkeypatch.setattr(tmod, "_mpz", lambda x: x)
    slow = [_mul_large(a._t, b._t) for a, b in pairs if a and b]
    assert fast == slow
    # and against the plain bilinear accumulation
    for (a, b), want in zip([(a, b) for a, b in pairs if a and b], slow):
        acc = TorusElement.zero()
        for (a1, b1), c1 in a.items():
            for (a2, b2), c2 in b.items():
                acc = acc + TorusElement.monomial(
                    a1 + a2, b1 + b2, (c1 * c2).shift2(-2 * b1 * a2)
                )
        assert acc == want
