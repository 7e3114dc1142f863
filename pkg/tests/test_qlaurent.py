from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qkron.errors import (
    InvalidParameter,
    NonIntegralEvaluation,
    NotAPowerSeriesInQr,
    NotSupported,
)
from qkron.qlaurent import ONE, QLaurent, c_sequence, q_binomial, q_int, q

qlaurents = st.builds(
    QLaurent,
    st.lists(
        st.tuples(st.integers(-8, 8), st.integers(-9, 9)), min_size=0, max_size=4
    ),
)


# -- independent oracle: product formula with exact polynomial division ------


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_divexact(num, den):
    num = list(num)
    while den and den[-1] == 0:
        den.pop()
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c, rem = divmod(num[k + len(den) - 1], den[-1])
        assert rem == 0
        out[k] = c
        for j, y in enumerate(den):
            num[k + j] -= c * y
    assert all(x == 0 for x in num)
    return out


def _qbinom_oracle(m, n):
    """[m choose n]_q via the product formula, as a coefficient list."""
    num, den = [1], [1]
    for i in range(1, n + 1):
        num = _poly_mul(num, [1] + [0] * (m - n + i - 1) + [-1])
        den = _poly_mul(den, [1] + [0] * (i - 1) + [-1])
    return _poly_divexact(num, den)


def _coeff_list(p):
    if not p:
        return [0]
    out = [0] * (p.max2() // 2 + 1)
    for k2, c in p.items2():
        assert k2 % 2 == 0 and k2 >= 0
        out[k2 // 2] = c
    return out


def test_q_binomial_matches_product_formula():
    for m in range(0, 13):
        for n in range(0, m + 1):
            want = _qbinom_oracle(m, n)
            while len(want) > 1 and want[-1] == 0:
                want.pop()
            assert _coeff_list(q_binomial(m, n)) == want


def test_q_binomial_pinned_example():
    # [4 choose 2]_q = q^4 + q^3 + 2q^2 + q + 1, expanded by the oracle
    assert q_binomial(4, 2) == QLaurent({0: 1, 2: 1, 4: 2, 6: 1, 8: 1})


def test_q_binomial_conventions():
    assert q_binomial(-1, 0) == ONE
    assert q_binomial(-7, 0) == ONE
    assert q_binomial(3, 5) == QLaurent.zero()
    assert q_binomial(5, -1) == QLaurent.zero()
    with pytest.raises(NotSupported):
        q_binomial(-2, 1)


def test_q_int():
    assert q_int(3) == 1 + q + q**2
    assert q_int(0) == QLaurent.zero()


def test_c_sequence_examples():
    assert c_sequence(2, 5) == 4
    assert c_sequence(3, 4) == 8
    assert c_sequence(10, 5) == 980
    assert c_sequence(2, 1) == 0
    assert c_sequence(7, 2) == 1


def test_c_sequence_recurrence():
    for r in range(2, 8):
        for n in range(3, 12):
            assert c_sequence(r, n) == r * c_sequence(r, n - 1) - c_sequence(r, n - 2)


def test_c_sequence_closed_form():
    import math

    for r in range(2, 11):
        for n in range(1, 13):
            closed = sum(
                (-1) ** i * math.comb(n - 2 - i, i) * r ** (n - 2 - 2 * i)
                for i in range(0, max(0, (n - 2) // 2 + 1))
                if n - 2 - i >= i
            )
            assert c_sequence(r, n) == closed


def test_c_sequence_errors():
    with pytest.raises(InvalidParameter):
        c_sequence(1, 4)
    with pytest.raises(InvalidParameter):
        c_sequence(2, 0)


def test_evaluate_examples():
    assert (1 + q + q**2).evaluate(2) == 7
    assert QLaurent.q_power(1).evaluate(4) == 2
    assert QLaurent.q_power(-2).evaluate(2) == Fraction(1, 2)
    assert QLaurent.q_power(1).evaluate(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(NonIntegralEvaluation):
        QLaurent.q_power(1).evaluate(2)
    with pytest.raises(NonIntegralEvaluation):
        QLaurent.q_power(3).evaluate(-4)


def test_compress_power():
    p = 1 + q**3 + q**6
    assert p.compress_power(3) == 1 + q + q**2
    assert ONE.compress_power(5) == ONE
    with pytest.raises(NotAPowerSeriesInQr):
        (q + 1).compress_power(2)
    with pytest.raises(NotAPowerSeriesInQr):
        QLaurent.q_power(-4).compress_power(2)
    assert (1 + q**2).substitute_power(3).compress_power(3) == 1 + q**2


@given(qlaurents, qlaurents, qlaurents)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + QLaurent.zero() == a
    assert a * ONE == a


@given(qlaurents, qlaurents)
def test_mul_against_schoolbook(a, b):
    expected = {}
    for ka, ca in a.items2():
        for kb, cb in b.items2():
            expected[ka + kb] = expected.get(ka + kb, 0) + ca * cb
    assert a * b == QLaurent(expected)


def test_packed_mul_large_signed():
    # force the packed path with mixed-sign dense operands
    a = QLaurent({2 * i: (i % 5) - 2 for i in range(60)})
    b = QLaurent({2 * i: (i % 7) - 3 for i in range(45)})
    expected = {}
    for ka, ca in a.items2():
        for kb, cb in b.items2():
            k = ka + kb
            expected[k] = expected.get(k, 0) + ca * cb
    assert a * b == QLaurent(expected)


def test_text_forms():
    p = QLaurent({0: 1, 2: -3, 5: 1})
    assert str(p) == "1 - 3*q + q^(5/2)"
    assert p.format_descending() == "q^(5/2)-3q+1"
    assert str(QLaurent.zero()) == "0"
    assert (1 + q).format_descending() == "q+1"


def test_json_roundtrip():
    p = QLaurent({-3: 12345678901234567890, 0: -1, 7: 4})
    obj = p.to_obj()
    assert obj["coeffs"][0] == {"q2": -3, "c": "12345678901234567890"}
    assert QLaurent.from_obj(obj) == p


@given(qlaurents)
def test_shift_scale(p):
    assert p.shift2(4).shift2(-4) == p
    assert p.scale(3) == p + p + p
