import pytest

from qkron.cluster import (
    GrTable,
    assemble_xvar,
    dim_vector,
    gr_table,
    xvar_recursive,
)
from qkron.errors import BudgetExceeded, InvalidParameter
from qkron.qlaurent import ONE, QLaurent, c_sequence, q
from qkron.torus import TorusElement


def test_generators():
    assert xvar_recursive(2, 1) == TorusElement.monomial(1, 0)
    assert xvar_recursive(5, 2) == TorusElement.monomial(0, 1)


def test_first_steps_frozen():
    assert xvar_recursive(2, 3) == TorusElement(
        [((-1, 2), QLaurent.q_power(2)), ((-1, 0), ONE)]
    )
    assert xvar_recursive(2, 4) == TorusElement(
        [
            ((-2, 3), QLaurent.q_power(6)),
            ((-2, 1), QLaurent({4: 1, 0: 1})),
            ((-2, -1), QLaurent.q_power(-2)),
            ((0, -1), ONE),
        ]
    )


def test_recursion_relation_holds():
    for r in (2, 3, 4):
        for n in range(3, 7):
            lhs = xvar_recursive(r, n - 2) * xvar_recursive(r, n)
            rhs = (xvar_recursive(r, n - 1) ** r).scale2(r) + TorusElement.one()
            assert lhs == rhs


def test_commutation():
    for r in (2, 3):
        for n in range(1, 6):
            a = xvar_recursive(r, n)
            b = xvar_recursive(r, n + 1)
            assert a * b == (b * a).scale2(2)


def test_invalid_parameters():
    with pytest.raises(InvalidParameter):
        xvar_recursive(1, 4)
    with pytest.raises(InvalidParameter):
        xvar_recursive(2, 0)
    with pytest.raises(BudgetExceeded):
        xvar_recursive(3, 6, 10)


def test_dim_vector():
    assert dim_vector(2, 4) == (2, 1)
    assert dim_vector(10, 6) == (980, 99)
    with pytest.raises(InvalidParameter):
        dim_vector(2, 2)


def test_gr_table_examples():
    t = gr_table(2, 4)
    assert (t.d1, t.d2) == (2, 1)
    assert t.entries == {
        (0, 0): ONE,
        (0, 1): ONE,
        (1, 1): 1 + q,
        (2, 1): ONE,
    }
    t3 = gr_table(2, 3)
    assert t3.entries == {(0, 0): ONE, (1, 0): ONE}
    assert gr_table(2, 6).entry(0, 1) == 1 + q + q**2


def test_gr_table_corners_and_support():
    for r, n in [(2, 5), (2, 6), (3, 4), (3, 5), (4, 5)]:
        t = gr_table(r, n)
        assert t.entry(0, 0) == ONE
        assert t.entry(t.d1, t.d2) == ONE
        seen = set()
        for (e1, e2), poly in t.entries.items():
            assert 0 <= e1 <= t.d1 and 0 <= e2 <= t.d2
            assert not poly.has_negative_coeff()
            key = (-t.d1 + r * (t.d2 - e2), r * e1 - t.d2)
            assert key not in seen
            seen.add(key)
            # dimension bound of the ambient product of Grassmannians
            if poly:
                assert poly.max2() // 2 <= e1 * (t.d1 - e1) + e2 * (t.d2 - e2)


def test_assemble_roundtrip():
    for r, n in [(2, 3), (2, 4), (2, 6), (3, 5)]:
        t = gr_table(r, n)
        assert assemble_xvar(t) == xvar_recursive(r, n)
        again = gr_table(r, n)
        assert again.entries == t.entries


def test_table_json_shape():
    obj = gr_table(2, 4).to_obj()
    assert obj["d1"] == 2 and obj["d2"] == 1
    assert [tuple((e["e1"], e["e2"])) for e in obj["entries"]] == [
        (0, 0),
        (0, 1),
        (1, 1),
        (2, 1),
    ]
