import pytest

from qkron.cluster import gr_table
from qkron.errors import BudgetExceeded, InvalidParameter
from qkron.fforacle import (
    FFModule,
    build_module,
    count_gr,
    count_strata,
    end_dim,
)
from qkron.qlaurent import q_binomial
from qkron.strata import strata_from_gr


def test_build_m4_r2():
    mod = build_module(2, 2, 4)
    assert mod.phis == (((1, 0),), ((0, 1),))
    assert end_dim(mod) == 1


def test_build_m4_r3_p3():
    mod = build_module(3, 3, 4)
    assert mod.phis == (
        ((1, 0, 0),),
        ((0, 1, 0),),
        ((0, 0, 1),),
    )
    assert end_dim(mod) == 1


def test_build_m6_r2():
    mod = build_module(2, 2, 6)
    assert (mod.d1, mod.d2) == (4, 3)
    assert end_dim(mod) == 1


def test_build_validation():
    with pytest.raises(InvalidParameter):
        build_module(7, 2, 4)
    with pytest.raises(InvalidParameter):
        build_module(2, 1, 4)
    with pytest.raises(InvalidParameter):
        build_module(2, 2, 7)


def test_end_dim_detects_non_rigid():
    # two equal maps commute with far more pairs than the rigid module does
    mod = FFModule(2, 2, 4, 2, 1, (((1, 0),), ((1, 0),)))
    assert end_dim(mod) > 1


def test_count_gr_examples():
    mod = build_module(2, 2, 6)
    assert count_gr(mod, 0, 1) == 7
    assert count_gr(mod, 1, 1) == 3
    assert count_gr(mod, 2, 1) == 0
    with pytest.raises(InvalidParameter):
        count_gr(mod, 5, 0)


def test_count_gr_budget():
    mod = build_module(2, 3, 5)
    with pytest.raises(BudgetExceeded):
        count_gr(mod, 4, 2, cap=10)


def test_count_strata_examples():
    m4 = build_module(2, 2, 4)
    assert count_strata(m4, "zp", 2, 0) == 1
    # p = 0 on the closed preimage side puts no condition at all
    for s in range(m4.d2 + 1):
        want = int(q_binomial(m4.d2, m4.d2 - s).evaluate(2))
        assert count_strata(m4, "zpbar", 0, s) == want
    with pytest.raises(InvalidParameter):
        count_strata(m4, "sideways", 0, 0)


def test_strata_oracle_matches_polynomials():
    mod = build_module(2, 2, 6)
    table = gr_table(2, 6)
    st = strata_from_gr(table, 1)
    s = table.d2 - 1  # e2 = 1
    for p0 in range(table.d1 + 1):
        assert count_strata(mod, "zpbar", p0, s) == int(st.zbar(p0).evaluate(2))
        assert count_strata(mod, "zp", p0, s) == int(st.zp(p0).evaluate(2))


def test_counts_match_polynomials_small():
    for r, n, p in [(2, 4, 2), (2, 4, 3), (2, 5, 2), (3, 4, 2)]:
        mod = build_module(p, r, n)
        table = gr_table(r, n)
        for e1 in range(table.d1 + 1):
            for e2 in range(table.d2 + 1):
                assert count_gr(mod, e1, e2) == int(table.entry(e1, e2).evaluate(p))


def test_certificate_stability():
    a = build_module(2, 3, 5, seed=0)
    b = build_module(2, 3, 5, seed=1)
    assert a.phis != b.phis  # independently found modules
    for e1 in (0, 1, 2, 7, 8):
        for e2 in range(4):
            assert count_gr(a, e1, e2) == count_gr(b, e1, e2)


def test_forward_identities_at_prime():
    r, n, p = 2, 5, 2
    mod = build_module(p, r, n)
    table = gr_table(r, n)
    d1, d2 = table.d1, table.d2
    for e1 in range(d1 + 1):
        for e2 in range(d2 + 1):
            target = count_gr(mod, e1, e2)
            via_zp = sum(
                int(q_binomial(pp, e1).evaluate(p))
                * count_strata(mod, "zp", pp, d2 - e2)
                for pp in range(d1 + 1)
            )
            via_z = sum(
                int(q_binomial(pp, e2 - d2 + pp).evaluate(p))
                * count_strata(mod, "z", pp, e1)
                for pp in range(d2 + 1)
            )
            assert via_zp == target
            assert via_z == target


def test_module_json():
    mod = build_module(2, 2, 4)
    obj = mod.to_obj()
    assert obj == {"p": 2, "r": 2, "phis": [[[1, 0]], [[0, 1]]]}
    back = FFModule.from_obj(obj, n=4)
    assert back.phis == mod.phis and (back.d1, back.d2) == (2, 1)
    assert end_dim(back) == 1
