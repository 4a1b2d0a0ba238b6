"""Period operators: root multisets, reduction, weight certification."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ises.isespoly import NVARS, _inverse3, _mat_vec, get_entry, load_catalog
from ises.numcore import DomainError
from ises.pfsolve import (
    DeltaOperator,
    HGWeights,
    NotSecondOrder,
    ResonantBasis,
    all_reductions,
    annihilation_check,
    build_gkz,
    reduce_left_divisors,
    tabulated_weights,
    to_hg_weights,
    weight_report,
)

CATALOG = load_catalog()


def entry(name):
    return get_entry(CATALOG, name)


# ---------------------------------------------------------------------------
# operator construction
# ---------------------------------------------------------------------------


def test_fermat_e6_root_multisets():
    op = build_gkz(entry("e6-fermat"), (1, 1, 1))
    assert op.left_roots == (F(-2), F(-1), F(0))
    assert op.right_roots == (F(1), F(1), F(1))
    assert op.step == 3 and op.constant == F(-1, 27)


def test_negative_l_contributes_left_roots():
    op = build_gkz(entry("e6-chain23"), (2, 0, 1))
    assert op.left_roots == (F(-2), F(-1), F(-1, 2), F(0))
    assert op.right_roots == (F(1, 2), F(1), F(3, 2), F(5, 2))
    assert op.constant == F(1)


def test_left_and_right_orders_always_match():
    for e in CATALOG:
        for marg in e.marginals:
            op = build_gkz(e, marg.m)
            assert len(op.left_roots) == len(op.right_roots)
            assert op.step == marg.l and op.constant == marg.C


def test_cancel_requires_a_pair():
    op = build_gkz(entry("e6-fermat"), (1, 1, 1))
    with pytest.raises(DomainError):
        op.cancel(F(0))


# ---------------------------------------------------------------------------
# reduction and weight extraction
# ---------------------------------------------------------------------------


def test_fermat_e6_reduction_steps():
    op = build_gkz(entry("e6-fermat"), (1, 1, 1))
    red = reduce_left_divisors(op)
    assert red.left_roots == (F(-1), F(0))
    assert red.right_roots == (F(1), F(1))
    w = to_hg_weights(red, F(0))
    assert w.triple == (F(1, 3), F(1, 3), F(2, 3)) and w.prefactor == 0


def test_all_marginal_rows_reduce_to_frozen_weights():
    for e in CATALOG:
        for marg in e.marginals:
            op = build_gkz(e, marg.m)
            w = to_hg_weights(reduce_left_divisors(op), F(0))
            assert w.triple == marg.weights, (e.name, marg.m)
            assert w.prefactor == 0
            assert annihilation_check(op, w, 12), (e.name, marg.m)


def test_marginal_weights_sum_rule():
    for e in CATALOG:
        for marg in e.marginals:
            a, b, g = marg.weights
            assert a + b == g == 1 - F(1, marg.l)


def test_reduction_is_confluent_on_catalog():
    for e in CATALOG:
        family_m = e.marginals[0].m
        cases = [(marg.m, (0, 0, 0)) for marg in e.marginals]
        cases += [(family_m, r) for r, _ in e.twisted]
        for m, r in cases:
            finals = all_reductions(build_gkz(e, m, r))
            assert len(finals) == 1, (e.name, m, r)


def test_interior_weights_for_quartic_pair():
    e7 = entry("e7-fermat")
    m = e7.marginals[0].m
    op = build_gkz(e7, m, (2, 0, 0))
    w = to_hg_weights(reduce_left_divisors(op), F(1, 2))
    assert w.triple == (F(1, 4), F(3, 4), F(1, 2))
    assert annihilation_check(op, w, 12)
    op = build_gkz(e7, m, (2, 2, 0))
    w = to_hg_weights(reduce_left_divisors(op), F(1))
    assert w.triple == (F(3, 4), F(3, 4), F(1, 2))
    assert annihilation_check(op, w, 12)


def test_first_order_rows_match_degree():
    for name, r in [
        ("e6-fermat", (1, 0, 0)),
        ("e6-fermat", (1, 1, 0)),
        ("e7-fermat", (1, 1, 0)),
    ]:
        e = entry(name)
        op = build_gkz(e, e.marginals[0].m, r)
        deg = sum(F(x) * q for x, q in zip(r, e.charges))
        w = to_hg_weights(reduce_left_divisors(op), deg)
        assert w.first_order and w.alpha == deg
        assert annihilation_check(op, w, 12)


def test_wrong_degree_is_rejected():
    e = entry("e6-fermat")
    red = reduce_left_divisors(build_gkz(e, (1, 1, 1), (1, 0, 0)))
    with pytest.raises(DomainError):
        to_hg_weights(red, F(3, 4))


def test_unreduced_operator_is_not_second_order():
    op = build_gkz(entry("e6-chain23"), (2, 0, 1))
    with pytest.raises(NotSecondOrder):
        to_hg_weights(op, F(0))


# ---------------------------------------------------------------------------
# twisted table and steering
# ---------------------------------------------------------------------------


def test_twisted_table_certified():
    e8 = entry("e8-fermat")
    m = e8.marginals[0].m
    assert len(e8.twisted) == 8
    for r, tab in e8.twisted:
        w, verified = weight_report(e8, m, r)
        assert w.triple == tab and verified, r


def test_steering_overrides_greedy_overcancellation():
    # two of the twisted rows reduce greedily to first order; the frozen
    # triple (a degenerate 2F1 equal to the same function) is kept because
    # the full operator certifies it
    e8 = entry("e8-fermat")
    m = e8.marginals[0].m
    for r in [(1, 0, 0), (3, 1, 0)]:
        red = reduce_left_divisors(build_gkz(e8, m, r))
        assert red.order == 1
        w, verified = weight_report(e8, m, r)
        assert not w.first_order and verified
        assert w.triple == tabulated_weights(e8, m, r).triple


def test_weight_report_without_frozen_row_uses_greedy():
    e7 = entry("e7-fermat")
    w, verified = weight_report(e7, e7.marginals[0].m, (2, 0, 0))
    assert w.triple == (F(1, 4), F(3, 4), F(1, 2)) and verified


# ---------------------------------------------------------------------------
# the annihilation oracle itself
# ---------------------------------------------------------------------------


def test_both_frobenius_solutions_are_checked():
    # a triple that solves only a *different* equation with the same local
    # exponents at 0 must fail: keep gamma, break alpha
    op = build_gkz(entry("e6-fermat"), (1, 1, 1))
    assert annihilation_check(op, HGWeights(F(1, 3), F(1, 3), F(2, 3)), 30)
    assert not annihilation_check(op, HGWeights(F(1, 3) + F(1, 5), F(1, 3), F(2, 3)), 30)
    assert not annihilation_check(op, HGWeights(F(1, 3), F(1, 3), F(2, 3) + F(1, 7)), 30)


def test_resonant_exponents_raise():
    op = build_gkz(entry("e6-fermat"), (1, 1, 1))
    with pytest.raises(ResonantBasis):
        annihilation_check(op, HGWeights(F(1, 3), F(1, 3), F(1)), 5)
    with pytest.raises(ResonantBasis):
        annihilation_check(op, HGWeights(F(1, 3), F(1, 3), F(-1)), 5)


def test_annihilation_certifies_at_order_thirty():
    for name in ["e6-fermat", "e7-fermat", "e8-fermat"]:
        e = entry(name)
        marg = e.marginals[0]
        op = build_gkz(e, marg.m)
        assert annihilation_check(op, HGWeights(*marg.weights), 30)


# ---------------------------------------------------------------------------
# structural identities
# ---------------------------------------------------------------------------

_CASES = [(e.name, marg.m) for e in CATALOG for marg in e.marginals]


@settings(max_examples=60, deadline=None)
@given(
    case=st.sampled_from(_CASES),
    r=st.tuples(*(st.integers(min_value=0, max_value=5) for _ in range(3))),
)
def test_beta_sum_rule(case, r):
    # sum of right betas minus sum of (1 + left beta) over the true variables
    # equals 1 + deg(phi_r), corrected by the skipped (l_i = 0) rows and the
    # spread of the step vector
    name, m = case
    e = entry(name)
    poly = e.polynomial
    marg = e.marginal(m)
    inv_t = _inverse3([[poly.exponents[j][i] for j in range(NVARS)] for i in range(NVARS)])
    u = _mat_vec(inv_t, [F(x + 1) for x in r])
    s_right = sum(
        (u[i] + k) / marg.l_vector[i]
        for i in range(NVARS)
        if marg.l_vector[i] > 0
        for k in range(marg.l_vector[i])
    )
    s_left = sum(
        1 + (u[i] + k) / marg.l_vector[i]
        for i in range(NVARS)
        if marg.l_vector[i] < 0
        for k in range(-marg.l_vector[i])
    )
    deg = sum(F(x) * q for x, q in zip(r, poly.charges))
    skipped = sum(u[i] for i in range(NVARS) if marg.l_vector[i] == 0)
    spread = F(marg.l - sum(1 for li in marg.l_vector if li != 0), 2)
    assert s_right - s_left == 1 + deg - skipped + spread


@settings(max_examples=40, deadline=None)
@given(
    case=st.sampled_from(_CASES),
    r=st.tuples(*(st.integers(min_value=0, max_value=3) for _ in range(3))),
)
def test_greedy_reduction_leaves_no_pairs(case, r):
    name, m = case
    red = reduce_left_divisors(build_gkz(entry(name), m, r))
    assert not red.cancellable_pairs()
    assert len(red.left_roots) == len(red.right_roots)


def test_operator_text_roundtrip_shape():
    op = build_gkz(entry("e6-fermat"), (1, 1, 1))
    text = op.to_text()
    assert "s^3" in text and "-1/27" in text
