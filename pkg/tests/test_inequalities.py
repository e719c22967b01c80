import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from eigengap import specfun
from eigengap.errors import InsufficientEigenvalues, ParameterError
from eigengap.inequalities import (
    C0_MODE,
    applicable_bounds,
    bound_check,
    c0,
    cheng_yang_homogeneous_bracket,
    cheng_yang_recursion_check,
    cheng_yang_upper,
    cheng_yang_upper_check,
    closed_homogeneous_check,
    closed_minimal_check,
    cpn_closed_gap_bound,
    cpn_domain_gap_bound,
    cpn_universal_check,
    czy_gap_bound,
    extrinsic_cc_check,
    gap_bound_table,
    hp_check,
    implication_chain,
    li_homogeneous_bound,
    ppw_check,
    recursion_constant,
    shifted_upper_bound,
    sphere_domain_gap_bound,
    yang1_check,
    yang2_check,
    yang_yau_minimal_bound,
)
from eigengap.spectra import (
    ball_spectrum,
    box_spectrum,
    clifford_torus_spectrum,
    cpn_spectrum,
    equilateral_triangle_spectrum,
    flat_torus_spectrum,
    hemisphere_spectrum,
    interval_spectrum,
    right_isosceles_triangle_spectrum,
    sphere_spectrum,
)

PI2 = math.pi**2
SQ = box_spectrum((1, 1), 400)
IV = interval_spectrum(math.pi, 50)


# -- Dirichlet universal inequalities: worked values ----------------------------

def test_ppw_examples():
    r = ppw_check([2, 5, 5, 8], 2, 3)
    assert (r.lhs, r.rhs, r.holds, r.exact) == (3, 8, True, True)
    r = ppw_check(SQ, 2, 3)
    assert r.lhs == pytest.approx(3 * PI2) and r.rhs == pytest.approx(8 * PI2) and r.holds
    r = ppw_check(IV, 1, 1)
    assert r.lhs == pytest.approx(3) and r.rhs == pytest.approx(4)
    r = ppw_check(SQ, 2, 2)  # lambda_3 = lambda_2
    assert r.lhs == 0 and r.holds


def test_hp_examples():
    r = hp_check(SQ, 2, 1)
    assert r.rhs == pytest.approx(2 / 3) and r.lhs == pytest.approx(0.5) and r.holds
    r = hp_check(IV, 1, 1)
    assert r.rhs == pytest.approx(1 / 3) and r.lhs == pytest.approx(0.25)
    r = hp_check([1, 1], 2, 1)
    assert r.rhs == math.inf and r.status == "infinite_rhs" and r.holds
    # equality of lambda_{k+1} with an earlier eigenvalue anywhere gives +inf
    r = hp_check(SQ, 2, 2)
    assert r.status == "infinite_rhs"


def test_yang_examples():
    r = yang1_check([2, 5, 5], 2, 2)
    assert (r.lhs, r.rhs) == (9, 12)
    r = yang1_check(IV, 1, 1)
    assert r.lhs == pytest.approx(9) and r.rhs == pytest.approx(12)
    r = yang2_check([2, 5, 5], 2, 2)
    assert (r.lhs, r.rhs) == (5, 10.5)
    r = yang2_check(IV, 1, 1)
    assert r.lhs == pytest.approx(4) and r.rhs == pytest.approx(5)
    ball = ball_spectrum(2, 1, 3)
    r = yang2_check(ball, 2, 1)
    j0, j1 = specfun.bessel_zero(0, 1), specfun.bessel_zero(1, 1)
    assert r.lhs == pytest.approx(j1**2, rel=1e-12) and r.rhs == pytest.approx(3 * j0**2, rel=1e-12)
    assert r.holds and not r.exact


def test_report_json_schema():
    d = ppw_check(SQ, 2, 3).to_json()
    assert set(d) == {"inequality", "k", "lhs", "rhs", "margin", "holds", "status"}
    assert d["margin"] == pytest.approx(d["rhs"] - d["lhs"])


def test_cheng_yang_upper():
    assert cheng_yang_upper(SQ, 2, 1) == pytest.approx(6 * PI2)
    assert cheng_yang_upper_check(SQ, 2, 1).holds
    iv = interval_spectrum(1, 10)
    assert cheng_yang_upper(iv, 1, 4) == pytest.approx(5 * 16 * PI2)
    assert cheng_yang_upper_check(iv, 1, 4).lhs == pytest.approx(25 * PI2)
    # the bound decreases towards k^(2/n) lambda_1 as n grows
    vals = [cheng_yang_upper([1], n, 4) for n in range(1, 30)]
    assert all(a > b for a, b in zip(vals, vals[1:])) and vals[-1] > 1
    for spec, n in [(SQ, 2), (box_spectrum((1, 1, 1), 200), 3), (ball_spectrum(2, 1, 200), 2)]:
        assert all(cheng_yang_upper_check(spec, n, k).holds for k in range(1, 150))


def test_czy_examples():
    assert czy_gap_bound(SQ, 2, 1) == pytest.approx(4 * 2 * PI2 * math.sqrt(1.5))
    iv = interval_spectrum(1, 10_001)
    for k in range(1, 10_001):
        gap = (2 * k + 1) * PI2
        assert czy_gap_bound(iv, 1, k) >= gap
    tri = equilateral_triangle_spectrum(1, 3)
    row = gap_bound_table(tri, 2, 1)[0]
    assert row.tightness["czy"] == pytest.approx(czy_gap_bound(tri, 2, 1) / (64 * PI2 / 9))


def test_sphere_domain_bound():
    hemi = hemisphere_spectrum(200)
    assert sphere_domain_gap_bound(hemi, 2, 1) == pytest.approx(6)
    for k in range(1, 100):
        b = sphere_domain_gap_bound(hemi, 2, k)
        assert b is not None and b >= hemi.value(k + 1) - hemi.value(k)
    # variance zero: 2((2/n) mean + n/2)
    assert sphere_domain_gap_bound([5, 5, 5], 3, 3) == pytest.approx(2 * (2 / 3 * 5 + 1.5))


def test_cpn_domain_bound_variance_zero():
    for n in (1, 2, 3):
        for m in (Fraction(7), Fraction(11, 2)):
            expect = 2 * (m / n + 2 * (n + 1))
            assert cpn_domain_gap_bound([m], n, 1) == pytest.approx(float(expect))
            assert cpn_domain_gap_bound([m, m], n, 2) == pytest.approx(float(expect))


def test_extrinsic_cc():
    hemi = hemisphere_spectrum(50)
    r = extrinsic_cc_check(hemi, 2, 1, 1)
    assert (r.lhs, r.rhs, r.holds) == (16, 24, True)
    assert all(extrinsic_cc_check(hemi, 2, k, 1).holds for k in range(1, 40))
    a, b = extrinsic_cc_check(SQ, 2, 2, 0), yang1_check(SQ, 2, 2)
    assert (a.lhs, a.rhs, a.holds) == (b.lhs, b.rhs, b.holds) and a.inequality == "cc1"
    assert extrinsic_cc_check(SQ, 2, 5, 0.25).holds


# -- closed problems -------------------------------------------------------------

def test_cpn_universal():
    cp1, cp2 = cpn_spectrum(1, 120), cpn_spectrum(2, 120)
    r = cpn_universal_check(cp1, 1, 0)
    assert (r.lhs, r.rhs, r.margin) == (64, 64, 0) and r.holds
    r = cpn_universal_check(cp2, 2, 0)
    assert (r.lhs, r.rhs) == (144, 144)
    for spec, n in ((cp1, 1), (cp2, 2)):
        assert all(cpn_universal_check(spec, n, k).holds for k in range(0, 101))


def test_hm1_examples():
    cl = clifford_torus_spectrum(120)
    r = closed_minimal_check(cl, 2, 1)
    assert r.lhs == 0 and r.holds
    r = closed_minimal_check(cl, 2, 4)
    assert (r.lhs, r.rhs) == (2, pytest.approx(5.2))
    assert all(closed_minimal_check(cl, 2, k).holds for k in range(1, 101))


def test_hm1_clifford_k1_value():
    # rhs = n + 4/(n(k+1)) * lambda_bar_1 = 2 + (4/4) * 2
    r = closed_minimal_check(clifford_torus_spectrum(5), 2, 1)
    assert r.rhs == 4


def test_hm2_examples():
    r = closed_homogeneous_check(sphere_spectrum(2, 10), 3)
    assert (r.lhs, r.rhs) == (4, 8)
    r = closed_homogeneous_check(cpn_spectrum(1, 10), 3)
    assert (r.lhs, r.rhs) == (16, 32)
    t = flat_torus_spectrum((1, 1), 10)
    r = closed_homogeneous_check(t, 4)
    assert r.lhs == pytest.approx(4 * PI2) and r.holds and r.exact


def test_closed_bound_values():
    s2, cp1, t = sphere_spectrum(2, 20), cpn_spectrum(1, 20), flat_torus_spectrum((1, 1), 20)
    cl = clifford_torus_spectrum(20)
    assert yang_yau_minimal_bound(cl, 2, 1) >= 0
    assert yang_yau_minimal_bound(cl, 2, 4) >= 2
    assert li_homogeneous_bound(s2, 3) >= 4
    assert li_homogeneous_bound(cp1, 3) >= 16
    assert li_homogeneous_bound(t, 4) >= 4 * PI2
    assert cheng_yang_homogeneous_bracket(s2, 3) == pytest.approx(8)
    assert cheng_yang_homogeneous_bracket(cp1, 3) == pytest.approx(32)
    assert cpn_closed_gap_bound(cp1, 1, 3) >= 16


def test_bracket_reduces_to_hm2_when_variance_zero():
    for spec, k in [(sphere_spectrum(2, 10), 3), (sphere_spectrum(3, 10), 4), (cpn_spectrum(2, 12), 8),
                    (clifford_torus_spectrum(10), 4)]:
        assert cheng_yang_homogeneous_bracket(spec, k) == pytest.approx(closed_homogeneous_check(spec, k).rhs)


def test_closed_conformance_tables():
    for spec in (sphere_spectrum(2, 110), sphere_spectrum(3, 110), flat_torus_spectrum((1, 1), 110),
                 cpn_spectrum(1, 110), cpn_spectrum(2, 110), clifford_torus_spectrum(110)):
        rows = gap_bound_table(spec, None, 100)
        assert len(rows) == 100 and all(r.ok for r in rows)


def test_table_layout():
    rows = gap_bound_table(SQ, 2, 100)
    assert [r.k for r in rows] == list(range(1, 101))
    assert all(list(r.bounds) == sorted(r.bounds) for r in rows)
    assert gap_bound_table(SQ, 2, 0) == []
    assert set(applicable_bounds(sphere_spectrum(2, 5))) == {"cy_bracket", "hm1", "hm2", "li", "yang_yau"}
    row = gap_bound_table(sphere_spectrum(2, 10), 2, 1)[0]
    assert row.actual_gap == 0 and row.tightness["hm2"] == math.inf
    assert row.to_json()["tightness"]["hm2"] is None


def test_bound_check_report():
    r = bound_check(hemisphere_spectrum(10), "sphere_domain", 2, 1)
    assert r.rhs == pytest.approx(6) and r.lhs == pytest.approx(4) and r.holds


def test_shifted_upper_bound():
    # lambda_{k+1} + 2n(n+1) <= C0 (lambda_1 + 2n(n+1)) k^(1/n)
    lam1 = 8.0
    assert shifted_upper_bound(lam1, 1, 1) == pytest.approx(5 * (8 + 4) - 4)
    assert shifted_upper_bound(lam1, 1, 1, closed=True) == pytest.approx(5 * 12 * 2 - 4)


# -- chain, recursion -----------------------------------------------------------

@pytest.mark.parametrize("spec,n,kmax", [
    (box_spectrum((1, 1), 201), 2, 200),
    (equilateral_triangle_spectrum(1, 201), 2, 200),
    (ball_spectrum(2, 1, 101), 2, 100),
    (right_isosceles_triangle_spectrum(1, 201), 2, 200),
])
def test_implication_chain_models(spec, n, kmax):
    rep = implication_chain(spec, n, kmax)
    assert rep.ok and rep.first_violation is None and len(rep.yang1_holds) == kmax


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=200), min_size=2, max_size=14), st.integers(1, 5))
def test_chain_is_algebraic(raw, n):
    seq = sorted(raw)
    k = len(seq) - 1
    assume(yang1_check(seq, n, k).holds)
    assert yang2_check(seq, n, k).holds
    assert hp_check(seq, n, k).holds
    assert ppw_check(seq, n, k).holds


def test_recursion_constant():
    assert float(recursion_constant(2, 1)) == pytest.approx(0.96875, abs=1e-12)
    assert recursion_constant(2, 1) == Fraction(31, 32)
    assert isinstance(recursion_constant(4, 3), Fraction)
    assert 0 < float(recursion_constant(3, 5)) < 1


def test_recursion_on_square():
    rep = cheng_yang_recursion_check(box_spectrum((1, 1), 102).labels(102), 2, 100)
    assert rep.holds and rep.hypothesis_failed_at is None and len(rep.steps) == 100 and rep.exact


def test_recursion_degenerate_equal_mu():
    rep = cheng_yang_recursion_check([3] * 12, 2, 10)
    # hypothesis holds with 0 <= 0; H_k = (1 + 2/n) 9 - 9 > 0 is constant, so the
    # contraction C(n,k) ((k+1)/k)^2 is what decides each step
    assert rep.hypothesis_failed_at is None
    assert all(s.h == rep.states[0].h for s in rep.states)
    assert all(s.h > 0 for s in rep.states)
    for step in rep.steps:
        factor = float(recursion_constant(2, step.k)) * ((step.k + 1) / step.k) ** 2
        assert step.holds == (factor >= 1)


def test_recursion_hypothesis_failure_reported():
    rep = cheng_yang_recursion_check([1, 1, 1, 1000, 1000, 1000], 2, 5)
    assert rep.hypothesis_failed_at is not None
    assert all(s.k < rep.hypothesis_failed_at for s in rep.steps)


# -- covariance, errors, tolerance ---------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=12), st.integers(1, 60))
def test_dimensional_covariance(t, k):
    a, b = box_spectrum((1, 2), 70), box_spectrum((t, 2 * t), 70)
    s = float(t) ** -2
    for f, power in ((ppw_check, 1), (yang2_check, 1), (yang1_check, 2)):
        ra, rb = f(a, 2, k), f(b, 2, k)
        assert ra.holds == rb.holds
        assert rb.margin == pytest.approx(ra.margin * s**power, rel=1e-12, abs=1e-9)


def test_errors():
    with pytest.raises(InsufficientEigenvalues):
        ppw_check(box_spectrum((1, 1), 3), 2, 3)
    with pytest.raises(ParameterError):
        ppw_check(sphere_spectrum(2, 10), 2, 1)
    with pytest.raises(ParameterError):
        closed_homogeneous_check(SQ, 1)
    with pytest.raises(ParameterError):
        ppw_check(SQ, 0, 1)
    with pytest.raises(ParameterError):
        ppw_check(SQ, 2, 0)


def test_float_tolerance():
    # a float tie within 1e-9 relative counts as holding
    r = yang2_check([1.0, 5.0 * (1 + 1e-11)], 1, 1)
    assert r.holds and not r.exact
    r = yang2_check([1.0, 5.0 * (1 + 1e-6)], 1, 1)
    assert not r.holds
    r = yang2_check([1, 5], 1, 1)
    assert r.holds and r.margin == 0


def test_c0_mode():
    assert C0_MODE == "upper"
    assert c0(2) == 3 and c0(4) == 2
