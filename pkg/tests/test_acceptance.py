"""Acceptance checklist: one test (and one printed pass/fail line) per criterion.

Three checks are red by design and documented where they fail:

* the published Q^-1 coefficient of the order-4 sum over the 24-point orbit
  (criterion 2, leading-coefficient sub-check);
* the quoted closed form |p - 1/2| for the cusp valuation of the order-0
  coefficient (criterion 5, p = 1/2 sub-check), which disagrees with the
  valuation table it is derived from at exactly p = 1/2;
* the 1e-6 cross-validation bound at trunc 6 for the 8-point orbit
  (criterion 7), which no correct implementation can meet at mu = 1.05
  because of the slow convergence of that orbit's summed series.
"""

from __future__ import annotations

import time
from fractions import Fraction

import numpy as np
import pytest

from bianchi9 import modular
from bianchi9.instanton import (
    OneParamPoint,
    TwoParamPoint,
    frame_one_param_jet,
    frame_two_param_jet,
    frame_two_param_series,
)
from bianchi9.modular import identify, sample_mu, valence_budget, vv_modularity_report
from bianchi9.seeley import CoeffIndex, a0, a2, a4, coefficient
from bianchi9.series import Grade
from bianchi9.theta import THETA2, THETA3, THETA4, Characteristics, ThetaSpec, theta_series

from test_theta import (
    _s_residual,
    _t2_residual,
    _t_residual,
    expected_dq_theta_valuation,
    expected_theta_valuation,
)

F = Fraction


def _report(criterion: int, ok: bool, detail: str) -> None:
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {criterion}: {detail}"


ORBIT_24 = {
    (F(1, 2), F(2, 3)), (F(1, 2), F(1, 3)), (F(5, 6), F(2, 3)), (F(5, 6), F(1, 3)),
    (F(5, 6), F(0)), (F(1, 6), F(2, 3)), (F(1, 6), F(1, 3)), (F(1, 6), F(0)),
    (F(2, 3), F(5, 6)), (F(2, 3), F(2, 3)), (F(2, 3), F(1, 2)), (F(2, 3), F(1, 3)),
    (F(2, 3), F(1, 6)), (F(2, 3), F(0)), (F(1, 3), F(5, 6)), (F(1, 3), F(2, 3)),
    (F(1, 3), F(1, 2)), (F(1, 3), F(1, 3)), (F(1, 3), F(1, 6)), (F(1, 3), F(0)),
    (F(0), F(1, 6)), (F(0), F(2, 3)), (F(0), F(5, 6)), (F(0), F(1, 3)),
}

ORBIT_8 = {
    (F(1, 2), F(1, 6)), (F(5, 6), F(1, 2)), (F(5, 6), F(5, 6)), (F(5, 6), F(1, 6)),
    (F(1, 2), F(5, 6)), (F(1, 6), F(5, 6)), (F(1, 6), F(1, 2)), (F(1, 6), F(1, 6)),
}


def test_criterion_1_orbit_reproduction():
    t0 = time.perf_counter()
    third = modular.orbit(F(0), F(1, 3))
    sixth = modular.orbit(F(1, 6), F(5, 6))
    elapsed = time.perf_counter() - t0
    ok = (
        {(pt.p, pt.q) for pt in third.points} == ORBIT_24
        and {(pt.p, pt.q) for pt in sixth.points} == ORBIT_8
        and elapsed < 1.0
    )
    _report(1, ok, f"orbit point sets exact (24 and 8 points), {elapsed:.3f}s")


def test_criterion_2_exact_q_expansions(orbit_sums):
    a0_third = {-1: F(-4, 3), 1: F(262512), 2: F(171950080, 3), 3: F(3457199880)}
    a4_third = {1: F(87504, 5), 2: F(34390016, 9), 3: F(230479992)}
    a0_sixth = {1: F(-294912), 2: F(438829056), 3: F(-315542863872)}
    a4_sixth = {1: F(-270336, 5), 2: F(402259968, 5), 3: F(-289247625216, 5)}
    checks = []

    def series(name, order):
        res, elapsed = orbit_sums[name, order]
        checks.append(elapsed < 60.0)
        return res.representation

    s = series("third", 0)
    q = s.as_q_expansion()
    checks.append(all(q[e] == c for e, c in a0_third.items()))
    checks.append(s.grade == Grade(-3, -2))
    s = series("third", 2)
    q = s.as_q_expansion()
    checks.append(all(q[e] == -c for e, c in a0_third.items()))
    checks.append(s.grade == Grade(-1, -1))
    s = series("third", 4)
    q = s.as_q_expansion()
    checks.append(all(q[e] == c for e, c in a4_third.items()))
    checks.append(s.grade == Grade(1, 0))
    s = series("sixth", 0)
    q = s.as_q_expansion()
    checks.append(all(q[e] == c for e, c in a0_sixth.items()))
    s = series("sixth", 2)
    q = s.as_q_expansion()
    checks.append(all(q[e] == -c for e, c in a0_sixth.items()))
    s = series("sixth", 4)
    q = s.as_q_expansion()
    checks.append(all(q[e] == c for e, c in a4_sixth.items()))
    _report(2, all(checks), "exact rational Q-expansions and grades, < 60 s each")


def test_criterion_2_a4_leading_coefficient_as_published(orbit_sums):
    res, _ = orbit_sums["third", 4]
    got = res.representation.as_q_expansion()[-1]
    ok = got == F(-4, 15)
    _report(
        2,
        ok,
        f"published Q^-1 coefficient -4/15 of the order-4 sum; computed {got}. "
        "The computed value is forced by the (passing) identification of the "
        "same series as -405405 * G14/Delta: the constant times "
        "g14 = 4/18243225 gives exactly -4/45 at Q^-1, so the published -4/15 "
        "is internally inconsistent with the identification it accompanies.",
    )


def test_criterion_3_identification_constants(orbit_third, orbit_sixth, orbit_sums):
    expect = {
        ("third", 0): (F(-6081075), Grade(-17, -2), "G14/Delta"),
        ("third", 2): (F(6081075), Grade(-15, -1), "G14/Delta"),
        ("third", 4): (F(-405405), Grade(-13, 0), "G14/Delta"),
        ("sixth", 0): (F(-114688, 3375), Grade(7, -2), "Delta*G6/G4^4"),
        ("sixth", 2): (F(114688, 3375), Grade(9, -1), "Delta*G6/G4^4"),
        ("sixth", 4): (F(-315392, 50625), Grade(11, 0), "Delta*G6/G4^4"),
    }
    orbs = {"third": orbit_third, "sixth": orbit_sixth}
    ok = True
    for (name, order), (const, grade, target) in expect.items():
        ident = identify(orbit_sums[name, order][0], orbs[name])
        ok = ok and ident.constant == const and ident.grade == grade and ident.target == target
    _report(3, ok, "all six identification constants exact")


def test_criterion_4_valence_bookkeeping(orbit_third, orbit_sixth):
    ok = (
        valence_budget(orbit_third) == 0
        and (orbit_third.n, orbit_third.n0) == (24, 4)
        and valence_budget(orbit_sixth) == F(2, 3)
        and (orbit_sixth.n, orbit_sixth.n0) == (8, 0)
    )
    # n >= 6 n0 for every orbit seeded from denominators <= 12
    grid = sorted({F(a, b) for b in range(1, 13) for a in range(b)})
    seen: set = set()
    n_orbits = 0
    for p in grid:
        for q in grid:
            if (p, q) in seen:
                continue
            orb = modular.orbit(p, q)
            seen.update((pt.p, pt.q) for pt in orb.points)
            if modular.is_exceptional(orb):
                continue
            n_orbits += 1
            if orb.n < 6 * orb.n0:
                ok = False
    _report(4, ok, f"budgets 0 and 2/3; n >= 6 n0 across {n_orbits} orbits from denominators <= 12")


def _a0_valuation_from_theta_table(p: Fraction, q: Fraction) -> Fraction:
    """Order of vanishing of the order-0 coefficient at the cusp.

    Assembled from the theta-level valuation table; the commonly quoted
    closed form |p - 1/2| agrees with this everywhere except p = 1/2, where
    the dq-theta valuation at characteristic 0 is 1/2 rather than 0.
    """
    if p == 0:
        return F(-1)
    terms = F(1, 4)  # two factors of the 1/8-valuation classical theta
    terms += expected_theta_valuation(p)
    for dp, dq in ((F(1, 2), F(0)), (F(1, 2), F(1, 2)), (F(0), F(1, 2))):
        terms += expected_dq_theta_valuation(p + dp, q + dq)
    return terms - 4 * expected_dq_theta_valuation(p, q)


def test_criterion_5_orders_at_infinity(orbit_third, orbit_sixth):
    ok = theta_series(ThetaSpec(THETA2), 4).valuation_frac() == F(1, 8)
    for spec in (THETA3, THETA4):
        ok = ok and theta_series(ThetaSpec(spec), 4).valuation_frac() == 0
    points = list(orbit_third.points) + list(orbit_sixth.points)
    for pt in points:
        char = Characteristics(pt.p, pt.q)
        ok = ok and theta_series(ThetaSpec(char), 4).valuation_frac() == expected_theta_valuation(pt.p)
        d = theta_series(ThetaSpec(char, 0, True), 4)
        want = expected_dq_theta_valuation(pt.p, pt.q)
        ok = ok and (d.is_zero() if want is None else d.valuation_frac() == want)
        if not TwoParamPoint(pt.p, pt.q).is_degenerate():
            v = a0(frame_two_param_series(TwoParamPoint(pt.p, pt.q), 2)).representation.valuation_frac()
            want_a0 = _a0_valuation_from_theta_table(pt.p, pt.q)
            if pt.p not in (0, F(1, 2)):
                assert want_a0 == abs(pt.p - F(1, 2))  # closed form away from p = 1/2
            ok = ok and v == want_a0
    _report(5, ok, f"valuations exact at all {len(points)} orbit points")


def test_criterion_5_closed_form_at_p_half(orbit_third):
    halves = [pt for pt in orbit_third.points if pt.p == F(1, 2)]
    worst_ok = True
    got = {}
    for pt in halves:
        v = a0(frame_two_param_series(TwoParamPoint(pt.p, pt.q), 2)).representation.valuation_frac()
        got[str(pt.q)] = str(v)
        worst_ok = worst_ok and v == abs(pt.p - F(1, 2))
    _report(
        5,
        worst_ok,
        f"closed form |p - 1/2| at the p = 1/2 points; computed valuations {got}. "
        "The quoted closed form gives 0 there, but assembling the same "
        "quantity from the theta valuation table gives "
        "1/4 + 1/8 + 1/2 + 1/8 + 1/2 - 4*(1/8) = 1, because the dq-theta "
        "valuation at first characteristic 0 is 1/2, not the generic "
        "(p+1/2 distance)^2/2 = 0. The exact series agrees with the table "
        "value 1, so the closed form breaks at exactly p = 1/2.",
    )


def test_criterion_6_transformation_residuals(orbit_third, orbit_sixth):
    worst = 0.0
    for orb in (orbit_third, orbit_sixth):
        for n in (0, 1, 2):
            rep = vv_modularity_report(orb, CoeffIndex(n), samples=5, tol=1e-9)
            worst = max(worst, rep["max_residual"])
    theta_worst = 0.0
    for p, q in ((F(1, 3), F(1, 5)), (F(1, 6), F(5, 6)), (F(0), F(1, 3)), (F(1, 2), F(1, 3))):
        for mu in (1.2, 0.85):
            theta_worst = max(
                theta_worst,
                _t_residual(p, q, mu),
                _t2_residual(p, q, mu),
                _s_residual(p, q, mu),
            )
    ok = worst <= 1e-9 and theta_worst <= 1e-10
    _report(
        6,
        ok,
        f"coefficient transforms max residual {worst:.2e} (<= 1e-9); "
        f"theta-level laws max residual {theta_worst:.2e} (<= 1e-10)",
    )


def _crossval_residuals(orb, sums_key, orbit_sums, mu=1.05):
    out = {}
    for order in (0, 2, 4):
        series = orbit_sums[sums_key, order][0].representation
        exact = series.evaluate_mu(mu)
        direct = 0j
        index = CoeffIndex(order // 2)
        for pt in orb.points:
            fr = frame_two_param_jet(TwoParamPoint(pt.p, pt.q), mu, 1e-14)
            direct += complex(coefficient(fr, index).representation.comps[0])
        out[order] = abs(exact - direct) / max(abs(direct), 1.0)
    return out


def test_criterion_7_cross_validation_24_point_orbit(orbit_third, orbit_sums):
    res = _crossval_residuals(orbit_third, "third", orbit_sums)
    worst = max(res.values())
    _report(7, worst < 1e-6, f"24-point orbit residuals at mu=1.05: {res} (< 1e-6)")


def test_criterion_7_cross_validation_8_point_orbit(orbit_sixth, orbit_sums):
    res = _crossval_residuals(orbit_sixth, "sixth", orbit_sums)
    worst = max(res.values())
    _report(
        7,
        worst < 1e-6,
        f"8-point orbit residuals at mu=1.05: {res}. The summed series for "
        "this orbit is a multiple of Delta*G6/G4^4, whose nearest singularity "
        "(the G4 zero at the order-3 elliptic point) puts its radius of "
        "convergence at |Q| = e^(-pi sqrt(3)) ~ 4.3e-3; at mu = 1.05 the "
        "term ratio is ~0.32, so six terms cannot reach 1e-6 (deepening the "
        "truncation does converge: residuals shrink steadily with trunc).",
    )


def test_criterion_8_dirac_structure():
    import random

    from bianchi9.dirac import (
        GAMMAS,
        IDENT,
        dtilde_sq_crosscheck,
        metric_matrix,
        sigma_Dtilde_sq,
    )

    ok = all(
        np.array_equal(
            GAMMAS[a] @ GAMMAS[b] + GAMMAS[b] @ GAMMAS[a],
            -2 * IDENT if a == b else np.zeros((4, 4)),
        )
        for a in range(4)
        for b in range(4)
    )
    frame = frame_two_param_jet(TwoParamPoint(F(1, 6), F(5, 6)), 1.05, 1e-14)
    rng = random.Random(0)
    worst_p2 = 0.0
    for _ in range(20):
        x = (1.05, 0.4 + 2.2 * rng.random(), 6.28 * rng.random(), 6.28 * rng.random())
        sq = sigma_Dtilde_sq(x, frame)
        ginv = np.linalg.inv(metric_matrix(x, frame))
        xi = np.array([rng.gauss(0, 1) for _ in range(4)])
        want = xi @ ginv @ xi
        acc = np.zeros((4, 4), dtype=complex)
        for j in range(4):
            for k in range(4):
                acc += sq.p2[j, k] * xi[j] * xi[k]
        worst_p2 = max(worst_p2, float(np.abs(acc - want * IDENT).max() / (1 + abs(want))))
    cross = dtilde_sq_crosscheck((1.05, 1.2, 0.7, 2.1), frame, tol=1e-10)
    ok = ok and worst_p2 <= 1e-12 and cross["pass"]
    _report(
        8,
        ok,
        f"gamma relations exact; p2 vs inverse metric {worst_p2:.2e} (<= 1e-12); "
        f"squared-symbol crosscheck {cross['max_residual']:.2e} (<= 1e-10)",
    )


def test_criterion_9_first_derivatives_vs_finite_differences():
    h = 1e-5
    worst = 0.0

    def check(make_frame, mu):
        nonlocal worst
        lo, mid, hi = (make_frame(m) for m in (mu - h, mu, mu + h))
        for get in (
            lambda fr: [fr.w[j] for j in range(3)] + [fr.F_],
            lambda fr: [coefficient(fr, CoeffIndex(n)).representation for n in (0, 1, 2)],
        ):
            for f_lo, f_mid, f_hi in zip(get(lo), get(mid), get(hi)):
                fd = (complex(f_hi.comps[0]) - complex(f_lo.comps[0])) / (2 * h)
                jet = complex(f_mid.comps[1])
                worst = max(worst, abs(jet - fd) / max(abs(fd), 1.0))

    # order-5 frames so the order-4 coefficient still carries a derivative slot
    for mu in sample_mu(5, seed=0):
        check(lambda m: frame_two_param_jet(TwoParamPoint(F(1, 6), F(5, 6)), m, 1e-15, order=5), mu)
        check(lambda m: frame_one_param_jet(OneParamPoint(F(1, 3)), m, 1e-15, order=5), mu)
    _report(9, worst <= 1e-6, f"jet first derivatives vs central differences, max {worst:.2e}")
