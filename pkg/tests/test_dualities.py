from fractions import Fraction as F

import numpy as np
import pytest

import oracles
from dfcalc import (DomainError, GridFn, HarnessConfig, PreconditionError, SUITE_IDS,
                    check_identity, q_transform, run_all_suites)
from dfcalc.dualities import SUITES, caputo_by_parts_terms, caputo_power_closed, make_inputs

SPEC_SUITES = [
    "left-dual-i", "left-dual-ii", "right-dual-i", "right-dual-ii", "right-dual2-i", "right-dual2-ii",
    "lCdual", "rCdual", "q-delta-sum", "q-delta-caputo", "q-nabla-sum", "q-nabla-caputo",
    "byparts-nabla-sum", "byparts-nabla-riemann", "byparts-delta-sum", "byparts-delta-riemann",
    "byparts-caputo-nabla", "byparts-caputo-delta", "lbsdandds", "bsdandds",
]


def test_registry_contains_required_suites():
    for sid in SPEC_SUITES:
        assert sid in SUITE_IDS


def test_q_transform_basic():
    f = GridFn(F(1, 2), [1.0, 2.0, 3.0])
    q = q_transform(f, F(1, 2), F(5, 2))
    assert q.start == F(1, 2) and list(q.values) == [3.0, 2.0, 1.0]
    assert q(F(1, 2)) == f(F(5, 2))


def test_q_is_an_involution():
    f = GridFn(F(-1, 3), np.random.default_rng(0).standard_normal(9))
    a, b = F(2, 3), F(17, 3)
    qq = q_transform(q_transform(f, a, b), a, b)
    assert qq.start == f.start and qq.values.tobytes() == f.values.tobytes()


def test_q_requires_same_lattice():
    with pytest.raises(DomainError):
        q_transform(GridFn(0, [1.0]), 0, F(1, 2))


@pytest.mark.parametrize("sid", SUITE_IDS)
def test_every_suite_passes_on_default_sweep(sid):
    reports = run_all_suites(HarnessConfig(suites=[sid], lengths=(8, 16)))
    assert reports, f"{sid} produced no cases"
    bad = [r for r in reports if not r.passed]
    assert not bad, bad[0]


def test_left_dual_matches_brute_force():
    # (Delta_{a+1}^alpha y)(t - alpha) = Nabla_a^alpha y(t), both sides by the oracle
    y = GridFn(0, np.random.default_rng(4).uniform(-1, 1, 10))
    alpha = F(1, 2)
    for t in range(2, 10):
        lhs = oracles.delta_left_riemann(y, 1, alpha, t - alpha)
        rhs = oracles.nabla_left_riemann(y, 0, alpha, t)
        assert float(lhs) == pytest.approx(float(rhs), abs=1e-12)
    rep = check_identity("left-dual-i", alpha, y, a=0)
    assert rep.passed


def test_q_identity_matches_brute_force():
    # left delta sum of Qf at a equals Q of the right delta sum at b
    f = GridFn(0, np.random.default_rng(9).uniform(-1, 1, 9))
    a, b, alpha = F(0), F(8), F(1, 3)
    qf = q_transform(f, a, b)
    for t in (a + alpha + k for k in range(8)):
        lhs = oracles.delta_left_sum(qf, a, alpha, t)
        rhs = oracles.delta_right_sum(f, b, alpha, a + b - t)
        assert float(lhs) == pytest.approx(float(rhs), abs=1e-13)


@pytest.mark.parametrize("alpha", [F(1, 4), F(1, 2), F(3, 4)])
def test_caputo_by_parts_boundary_term_exact(alpha):
    rng = np.random.default_rng(6)
    f = GridFn(0, rng.uniform(-1, 1, 12))
    g = GridFn(0, rng.uniform(-1, 1, 12))
    lhs, boundary, tail, g_top = caputo_by_parts_terms(f, g, 0, 11, alpha)
    assert g_top == g(10)
    assert abs(lhs - boundary - tail) < 1e-12
    lhs, boundary, tail, g_top = caputo_by_parts_terms(f, g, 0, 11, alpha, "delta")
    assert g_top == g(10)
    assert abs(lhs - boundary - tail) < 1e-12


def test_hypothesis_violations_raise():
    f = GridFn(0, np.zeros(10))
    with pytest.raises(PreconditionError):
        check_identity("byparts-caputo-nabla", F(3, 2), f, g=f, a=0, b=9)
    with pytest.raises(PreconditionError):
        check_identity("byparts-nabla-sum", F(1, 2), f, a=0, b=9)
    with pytest.raises(PreconditionError):
        check_identity("att", 1, f)
    with pytest.raises(DomainError):
        check_identity("no-such-suite", F(1, 2), f)


def test_check_identity_infers_bases():
    f = GridFn(F(1, 2), np.random.default_rng(1).uniform(-1, 1, 12))
    assert check_identity("right-dual-ii", F(3, 2), f).passed
    assert check_identity("q-nabla-caputo", F(3, 2), f).passed


def test_commutation_negative_orders():
    f = GridFn(0, np.random.default_rng(2).uniform(-1, 1, 16))
    for alpha in (F(-1, 4), F(-4, 3), F(-5, 2)):
        for p in (1, 2, 3):
            assert check_identity("lng", alpha, f, p=p).passed
            assert check_identity("rng", alpha, f, p=p).passed


def test_caputo_power_zero_case_limits():
    # beta - 1 = alpha - 1 with alpha = 1/2: zero for t - a >= 2, Gamma(1/2) at t = a + 1
    assert caputo_power_closed(5, 0, F(1, 2), F(1, 2)) == 0.0
    assert caputo_power_closed(1, 0, F(1, 2), F(1, 2)) == pytest.approx(np.sqrt(np.pi))


def test_report_rows_are_deterministic():
    cfg = HarnessConfig(suites=["lCdual", "q-delta-sum"], lengths=(8,))
    a = [r.row() for r in run_all_suites(cfg)]
    b = [r.row() for r in run_all_suites(cfg)]
    assert a == b
    assert all(row[-1] == "pass" for row in a)


def test_make_inputs_layouts():
    rng = np.random.default_rng(0)
    ci = make_inputs(SUITES["q-nabla-caputo"], F(5, 2), 8, rng)
    assert ci.b - ci.a == 7 and ci.f.start == ci.a - 2 and ci.f.last == ci.b + 2
    ci = make_inputs(SUITES["right-dual2-i"], F(1, 2), 8, rng)
    assert ci.b == F(1, 2) and ci.f.last == ci.b
