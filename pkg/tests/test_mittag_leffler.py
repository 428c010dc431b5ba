from fractions import Fraction as F

import mpmath as mp
import pytest

import oracles
from dfcalc import DomainError, MLSpec, NonConvergenceError, ml_eval, ml_series
from dfcalc.mittag_leffler import delta_term, nabla_term


def test_examples():
    assert ml_eval(MLSpec("nabla", 1, 1, 0.5), 2) == pytest.approx(4.0, rel=1e-14)
    assert ml_eval(MLSpec("nabla", F(1, 3), 1, 0.0), 5) == 1.0
    r = ml_series(MLSpec("delta", 1, 1, 1.0), 3)
    assert r.value == pytest.approx(8.0, rel=1e-14) and r.K == 4 and r.reason == "pole"


@pytest.mark.parametrize("lam", [0.25, -0.25, 0.5, -0.5])
@pytest.mark.parametrize("m", range(11))
def test_exponential_closed_forms(lam, m):
    v = ml_eval(MLSpec("nabla", 1, 1, lam), m)
    assert abs(v / (1 - lam) ** -m - 1) < 1e-10
    r = ml_series(MLSpec("delta", 1, 1, lam), m)
    assert r.K == m + 1 and r.reason == "pole"
    assert abs(r.value / (1 + lam) ** m - 1) < 1e-10


@pytest.mark.parametrize("alpha", [F(1, 4), F(1, 2), F(3, 4), F(3, 2)])
@pytest.mark.parametrize("beta", [F(1), F(1, 2)])
@pytest.mark.parametrize("z", [F(1), F(7, 2), F(10)])
@pytest.mark.parametrize("lam", [0.3, -0.6])
def test_nabla_against_long_mpmath_sum(alpha, beta, z, lam):
    ref = float(oracles.nabla_ml(alpha, beta, lam, z))
    # alternating series lose accuracy in proportion to sum |term| / |sum|
    scale = float(oracles.nabla_ml(alpha, beta, abs(lam), z))
    assert abs(ml_eval(MLSpec("nabla", alpha, beta, lam), z) - ref) < 1e-14 * scale + 1e-15


@pytest.mark.parametrize("alpha", [F(1, 4), F(1, 2), F(3, 4)])
@pytest.mark.parametrize("m", [0, 1, 4, 9])
def test_delta_pole_termination(alpha, m):
    z = alpha - 1 + m
    r = ml_series(MLSpec("delta", alpha, 1, 0.3), z)
    assert r.reason == "pole" and r.K == m + 1
    ref = sum(oracles.delta_ml_terms(alpha, 1, 0.3, z, m + 1))
    assert r.value == pytest.approx(float(ref), rel=1e-13)
    # the denominator argument of the falling power is a pole from k = m+1 on
    for k in range(m + 1, m + 6):
        x = z + (k - 1) * (alpha - 1)
        assert (x + 1 - k * alpha).denominator == 1 and x + 1 - k * alpha <= 0


def test_delta_off_lattice_uses_tolerance():
    r = ml_series(MLSpec("delta", F(1, 2), 1, 0.4), F(1, 3))
    assert r.reason == "tolerance"
    terms = oracles.delta_ml_terms(F(1, 2), 1, 0.4, F(1, 3), r.K + 1)
    assert r.value == pytest.approx(float(mp.fsum(terms)), rel=1e-12)


def test_nabla_tail_below_tolerance():
    spec = MLSpec("nabla", F(1, 2), 1, 0.5, tol=1e-15)
    r = ml_series(spec, 6)
    assert r.reason == "tolerance" and r.K >= 8
    last = abs(0.5 ** r.K * nabla_term(F(1, 2), F(1), F(6), r.K))
    assert last < 1e-15 * (1 + abs(r.value))


def test_nabla_zero_argument_terminates():
    r = ml_series(MLSpec("nabla", F(1, 2), 1, 0.9), 0)
    assert r.value == 1.0 and r.reason == "pole"


def test_nabla_rejects_large_lambda():
    with pytest.raises(DomainError):
        ml_eval(MLSpec("nabla", F(1, 2), 1, 1.0), 3)
    with pytest.raises(DomainError):
        ml_eval(MLSpec("delta", F(1, 2), 1, -1.5), F(1, 3))


def test_delta_large_lambda_allowed_when_finite():
    assert ml_eval(MLSpec("delta", 1, 1, 3.0), 4) == pytest.approx(256.0)


def test_non_convergence_carries_partial():
    with pytest.raises(NonConvergenceError) as info:
        ml_series(MLSpec("nabla", F(1, 4), 1, 0.9, k_max=10), 30)
    assert info.value.partial is not None and info.value.terms == 11


def test_spec_validation():
    with pytest.raises(DomainError):
        MLSpec("gamma", 1)
    with pytest.raises(DomainError):
        MLSpec("nabla", 0)
    with pytest.raises(DomainError):
        MLSpec("nabla", 1, tol=0)
    with pytest.raises(DomainError):
        MLSpec("nabla", 1, k_max=0)


def test_terms_match_oracle():
    for k in range(6):
        ref = oracles.delta_ml_terms(F(1, 3), F(2), 1.0, F(5, 2), k + 1)[k]
        assert delta_term(F(1, 3), F(2), F(5, 2), k) == pytest.approx(float(ref), rel=1e-13)
