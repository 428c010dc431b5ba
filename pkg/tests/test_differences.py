from fractions import Fraction as F

import numpy as np
import pytest

import oracles
from dfcalc import (DomainError, GridFn, OpSpec, PreconditionError, apply, boundary_data,
                    caputo_diff, dual_caputo_diff, inversion_residual, relate_residual, riemann_diff)
from dfcalc.powers import diff_n, rising
from dfcalc.scalars import rgamma

KINDS = [("delta", "left"), ("delta", "right"), ("nabla", "left"), ("nabla", "right")]
ORDERS = [F(1, 4), F(1, 2), F(1), F(4, 3), F(3, 2), F(2), F(5, 2)]


def _random(start, n, seed=5):
    return GridFn(start, np.random.default_rng(seed).uniform(-1, 1, n))


def _spec(family, calc, side, alpha, base):
    return OpSpec(family, calc, side, alpha, base)


@pytest.mark.parametrize("calc,side", KINDS)
@pytest.mark.parametrize("alpha", ORDERS)
@pytest.mark.parametrize("extend", [False, True])
def test_riemann_matches_definition(calc, side, alpha, extend):
    f = _random(F(-1, 2), 12)
    base = f.start if side == "left" else f.last
    out = riemann_diff(_spec("riemann", calc, side, alpha, base), f, extend=extend)
    assert len(out) > 0
    ref = oracles.RIEMANN[(calc, side)]
    for t, v in out.items():
        assert v == pytest.approx(float(ref(f, base, alpha, t)), abs=1e-12)


def test_riemann_windows():
    f = _random(0, 12)
    a = F(0)
    r = riemann_diff(_spec("riemann", "nabla", "left", F(3, 2), a), f)
    assert r.start == a + 2
    r = riemann_diff(_spec("riemann", "nabla", "left", F(3, 2), a), f, extend=True)
    assert r.start == a + 1
    r = riemann_diff(_spec("riemann", "delta", "left", F(3, 2), a), f)
    assert r.start == a + F(1, 2)
    r = riemann_diff(_spec("riemann", "delta", "right", F(3, 2), 11), f)
    assert r.last == 11 - F(1, 2)


@pytest.mark.parametrize("calc,side", KINDS)
@pytest.mark.parametrize("alpha", ORDERS)
def test_caputo_matches_definition(calc, side, alpha):
    f = _random(F(1, 3), 14)
    n = -(-alpha.numerator // alpha.denominator)
    if calc == "nabla":
        base = f.start + (n - 1) if side == "left" else f.last - (n - 1)
    else:
        base = f.start if side == "left" else f.last
    out = caputo_diff(_spec("caputo", calc, side, alpha, base), f)
    assert len(out) > 0
    for t, v in out.items():
        ref = oracles.caputo(calc, side, f, base, alpha, t)
        assert v == pytest.approx(float(ref), abs=1e-12)


@pytest.mark.parametrize("side", ["left", "right"])
@pytest.mark.parametrize("alpha", ORDERS)
def test_dual_caputo_matches_definition(side, alpha):
    f = _random(0, 14)
    base = f.start if side == "left" else f.last
    out = dual_caputo_diff(_spec("dual-caputo", "nabla", side, alpha, base), f)
    assert len(out) > 0
    for t, v in out.items():
        assert v == pytest.approx(float(oracles.dual_caputo(side, f, base, alpha, t)), abs=1e-12)


def test_nabla_caputo_needs_extension_points():
    f = _random(0, 10)
    with pytest.raises(PreconditionError):
        caputo_diff(_spec("caputo", "nabla", "left", F(3, 2), 0), f)
    with pytest.raises(PreconditionError):
        caputo_diff(_spec("caputo", "nabla", "right", F(5, 2), 8), f)
    caputo_diff(_spec("caputo", "nabla", "left", F(1, 2), 0), f)


@pytest.mark.parametrize("alpha", [F(1, 4), F(1, 2), F(3, 4), F(1)])
def test_dual_equals_caputo_below_one(alpha):
    f = _random(0, 16)
    for side, base in (("left", 0), ("right", 15)):
        c = caputo_diff(_spec("caputo", "nabla", side, alpha, base), f)
        d = dual_caputo_diff(_spec("dual-caputo", "nabla", side, alpha, base), f)
        lo, hi = max(c.start, d.start), min(c.last, d.last)
        assert hi >= lo
        assert np.max(np.abs(c.between(lo, hi).values - d.between(lo, hi).values)) < 1e-12


def test_examples():
    one = GridFn.constant(1.0, -3, 12)
    for alpha in (F(1, 2), F(3, 2), F(5, 2)):
        assert not caputo_diff(_spec("caputo", "nabla", "left", alpha, 0), one).values.any()
    r = riemann_diff(_spec("riemann", "nabla", "left", F(1, 2), 0), GridFn.constant(1.0, 0, 5))
    assert r(1) == pytest.approx(1.0)
    f = GridFn.from_function(lambda t: rising(t, 1), -1, 8)
    c = caputo_diff(_spec("caputo", "nabla", "left", F(1, 2), 0), f)
    assert c(1) == pytest.approx(1.0)
    g = _random(0, 10)
    two = riemann_diff(_spec("riemann", "nabla", "left", 2, 0), g)
    assert np.array_equal(two.values, diff_n(g, 2, "nabla").values)
    assert np.array_equal(caputo_diff(_spec("caputo", "nabla", "left", 1, 0), g).values,
                          diff_n(g, 1, "nabla").values)


def test_riemann_of_constant_closed_form():
    a = F(0)
    one = GridFn.constant(1.0, a, 20)
    for alpha in (F(1, 4), F(1, 2), F(3, 4)):
        r = riemann_diff(_spec("riemann", "nabla", "left", alpha, a), one)
        for t, v in r.items():
            assert v == pytest.approx(rising(t - a, -alpha) * rgamma(1 - alpha), rel=1e-10)


def test_dual_caputo_on_square():
    # alpha = 3/2, f = t^2 on N_0: dual nabla Caputo equals the shifted delta Caputo
    f = GridFn.from_function(lambda t: float(t * t), 0, 12)
    d = dual_caputo_diff(_spec("dual-caputo", "nabla", "left", F(3, 2), 0), f)
    c = caputo_diff(_spec("caputo", "delta", "left", F(3, 2), 0), f).shift(F(-3, 2))
    lo, hi = max(c.start, d.start), min(c.last, d.last)
    assert np.max(np.abs(c.between(lo, hi).values - d.between(lo, hi).values)) < 1e-12


def test_apply_dispatch_and_family_checks():
    f = _random(0, 8)
    assert np.array_equal(apply(_spec("sum", "nabla", "left", F(1, 2), 0), f).values,
                          apply(_spec("sum", "nabla", "left", F(1, 2), 0), f).values)
    with pytest.raises(DomainError):
        riemann_diff(_spec("caputo", "nabla", "left", F(1, 2), 0), f)
    with pytest.raises(DomainError):
        dual_caputo_diff(_spec("dual-caputo", "delta", "left", F(1, 2), 0), f)


def test_boundary_data_from_function():
    f = GridFn.from_function(lambda t: float(t) ** 2, 0, 10)
    bd = boundary_data(_spec("caputo", "nabla", "left", F(5, 2), 2), f)
    # Nabla^k f at a = 2 for k = 0, 1, 2: 4, 3, 2
    assert list(bd.values) == pytest.approx([4.0, 3.0, 2.0])


CASES = [(c, s, fam) for c, fam in (("delta", "caputo"), ("nabla", "caputo"), ("nabla", "dual-caputo"))
         for s in ("left", "right")]


@pytest.mark.parametrize("calc,side,family", CASES)
@pytest.mark.parametrize("alpha", ORDERS)
def test_relation_and_inversion(calc, side, family, alpha):
    f = _random(0, 16)
    n = -(-alpha.numerator // alpha.denominator)
    ext = n - 1 if (family == "caputo" and calc == "nabla") else 0
    base = f.start + ext if side == "left" else f.last - ext
    spec = OpSpec(family, calc, side, alpha, base)
    assert relate_residual(spec, f).residual < 1e-9
    assert inversion_residual(spec, f).residual < 1e-9


def test_relation_vanishing_endpoint():
    # 0 < alpha < 1 and f(a) = 0: Caputo equals Riemann
    f = GridFn(0, np.concatenate([[0.0], np.random.default_rng(2).uniform(-1, 1, 11)]))
    spec_c = OpSpec("caputo", "nabla", "left", F(1, 2), 0)
    c = caputo_diff(spec_c, f)
    r = riemann_diff(OpSpec("riemann", "nabla", "left", F(1, 2), 0), f)
    lo = max(c.start, r.start)
    assert np.max(np.abs(c.between(lo, c.last).values - r.between(lo, r.last).values)) < 1e-10


def test_inversion_constant():
    f = GridFn.constant(2.5, 0, 10)
    assert inversion_residual(OpSpec("caputo", "nabla", "left", F(1, 2), 0), f).residual < 1e-14
