import csv
import math
from pathlib import Path

import numpy as np
import pytest

from gpue import specfun
from gpue.errors import ConvergenceError

DATA = Path(__file__).parent / "data"

EULER_GAMMA = 0.5772156649015328606


def load_k0_reference():
    with open(DATA / "k0_reference.csv") as fh:
        rows = list(csv.DictReader(fh))
    xs = np.array([float(r["x"]) for r in rows])
    vals = np.array([float(r["k0"]) for r in rows])
    return xs, vals


def test_k0_against_frozen_table():
    xs, ref = load_k0_reference()
    got = specfun.bessel_k0(xs)
    rel = np.abs(got - ref) / ref
    assert rel.max() <= 1e-10


def test_k0_reference_point():
    # ascending-series value frozen from a 40-digit independent evaluation
    assert specfun.bessel_k0(1.0) == pytest.approx(0.42102443824070834, rel=1e-14)


def test_k0_small_argument_log_limit():
    # K0(x) -> -(log(x/2) + gamma) as x -> 0+
    x = 1e-6
    residual = specfun.bessel_k0(x) + math.log(x / 2.0) + EULER_GAMMA
    assert abs(residual) <= 1e-10


def _asymptotic_series(x, terms=14):
    # sqrt(pi/2x) e^-x sum_k t_k with t_0 = 1, t_k = t_{k-1} * -(2k-1)^2 / (8xk)
    total = 0.0
    term = 1.0
    for k in range(terms):
        total += term
        term *= -((2 * k + 1) ** 2) / (8.0 * x * (k + 1))
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * total


def test_k0_large_argument_asymptotics():
    x = 30.0
    leading = specfun.bessel_k0(x) * math.exp(x) * math.sqrt(2.0 * x / math.pi)
    assert abs(leading - 1.0) <= 1e-2
    full = _asymptotic_series(x)
    assert abs(specfun.bessel_k0(x) - full) / full <= 1e-10


def test_k0_branch_seam():
    below = specfun.bessel_k0(np.nextafter(2.0, 0.0))
    above = specfun.bessel_k0(np.nextafter(2.0, 4.0))
    assert abs(below - above) / specfun.bessel_k0(2.0) <= 1e-11


def test_k0_monotone_and_convex():
    xs = np.logspace(-6, math.log10(100.0), 1000)
    vals = specfun.bessel_k0(xs)
    assert (np.diff(vals) < 0).all()
    slopes = np.diff(vals) / np.diff(xs)
    assert (np.diff(slopes) > 0).all()


def test_k0_domain_errors():
    with pytest.raises(ValueError):
        specfun.bessel_k0(0.0)
    with pytest.raises(ValueError):
        specfun.bessel_k0(-1.0)
    with pytest.raises(ValueError):
        specfun.bessel_k0(np.array([1.0, -2.0]))


def test_k0_against_mpmath():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 30
    xs = np.logspace(-8, math.log10(700.0), 60)
    for x in xs:
        ref = float(mp.besselk(0, mp.mpf(float(x))))
        assert specfun.bessel_k0(float(x)) == pytest.approx(ref, rel=1e-12)


def test_integrate_exponential_both_tails():
    for tail in ("rational", "exp"):
        res = specfun.integrate(lambda x: np.exp(-x), 0.0, math.inf, 1e-12, tail=tail)
        assert abs(res.value - 1.0) <= 1e-10
        assert res.error_estimate >= 0
        assert res.evaluations >= 15


def test_integrate_k0_is_half_pi():
    res = specfun.integrate(specfun.bessel_k0, 0.0, math.inf, 1e-10)
    assert abs(res.value - math.pi / 2.0) <= 1e-8


@pytest.mark.parametrize("z", [0.25, 1.0, 4.0])
def test_integrate_fiber_representation(z):
    # int_0^inf exp(-(z/2)(r^2 + r^-2)) dr / r equals K0(z)
    def fiber(r):
        return np.exp(-(z / 2.0) * (r * r + 1.0 / (r * r))) / r

    res = specfun.integrate(fiber, 0.0, math.inf, 1e-10)
    assert abs(res.value - specfun.bessel_k0(z)) <= 1e-8


def test_integrate_finite_and_endpoint_singularity():
    res = specfun.integrate(lambda x: x * x, 0.0, 1.0, 1e-12)
    assert res.value == pytest.approx(1.0 / 3.0, abs=1e-13)
    # integrable log singularity at the left endpoint
    res = specfun.integrate(lambda x: np.log(1.0 / x), 0.0, 1.0, 1e-10)
    assert res.value == pytest.approx(1.0, abs=1e-9)


def test_integrate_doubly_infinite_gaussian():
    res = specfun.integrate(lambda x: np.exp(-x * x), -math.inf, math.inf, 1e-11)
    assert res.value == pytest.approx(math.sqrt(math.pi), abs=1e-10)


def test_integrate_linearity():
    f = lambda x: np.exp(-x)
    g = lambda x: 1.0 / (1.0 + x * x)
    alpha, beta = 2.5, -1.25
    combo = lambda x: alpha * f(x) + beta * g(x)
    rf = specfun.integrate(f, 0.0, math.inf, 1e-11)
    rg = specfun.integrate(g, 0.0, math.inf, 1e-11)
    rc = specfun.integrate(combo, 0.0, math.inf, 1e-11)
    bound = 2.0 * (abs(alpha) * rf.error_estimate + abs(beta) * rg.error_estimate
                   + rc.error_estimate)
    assert abs(rc.value - (alpha * rf.value + beta * rg.value)) <= max(bound, 1e-12)


def test_integrate_scalar_only_callable():
    res = specfun.integrate(lambda x: math.exp(-x), 0.0, math.inf, 1e-10)
    assert abs(res.value - 1.0) <= 1e-10


def test_integrate_convergence_error_carries_estimate():
    wiggly = lambda x: np.cos(200.0 * x) * np.log(1.0 / np.abs(x - 0.3) + 1.0)
    with pytest.raises(ConvergenceError) as info:
        specfun.integrate(wiggly, 0.0, 1.0, 1e-13, max_panels=4)
    result = info.value.result
    assert result is not None
    assert result.error_estimate > 1e-13
    assert result.evaluations <= 4 * 15 + 15


def test_integrate_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        specfun.integrate(lambda x: x, 0.0, 1.0, tol=0.0)
    with pytest.raises(ValueError):
        specfun.integrate(lambda x: x, 0.0, math.inf, tail="nope")


def test_integrate_against_scipy():
    quad = pytest.importorskip("scipy.integrate").quad
    cases = [
        (lambda x: np.exp(-x * x / 3.0) * np.cos(x), 0.0, math.inf),
        (lambda x: x ** 1.5 * np.exp(-x), 0.0, math.inf),
        (lambda x: 1.0 / (1.0 + x ** 4), 0.0, 1.0),
    ]
    for f, a, b in cases:
        ours = specfun.integrate(f, a, b, 1e-10).value
        ref, _ = quad(lambda t: float(f(np.array([t]))[0]), a, b)
        assert ours == pytest.approx(ref, abs=5e-9)
