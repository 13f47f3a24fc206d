import cmath
import math

import numpy as np
import pytest

from gpue import algebra, group


def random_matrix(rng, scale=1.0):
    return scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))


def test_pseudo_adjoint_identity_metric_is_adjoint():
    rng = np.random.default_rng(1)
    ident = algebra.identity_metric()
    for _ in range(20):
        a = random_matrix(rng)
        assert algebra.max_abs(
            algebra.pseudo_adjoint(a, ident) - algebra.adjoint(a)
        ) == 0.0


def test_pseudo_adjoint_of_family_under_delta_is_itself():
    delta = algebra.delta_metric()
    h = algebra.h_matrix(1.0, 2.0, 3.0)
    assert np.array_equal(h, algebra.mat2(1, -2j, 3j, 1))
    assert algebra.max_abs(algebra.pseudo_adjoint(h, delta) - h) <= 1e-15
    # oracle: direct multiplication shows delta H delta^-1 = H^dagger
    lhs = delta.matrix @ h @ delta.inverse
    assert algebra.max_abs(lhs - algebra.adjoint(h)) <= 1e-15
    rng = np.random.default_rng(2)
    for _ in range(50):
        a, b, c = rng.normal(size=3)
        h = algebra.h_matrix(a, b, c)
        assert algebra.max_abs(algebra.pseudo_adjoint(h, delta) - h) <= 1e-15


def test_pseudo_adjoint_hermitian_diagonal():
    rho3 = group.generators().rho3
    ident = algebra.identity_metric()
    assert np.array_equal(algebra.pseudo_adjoint(rho3, ident), rho3)


def test_pseudo_adjoint_involution_for_involutive_metric():
    # eta Hermitian with eta^2 = I makes the pseudo-adjoint an involution
    rng = np.random.default_rng(3)
    for metric in (algebra.eta_metric(), algebra.identity_metric()):
        for _ in range(20):
            a = random_matrix(rng)
            twice = algebra.pseudo_adjoint(algebra.pseudo_adjoint(a, metric), metric)
            assert algebra.max_abs(twice - a) <= 1e-14


def test_is_pseudo_hermitian():
    delta = algebra.delta_metric()
    ident = algebra.identity_metric()
    rng = np.random.default_rng(4)
    for _ in range(50):
        a, b, c = rng.normal(size=3)
        assert algebra.is_pseudo_hermitian(algebra.h_matrix(a, b, c), delta, 1e-10)
    herm = random_matrix(rng)
    herm = herm + algebra.adjoint(herm)
    assert algebra.is_pseudo_hermitian(herm, ident, 1e-10)
    assert not algebra.is_pseudo_hermitian(algebra.mat2(0, 1, 0, 0), ident, 1e-10)


def test_is_pseudo_unitary():
    delta = algebra.delta_metric()
    eta = algebra.eta_metric()
    for metric in (delta, eta, algebra.identity_metric()):
        assert algebra.is_pseudo_unitary(algebra.identity(), metric, 1e-12)
    d = algebra.expm(1j * algebra.h_matrix(1.0, 2.0, 3.0))
    assert algebra.is_pseudo_unitary(d, delta, 1e-12)
    # the unnormalized eigenvector matrix at r = 1 maps eta to 2 eta
    d_unnorm = algebra.mat2(1, 1j, 1j, 1)
    gram = algebra.adjoint(d_unnorm) @ eta.matrix @ d_unnorm
    assert algebra.max_abs(gram - 2.0 * eta.matrix) <= 1e-15
    assert not algebra.is_pseudo_unitary(d_unnorm, eta, 1e-10)
    assert abs(algebra.det2(d_unnorm) - 2.0) <= 1e-15


def test_predicates_reject_bad_tolerance_and_singular_metric():
    with pytest.raises(ValueError):
        algebra.is_pseudo_hermitian(algebra.identity(), algebra.eta_metric(), 0.0)
    with pytest.raises(ValueError):
        algebra.Metric(algebra.mat2(1, 1, 1, 1), name="singular")


def test_expm_trivial_cases():
    assert np.array_equal(algebra.expm(np.zeros((2, 2), dtype=complex)), np.eye(2))
    rho3 = group.generators().rho3
    got = algebra.expm(1j * math.pi * rho3)
    want = np.diag([cmath.exp(-1j * math.pi), cmath.exp(1j * math.pi)])
    assert algebra.max_abs(got - want) <= 1e-15
    assert algebra.max_abs(got + np.eye(2)) <= 1e-15


def test_expm_one_parameter_group():
    rho1 = group.generators().rho1
    single = algebra.expm(1j * rho1)
    double = algebra.expm(2j * rho1)
    assert algebra.max_abs(single @ single - double) <= 1e-14


def test_expm_closed_form_matches_series():
    rng = np.random.default_rng(5)
    for _ in range(100):
        a = random_matrix(rng)
        a *= rng.uniform(0.1, 10.0) / algebra.max_abs(a)
        e1 = algebra.expm(a)
        e2 = algebra.expm_taylor(a)
        assert algebra.max_abs(e1 - e2) / algebra.max_abs(e1) <= 1e-13


def test_expm_pseudo_unitarity_battery():
    # exp(iG) of 1000 bounded pseudo-Hermitian G stays delta-pseudo-unitary
    delta = algebra.delta_metric()
    a, b, c = group.draw_family_parameters(1000, seed=11, scale=1.0, bound=5.0)
    d = group.exp_i_h_batch(a, b, c)
    assert group._pu_residual_batch(d, delta).max() <= 1e-12


def test_pseudo_norm_and_matrix_element_invariance():
    delta = algebra.delta_metric()
    rng = np.random.default_rng(6)
    worst_norm = 0.0
    worst_elem = 0.0
    for _ in range(300):
        g = algebra.h_matrix(*rng.normal(size=3))
        d = algebra.expm(1j * g)
        x = rng.normal(size=2) + 1j * rng.normal(size=2)
        y = rng.normal(size=2) + 1j * rng.normal(size=2)
        worst_norm = max(
            worst_norm,
            abs(
                algebra.pseudo_inner(d @ x, d @ y, delta)
                - algebra.pseudo_inner(x, y, delta)
            ),
        )
        a = random_matrix(rng)
        a_prime = d @ a @ algebra.inv2(d)
        lhs = complex((d @ x).conj() @ (delta.matrix @ (a_prime @ (d @ y))))
        rhs = complex(x.conj() @ (delta.matrix @ (a @ y)))
        worst_elem = max(worst_elem, abs(lhs - rhs))
    assert worst_norm <= 1e-12
    assert worst_elem <= 1e-11


def test_pseudo_inner_examples():
    e1 = np.array([1.0, 0.0])
    e2 = np.array([0.0, 1.0])
    assert algebra.pseudo_inner(e1, e1, algebra.identity_metric()) == 1.0
    assert algebra.pseudo_inner(e1, e2, algebra.eta_metric()) == 1.0
    assert algebra.pseudo_inner(e1, e1, algebra.delta_metric()) == 0.0


def test_metric_squares_exact():
    delta = algebra.delta_metric()
    eta = algebra.eta_metric()
    assert np.array_equal(delta.matrix @ delta.matrix, -np.eye(2))
    assert np.array_equal(eta.matrix @ eta.matrix, np.eye(2))


def test_inverse_contract():
    rng = np.random.default_rng(7)
    for _ in range(30):
        a = random_matrix(rng)
        assert algebra.max_abs(a @ algebra.inv2(a) - np.eye(2)) <= 1e-13
    with pytest.raises(ValueError):
        algebra.inv2(algebra.mat2(1, 2, 2, 4))


def test_antilinear_symmetry_residual():
    # real symmetric H commutes with plain conjugation
    h = algebra.mat2(1.0, 0.5, 0.5, -2.0)
    assert algebra.antilinear_symmetry_residual(h, algebra.identity()) == 0.0
    # the map with M = diag(-1, 1) fixes the whole family
    m = algebra.mat2(-1, 0, 0, 1)
    rng = np.random.default_rng(8)
    for _ in range(50):
        h = algebra.h_matrix(*rng.normal(size=3))
        assert algebra.antilinear_symmetry_residual(h, m) <= 1e-15
    # ... but M = delta alone does not (unless c == -b)
    delta = algebra.delta_metric()
    h = algebra.h_matrix(1.0, 2.0, 3.0)
    assert algebra.antilinear_symmetry_residual(h, delta.matrix) > 1.0
    h_sym = algebra.h_matrix(1.0, 2.0, -2.0)
    assert algebra.antilinear_symmetry_residual(h_sym, delta.matrix) <= 1e-15
    with pytest.raises(ValueError):
        algebra.antilinear_symmetry_residual(h, algebra.mat2(1, 1, 1, 1))
