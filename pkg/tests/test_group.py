import numpy as np
import pytest

from gpue import algebra, group
from gpue.errors import ConsistencyError

EXPECTED_TABLE = {
    (0, 1): (2, 2, 5),
    (1, 2): (0, 2, 2),
    (2, 0): (2, 0, 2),
}


def test_generator_matrices():
    g = group.generators()
    assert np.array_equal(g.rho3, np.diag([-1.0 + 0j, 1.0]))
    assert np.array_equal(g.identity, np.eye(2))
    for rho in (g.rho1, g.rho2, g.rho3):
        assert np.array_equal(rho @ rho, np.eye(2))


def test_generator_eigenvalues_are_unit():
    g = group.generators()
    for rho in (g.rho1, g.rho2):
        eig = np.sort(np.linalg.eigvals(rho).real)
        assert np.allclose(eig, [-1.0, 1.0], atol=1e-14)


def test_generators_pseudo_hermitian_and_pseudo_unitary():
    # rho1 and rho2 are pseudo-Hermitian and pseudo-unitary, but not for
    # the antisymmetric metric: exact arithmetic gives
    # delta^-1 rho1^dagger delta = [[-1, 0], [i, 1]] != rho1.  A Hermitian
    # metric intertwining each generator with its adjoint does exist and
    # (rho^2 = I) then makes the generator pseudo-unitary as well.
    delta = algebra.delta_metric()
    g = group.generators()
    assert not algebra.is_pseudo_hermitian(g.rho1, delta, 1e-10)
    assert np.array_equal(
        algebra.pseudo_adjoint(g.rho1, delta), algebra.mat2(-1, 0, 1j, 1)
    )
    eta1 = algebra.Metric(algebra.mat2(1, 1j, -1j, 2), name="rho1-metric")
    eta2 = algebra.Metric(algebra.mat2(2, -1j, 1j, 1), name="rho2-metric")
    for rho, metric in ((g.rho1, eta1), (g.rho2, eta2)):
        assert algebra.is_pseudo_hermitian(rho, metric, 1e-14)
        assert algebra.is_pseudo_unitary(rho, metric, 1e-14)


def test_generators_linearly_independent():
    g = group.generators()
    coords = np.stack(
        [np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in g.basis()]
    )
    # 4x8 real coordinate matrix must have full row rank
    assert np.linalg.matrix_rank(coords) == 4
    gram = coords @ coords.T
    assert abs(np.linalg.det(gram)) > 1e-6


def test_decompose_trivial_cases():
    g = group.generators()
    assert group.decompose(g.identity) == (1.0, 0.0, 0.0, 0.0)
    assert group.decompose(g.rho1) == (0.0, 1.0, 0.0, 0.0)


def test_decompose_family_point():
    # solving the linear system for (a, b, c) = (1, 2, 3) gives
    # H = a I + c rho1 + b rho2 + (b + c) rho3
    coeffs = group.decompose(algebra.h_matrix(1.0, 2.0, 3.0))
    assert coeffs == (1.0, 3.0, 2.0, 5.0)
    # direct substitution oracle
    assert (
        algebra.max_abs(group.reconstruct(*coeffs) - algebra.h_matrix(1.0, 2.0, 3.0))
        <= 1e-15
    )


def test_decompose_round_trip():
    rng = np.random.default_rng(10)
    for _ in range(100):
        coeffs = rng.normal(size=4)
        back = group.decompose(group.reconstruct(*coeffs))
        assert np.abs(np.array(back) - coeffs).max() <= 1e-12


def test_decompose_rejects_outside_span():
    with pytest.raises(ValueError):
        group.decompose(algebra.mat2(0, 1, 0, 0))
    with pytest.raises(ValueError):
        group.decompose(algebra.mat2(1j, 0, 0, 0))


def test_structure_constants_match_commutators():
    sc = group.structure_constants()
    for (i, j), want in EXPECTED_TABLE.items():
        assert tuple(sc.table[i, j]) == want
        assert tuple(sc.table[j, i]) == tuple(-v for v in want)
    # named individual entries
    assert sc[(0, 1, 0)] == 2 and sc[(0, 1, 1)] == 2 and sc[(0, 1, 2)] == 5
    assert sc[(1, 2, 1)] == 2 and sc[(1, 2, 2)] == 2
    assert sc[(2, 0, 0)] == 2 and sc[(2, 0, 2)] == 2
    for i in range(3):
        assert tuple(sc.table[i, i]) == (0, 0, 0)


def test_structure_constants_value_set_and_antisymmetry():
    sc = group.structure_constants()
    assert np.isin(sc.table, (-5, -2, 0, 2, 5)).all()
    assert np.array_equal(sc.table, -np.swapaxes(sc.table, 0, 1))


def test_structure_constants_reproduce_commutators():
    g = group.generators()
    rhos = (g.rho1, g.rho2, g.rho3)
    sc = group.structure_constants()
    for i in range(3):
        for j in range(3):
            comm = rhos[i] @ rhos[j] - rhos[j] @ rhos[i]
            expansion = sum(
                int(sc.table[i, j, k]) * rhos[k] for k in range(3)
            )
            assert algebra.max_abs(comm - expansion) <= 1e-13


def test_jacobi_identity():
    sc = group.structure_constants()
    assert group.check_jacobi(sc) == 0
    assert group.check_jacobi(group.StructureConstants(np.zeros((3, 3, 3), np.int64))) == 0


def test_jacobi_detects_perturbation():
    sc = group.structure_constants()
    table = sc.table.copy()
    table[0, 1, 2] = 4  # brute-force evaluation of the cyclic sum goes nonzero
    assert group.check_jacobi(group.StructureConstants(table)) > 0


def test_group_axioms_empty_and_small():
    delta = algebra.delta_metric()
    report = group.check_group_axioms(delta, 0)
    assert report.identity_residual == 0.0
    assert report.max_residual == 0.0

    report = group.check_group_axioms(delta, 100, seed=42)
    assert report.n_pairs == 100 * 100
    assert report.max_residual <= 1e-11


def test_group_axioms_unimodular_eigenvalues():
    # |det D| = 1 for pseudo-unitary D, so |lambda1 lambda2| = 1
    delta = algebra.delta_metric()
    report = group.check_group_axioms(delta, 500, seed=3)
    assert report.unimodularity_residual <= 1e-11
    a, b, c = group.draw_family_parameters(200, seed=4)
    for d in group.exp_i_h_batch(a, b, c):
        eig = np.linalg.eigvals(d)
        assert abs(abs(eig[0] * eig[1]) - 1.0) <= 1e-11


def test_group_axioms_rejects_negative_samples():
    with pytest.raises(ValueError):
        group.check_group_axioms(algebra.delta_metric(), -1)


def test_exp_i_h_batch_matches_expm():
    rng = np.random.default_rng(12)
    a, b, c = rng.normal(size=(3, 50))
    batch = group.exp_i_h_batch(a, b, c)
    for i in range(50):
        direct = algebra.expm(1j * algebra.h_matrix(a[i], b[i], c[i]))
        assert algebra.max_abs(batch[i] - direct) <= 1e-13


def test_structure_constants_consistency_guard():
    # the guard machinery itself: commutators of the true generators
    # never trip it, so trip it artificially through a non-span matrix
    with pytest.raises((ConsistencyError, ValueError)):
        group._expand(algebra.mat2(0, 1, 1j, 0), 1e-14)
