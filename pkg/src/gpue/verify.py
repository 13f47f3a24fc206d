"""Cross-module verification battery behind `gpue verify`.

Each check computes a residual and compares it with a fixed tolerance;
the battery covers the generator algebra, the exponential map, the
sampler's change of variables, the Bessel engine, the quadrature
identities, and the equivalence of the closed-form eigenvalue density
with its brute-force oracle.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from . import algebra, ensemble, group, specfun, stats

# K0 at 17 significant digits from a 40-digit independent evaluation
# (regenerate with tools/gen_k0_reference.py --verify-points).
_K0_POINTS = (
    (1e-06, 13.931442073626419),
    (0.0001, 9.3262719134502749),
    (0.01, 4.721244730161095),
    (0.1, 2.4270690247020166),
    (0.5, 0.92441907122766586),
    (1.0, 0.42102443824070833),
    (1.9, 0.12884597927604748),
    (2.0, 0.11389387274953344),
    (2.1, 0.10078374088996695),
    (5.0, 0.0036910983340425943),
    (12.0, 2.2008253973114914e-6),
    (30.0, 2.1324774964630564e-14),
)

_EXPECTED_STRUCTURE = np.zeros((3, 3, 3), dtype=np.int64)
_EXPECTED_STRUCTURE[0, 1] = (2, 2, 5)
_EXPECTED_STRUCTURE[1, 0] = (-2, -2, -5)
_EXPECTED_STRUCTURE[1, 2] = (0, 2, 2)
_EXPECTED_STRUCTURE[2, 1] = (0, -2, -2)
_EXPECTED_STRUCTURE[2, 0] = (2, 0, 2)
_EXPECTED_STRUCTURE[0, 2] = (-2, 0, -2)


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_dict(self):
        return {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {
            "schema": "gpue-1",
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data):
        checks = tuple(
            CheckResult(c["name"], c["residual"], c["tolerance"])
            for c in data["checks"]
        )
        return cls(checks=checks)

    @classmethod
    def from_json(cls, text: str):
        return cls.from_dict(json.loads(text))


def _structure_checks(overrides):
    sc = overrides.get("structure_constants")
    if sc is None:
        sc = group.structure_constants()
    table_residual = float(np.abs(sc.table - _EXPECTED_STRUCTURE).max())
    allowed = np.isin(sc.table, (-5, -2, 0, 2, 5)).all()
    antisym = float(np.abs(sc.table + np.swapaxes(sc.table, 0, 1)).max())
    yield CheckResult("structure_constants", table_residual, 0.0)
    yield CheckResult("structure_constants_range", 0.0 if allowed else 1.0, 0.0)
    yield CheckResult("structure_antisymmetry", antisym, 0.0)
    yield CheckResult("jacobi", float(group.check_jacobi(sc)), 0.0)


def _exponential_checks(seed):
    delta = algebra.delta_metric()
    rng = np.random.default_rng(seed)
    a, b, c = (rng.uniform(-5.0, 5.0, size=1000) for _ in range(3))
    d = group.exp_i_h_batch(a, b, c)
    residual = float(group._pu_residual_batch(d, delta).max())
    yield CheckResult("expm_pseudo_unitarity", residual, 1e-11)

    report = group.check_group_axioms(delta, 1000, seed=seed, scale=1.0)
    yield CheckResult("group_closure", report.closure_residual, 1e-11)
    yield CheckResult("group_inverse", report.inverse_residual, 1e-11)
    yield CheckResult("group_identity", report.identity_residual, 1e-11)
    yield CheckResult("group_associativity", report.associativity_residual, 1e-11)
    yield CheckResult(
        "eigenvalue_unimodularity", report.unimodularity_residual, 1e-11
    )


def _invariance_checks(seed):
    delta = algebra.delta_metric()
    rng = np.random.default_rng(seed + 17)
    worst_norm = 0.0
    worst_elem = 0.0
    for _ in range(200):
        a, b, c = rng.normal(0.0, 1.0, size=3)
        d = algebra.expm(1j * algebra.h_matrix(a, b, c))
        x = rng.normal(size=2) + 1j * rng.normal(size=2)
        y = rng.normal(size=2) + 1j * rng.normal(size=2)
        lhs = algebra.pseudo_inner(d @ x, d @ y, delta)
        rhs = algebra.pseudo_inner(x, y, delta)
        worst_norm = max(worst_norm, abs(lhs - rhs))
        mat = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        a_prime = d @ mat @ algebra.inv2(d)
        lhs = complex((d @ x).conj() @ (delta.matrix @ (a_prime @ (d @ y))))
        rhs = complex(np.asarray(x).conj() @ (delta.matrix @ (mat @ y)))
        worst_elem = max(worst_elem, abs(lhs - rhs))
    yield CheckResult("pseudo_norm_preservation", worst_norm, 1e-12)
    yield CheckResult("matrix_element_invariance", worst_elem, 1e-11)

    dsq = algebra.max_abs(delta.matrix @ delta.matrix + algebra.identity())
    eta = algebra.eta_metric()
    esq = algebra.max_abs(eta.matrix @ eta.matrix - algebra.identity())
    yield CheckResult("metric_squares", max(dsq, esq), 0.0)


def _ensemble_checks(seed):
    rng = np.random.default_rng(seed + 29)
    eta = algebra.eta_metric()
    worst_round = worst_recon = worst_eq12 = worst_pu = 0.0
    for _ in range(500):
        a = rng.normal()
        b, c = np.abs(rng.normal(size=2)) + 1e-12
        s = ensemble.HSample(a, b, c)
        dec = ensemble.eigenvector_matrix(s)
        a2, b2, c2 = ensemble.invert_map(dec.e_plus, dec.e_minus, dec.r)
        worst_round = max(
            worst_round, abs(a2 - a), abs(b2 - b), abs(c2 - c)
        )
        recon = dec.d @ np.diag([dec.e_plus, dec.e_minus]).astype(complex) @ algebra.inv2(dec.d)
        worst_recon = max(worst_recon, algebra.max_abs(recon - s.matrix))
        eq12 = abs((c / (2.0 * dec.r) + b * dec.r / 2.0) - math.sqrt(b * c))
        worst_eq12 = max(worst_eq12, eq12)
        worst_pu = max(worst_pu, algebra.pseudo_unitarity_residual(dec.d, eta))
    yield CheckResult("ensemble_round_trip", worst_round, 1e-12)
    yield CheckResult("eigen_reconstruction", worst_recon, 1e-12)
    yield CheckResult("eigenvalue_sum_identity", worst_eq12, 1e-12)
    yield CheckResult("eigenvector_pseudo_unitarity", worst_pu, 1e-12)


def _specfun_checks():
    worst = 0.0
    for x, ref in _K0_POINTS:
        worst = max(worst, abs(specfun.bessel_k0(x) - ref) / ref)
    yield CheckResult("k0_reference", worst, 1e-10)

    below = specfun.bessel_k0(np.nextafter(2.0, 0.0))  # ascending-series branch
    above = specfun.bessel_k0(np.nextafter(2.0, 4.0))  # scaled Chebyshev branch
    seam = abs(below - above) / specfun.bessel_k0(2.0)
    yield CheckResult("k0_branch_seam", seam, 1e-11)

    res = specfun.integrate(lambda x: specfun.bessel_k0(x), 0.0, math.inf, 1e-10)
    yield CheckResult("k0_integral", abs(res.value - math.pi / 2.0), 1e-8)

    worst = 0.0
    for z in (0.25, 1.0, 4.0):
        fiber = lambda r, z=z: np.exp(-(z / 2.0) * (r * r + 1.0 / (r * r))) / r
        val = specfun.integrate(fiber, 0.0, math.inf, 1e-10).value
        worst = max(worst, abs(val - specfun.bessel_k0(z)))
    yield CheckResult("k0_fiber_representation", worst, 1e-8)


def _stats_checks():
    worst = 0.0
    for s in (0.1, 0.5, 1.0, 2.0, 4.0):
        for tot in (0.0, 1.0, 2.0, 4.0):
            ep, em = 0.5 * (tot + s), 0.5 * (tot - s)
            ref = stats.jpdf(ep, em, 1.0)
            worst = max(worst, abs(stats.jpdf_oracle(ep, em, 1.0) - ref) / ref)
    yield CheckResult("jpdf_oracle_equivalence", worst, 1e-6)

    worst = 0.0
    for sigma in (0.5, 1.0, 2.0):
        val = specfun.integrate(
            lambda s: stats.spacing_pdf(s, sigma), 0.0, math.inf, 1e-10
        ).value
        worst = max(worst, abs(val - 1.0))
    yield CheckResult("spacing_normalization", worst, 1e-8)

    # integrating the pair density over centers at fixed spacing recovers
    # the spacing law (factor 2: unordered-pair convention)
    worst = 0.0
    for s in (0.5, 1.0, 2.0):
        def over_centers(c0, s=s):
            return np.array(
                [2.0 * stats.jpdf(ci + s / 2.0, ci - s / 2.0, 1.0) for ci in np.atleast_1d(c0)]
            )
        val = specfun.integrate(over_centers, -math.inf, math.inf, 1e-10).value
        worst = max(worst, abs(val - stats.spacing_pdf(s, 1.0)))
    yield CheckResult("spacing_center_consistency", worst, 1e-7)

    ratio4 = stats.spacing_pdf(1e-4, 1.0) * math.pi / (2.0 * 1e-4 * math.log(1e4))
    ratio6 = stats.spacing_pdf(1e-6, 1.0) * math.pi / (2.0 * 1e-6 * math.log(1e6))
    ok = 1.0 <= ratio4 <= 1.15 and 1.0 <= ratio6 < ratio4
    yield CheckResult("small_spacing_law", 0.0 if ok else 1.0, 0.0)

    closed = (4.0 / math.pi) * 2.0 ** -0.5 * math.gamma(0.75) ** 2
    yield CheckResult(
        "mean_spacing_closed_form", abs(stats.mean_spacing(1.0) - closed), 1e-8
    )

    worst = 0.0
    for beta0 in (1, 2):
        norm = specfun.integrate(
            lambda s: stats.wigner_reference(beta0, s), 0.0, math.inf, 1e-10
        ).value
        mean = specfun.integrate(
            lambda s: s * stats.wigner_reference(beta0, s), 0.0, math.inf, 1e-10
        ).value
        worst = max(worst, abs(norm - 1.0), abs(mean - 1.0))
    yield CheckResult("wigner_reference_moments", worst, 1e-8)


def _density_checks():
    sym = abs(stats.level_density(0.7, 1.0, 1e-10) - stats.level_density(-0.7, 1.0, 1e-10))
    yield CheckResult("level_density_symmetry", sym, 1e-9)

    def rho(e):
        return np.array([stats.level_density(float(ei), 1.0, 1e-9) for ei in np.atleast_1d(e)])

    total = specfun.integrate(rho, -math.inf, math.inf, 1e-7).value
    yield CheckResult("level_density_normalization", abs(total - 2.0), 1e-6)


def run_checks(seed: int = 0, overrides=None, include_density: bool = True):
    """Run the verification battery and return a VerifyReport.

    overrides maps check inputs to replacement values; used by tests to
    inject faults (e.g. a perturbed structure-constant table must make
    the "jacobi" check fail).
    """
    overrides = overrides or {}
    checks = []
    checks.extend(_structure_checks(overrides))
    checks.extend(_exponential_checks(seed))
    checks.extend(_invariance_checks(seed))
    checks.extend(_ensemble_checks(seed))
    checks.extend(_specfun_checks())
    checks.extend(_stats_checks())
    if include_density:
        checks.extend(_density_checks())
    return VerifyReport(checks=tuple(checks))
