"""The pseudo-unitary generator algebra and group-axiom checks.

The generator set {I, rho1, rho2, rho3} spans the pseudo-Hermitian
family [[x, -iy], [iz, w]] over the reals.  Structure constants of the
rho commutators are computed (never transcribed) by expanding each
commutator in the full four-element basis and checking that the
identity component vanishes.
"""

from dataclasses import dataclass

import numpy as np

from . import algebra
from .errors import ConsistencyError

DECOMPOSE_TOL = 1e-12
INTEGER_TOL = 1e-10


@dataclass(frozen=True)
class GeneratorSet:
    rho1: np.ndarray
    rho2: np.ndarray
    rho3: np.ndarray
    identity: np.ndarray

    def basis(self):
        """Basis in decomposition order (identity, rho1, rho2, rho3)."""
        return (self.identity, self.rho1, self.rho2, self.rho3)


def generators() -> GeneratorSet:
    """The three generators and the identity."""
    return GeneratorSet(
        rho1=algebra.mat2(1, 0, 1j, -1),
        rho2=algebra.mat2(1, -1j, 0, -1),
        rho3=algebra.mat2(-1, 0, 0, 1),
        identity=algebra.identity(),
    )


# Entries of c0 I + c1 rho1 + c2 rho2 + c3 rho3:
#   [[c0 + c1 + c2 - c3,  -i c2], [i c1,  c0 - c1 - c2 + c3]]
# Coordinates (Re m11, Im m12, Im m21, Re m22) give a real 4x4 system.
_COORD_MATRIX = np.array(
    [
        [1.0, 1.0, 1.0, -1.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [1.0, -1.0, -1.0, 1.0],
    ]
)


def reconstruct(c0, c1, c2, c3) -> np.ndarray:
    """c0 I + c1 rho1 + c2 rho2 + c3 rho3."""
    g = generators()
    return c0 * g.identity + c1 * g.rho1 + c2 * g.rho2 + c3 * g.rho3


def _expand(m, tol):
    coords = np.array(
        [m[0, 0].real, m[0, 1].imag, m[1, 0].imag, m[1, 1].real]
    )
    coeffs = np.linalg.solve(_COORD_MATRIX, coords)
    residual = algebra.max_abs(m - reconstruct(*coeffs))
    if residual > tol:
        raise ValueError(
            f"matrix is outside the real generator span (residual {residual:.3e})"
        )
    return coeffs, residual


def decompose(h, tol: float = DECOMPOSE_TOL):
    """Unique real coefficients (c0, c1, c2, c3) of H in the generator basis.

    Raises ValueError when H does not lie in the span, i.e. is not of
    the form [[x, -iy], [iz, w]] with x, y, z, w real.
    """
    h = np.asarray(h, dtype=complex)
    coeffs, _ = _expand(h, tol)
    return tuple(float(v) for v in coeffs)


@dataclass(frozen=True)
class StructureConstants:
    """C[i, j, k] with [rho_i, rho_j] = sum_k C[i, j, k] rho_k (0-based)."""

    table: np.ndarray

    def __getitem__(self, idx):
        return int(self.table[idx])


def structure_constants() -> StructureConstants:
    """Expand all nine commutators [rho_i, rho_j] in the generator basis.

    The identity component of each expansion must vanish and the rho
    coefficients must be integers; violations raise ConsistencyError.
    """
    g = generators()
    rhos = (g.rho1, g.rho2, g.rho3)
    table = np.zeros((3, 3, 3), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            comm = rhos[i] @ rhos[j] - rhos[j] @ rhos[i]
            try:
                coeffs, _ = _expand(comm, DECOMPOSE_TOL)
            except ValueError as exc:
                raise ConsistencyError(
                    f"commutator [rho{i+1}, rho{j+1}] left the generator span"
                ) from exc
            if abs(coeffs[0]) > DECOMPOSE_TOL:
                raise ConsistencyError(
                    f"commutator [rho{i+1}, rho{j+1}] has identity component "
                    f"{coeffs[0]:.3e}"
                )
            rounded = np.rint(coeffs[1:])
            if np.abs(coeffs[1:] - rounded).max() > INTEGER_TOL:
                raise ConsistencyError(
                    f"non-integer structure constants for [rho{i+1}, rho{j+1}]: "
                    f"{coeffs[1:]}"
                )
            table[i, j] = rounded.astype(np.int64)
    return StructureConstants(table)


def check_jacobi(c: StructureConstants) -> int:
    """Max |cyclic Jacobi sum| over all index tuples; 0 for a Lie algebra.

    Exact integer arithmetic, so the result is an exact residual.
    """
    t = c.table
    s1 = np.einsum("klm,jms->kljs", t, t)
    s2 = np.einsum("ljm,kms->kljs", t, t)
    s3 = np.einsum("jkm,lms->kljs", t, t)
    return int(np.abs(s1 + s2 + s3).max())


def exp_i_h_batch(a, b, c):
    """exp(i H(a, b, c)) for arrays of parameters, as an (n, 2, 2) stack.

    Closed form: iH = ia I + N with N = [[0, b], [-c, 0]], so
    exp(iH) = e^{ia} (cosh(mu) I + sinh(mu)/mu N), mu^2 = -bc.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    musq = -(b * c).astype(complex)
    mu = np.sqrt(musq)
    ch = np.cosh(mu)
    small = np.abs(musq) < 1e-8
    with np.errstate(invalid="ignore", divide="ignore"):
        sc = np.where(small, 1.0 + musq / 6.0 * (1.0 + musq / 20.0), np.sinh(mu) / mu)
    phase = np.exp(1j * a)
    out = np.empty(a.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = phase * ch
    out[..., 0, 1] = phase * sc * b
    out[..., 1, 0] = -phase * sc * c
    out[..., 1, 1] = phase * ch
    return out


def _pu_residual_batch(d, eta):
    gram = np.einsum("...ji,jk,...kl->...il", d.conj(), eta.matrix, d)
    return np.abs(gram - eta.matrix).max(axis=(-2, -1))


def draw_family_parameters(n, seed, scale=1.0, bound=5.0):
    """n seeded Gaussian draws of (a, b, c), redrawn to satisfy |.| <= bound."""
    rng = np.random.default_rng(seed)
    vals = rng.normal(0.0, scale, size=(n, 3))
    bad = np.abs(vals) > bound
    while bad.any():
        vals[bad] = rng.normal(0.0, scale, size=int(bad.sum()))
        bad = np.abs(vals) > bound
    return vals[:, 0], vals[:, 1], vals[:, 2]


@dataclass(frozen=True)
class GroupAxiomReport:
    """Residuals from the group-axiom battery on sampled exp(iG)."""

    n_samples: int
    n_pairs: int
    n_triples: int
    seed: int
    unitarity_residual: float
    closure_residual: float
    inverse_residual: float
    identity_residual: float
    associativity_residual: float
    unimodularity_residual: float

    @property
    def max_residual(self) -> float:
        return max(
            self.unitarity_residual,
            self.closure_residual,
            self.inverse_residual,
            self.identity_residual,
            self.associativity_residual,
            self.unimodularity_residual,
        )

    def to_dict(self):
        return {
            "n_samples": self.n_samples,
            "n_pairs": self.n_pairs,
            "n_triples": self.n_triples,
            "seed": self.seed,
            "unitarity_residual": self.unitarity_residual,
            "closure_residual": self.closure_residual,
            "inverse_residual": self.inverse_residual,
            "identity_residual": self.identity_residual,
            "associativity_residual": self.associativity_residual,
            "unimodularity_residual": self.unimodularity_residual,
            "max_residual": self.max_residual,
        }


def check_group_axioms(
    eta: algebra.Metric,
    n_samples: int,
    seed: int = 0,
    scale: float = 1.0,
    bound: float = 5.0,
    max_pairs: int = 1 << 20,
    n_triples: int = 2000,
) -> GroupAxiomReport:
    """Verify closure, inverses, identity and associativity on samples.

    Draws n_samples pseudo-Hermitian generators, exponentiates, and
    measures the worst residual of each axiom.  All ordered pairs are
    checked when n_samples^2 <= max_pairs, otherwise a seeded subset.
    """
    if n_samples < 0:
        raise ValueError("n_samples must be non-negative")
    ident_res = algebra.pseudo_unitarity_residual(algebra.identity(), eta)
    if n_samples == 0:
        return GroupAxiomReport(0, 0, 0, seed, 0.0, 0.0, 0.0, ident_res, 0.0, 0.0)

    a, b, c = draw_family_parameters(n_samples, seed, scale, bound)
    d = exp_i_h_batch(a, b, c)

    unitarity = float(_pu_residual_batch(d, eta).max())

    dets = d[:, 0, 0] * d[:, 1, 1] - d[:, 0, 1] * d[:, 1, 0]
    unimodularity = float(np.abs(np.abs(dets) - 1.0).max())

    inv = np.empty_like(d)
    inv[:, 0, 0] = d[:, 1, 1]
    inv[:, 0, 1] = -d[:, 0, 1]
    inv[:, 1, 0] = -d[:, 1, 0]
    inv[:, 1, 1] = d[:, 0, 0]
    inv /= dets[:, None, None]
    inverse = float(_pu_residual_batch(inv, eta).max())

    rng = np.random.default_rng(seed + 1)
    if n_samples * n_samples <= max_pairs:
        ii, jj = np.meshgrid(np.arange(n_samples), np.arange(n_samples), indexing="ij")
        ii, jj = ii.ravel(), jj.ravel()
    else:
        ii = rng.integers(0, n_samples, size=max_pairs)
        jj = rng.integers(0, n_samples, size=max_pairs)
    closure = 0.0
    chunk = 65536
    for k in range(0, len(ii), chunk):
        prod = np.einsum("nij,njk->nik", d[ii[k : k + chunk]], d[jj[k : k + chunk]])
        closure = max(closure, float(_pu_residual_batch(prod, eta).max()))

    ti = rng.integers(0, n_samples, size=n_triples)
    tj = rng.integers(0, n_samples, size=n_triples)
    tk = rng.integers(0, n_samples, size=n_triples)
    left = np.einsum(
        "nij,njk->nik", np.einsum("nij,njk->nik", d[ti], d[tj]), d[tk]
    )
    right = np.einsum(
        "nij,njk->nik", d[ti], np.einsum("nij,njk->nik", d[tj], d[tk])
    )
    associativity = float(np.abs(left - right).max())

    return GroupAxiomReport(
        n_samples=n_samples,
        n_pairs=len(ii),
        n_triples=n_triples,
        seed=seed,
        unitarity_residual=unitarity,
        closure_residual=closure,
        inverse_residual=inverse,
        identity_residual=ident_res,
        associativity_residual=associativity,
        unimodularity_residual=unimodularity,
    )
