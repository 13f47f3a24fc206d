"""Complex 2x2 linear algebra with indefinite metrics.

Matrices are plain (2, 2) complex numpy arrays.  The functions here
implement the pseudo-adjoint calculus: for an invertible metric eta,
the pseudo-adjoint of A is eta^-1 A^dagger eta, A is pseudo-Hermitian
when it equals its pseudo-adjoint, and D is pseudo-unitary when
D^dagger eta D = eta.  All tolerance checks use the maximum entrywise
modulus, which is basis-stable at this fixed size.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-10

_I2 = np.eye(2, dtype=complex)


def mat2(m11, m12, m21, m22) -> np.ndarray:
    """Build a 2x2 complex matrix from its entries (row major)."""
    return np.array([[m11, m12], [m21, m22]], dtype=complex)


def identity() -> np.ndarray:
    return _I2.copy()


def h_matrix(a: float, b: float, c: float) -> np.ndarray:
    """The pseudo-Hermitian family [[a, -ib], [ic, a]] with a, b, c real."""
    return np.array([[a, -1j * b], [1j * c, a]], dtype=complex)


def det2(m) -> complex:
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def inv2(m) -> np.ndarray:
    """Inverse by adjugate; raises ValueError on a singular matrix."""
    d = det2(m)
    if d == 0 or not np.isfinite(abs(d)):
        raise ValueError("matrix is singular")
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=complex) / d


def adjoint(m) -> np.ndarray:
    return m.conj().T


def max_abs(m) -> float:
    """Maximum entrywise modulus, the norm used for all residuals."""
    return float(np.abs(m).max())


@dataclass(frozen=True)
class Metric:
    """An invertible matrix defining the indefinite inner product <x|eta y>."""

    matrix: np.ndarray
    name: str = "custom"
    inverse: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        try:
            inv = inv2(self.matrix)
        except ValueError:
            raise ValueError(f"metric {self.name!r} is singular") from None
        object.__setattr__(self, "inverse", inv)


def delta_metric() -> Metric:
    """The antisymmetric metric [[0, -1], [1, 0]]; squares to -I."""
    return Metric(mat2(0, -1, 1, 0), name="delta")


def eta_metric() -> Metric:
    """The off-diagonal symmetric metric [[0, 1], [1, 0]]; squares to I."""
    return Metric(mat2(0, 1, 1, 0), name="eta")


def identity_metric() -> Metric:
    return Metric(identity(), name="identity")


def pseudo_adjoint(a, eta: Metric) -> np.ndarray:
    """eta^-1 A^dagger eta; equals A exactly when A is pseudo-Hermitian."""
    return eta.inverse @ adjoint(a) @ eta.matrix


def is_pseudo_hermitian(a, eta: Metric, tol: float = DEFAULT_TOL) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return max_abs(pseudo_adjoint(a, eta) - a) <= tol


def is_pseudo_unitary(d, eta: Metric, tol: float = DEFAULT_TOL) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return pseudo_unitarity_residual(d, eta) <= tol


def pseudo_unitarity_residual(d, eta: Metric) -> float:
    """max-entry norm of D^dagger eta D - eta."""
    return max_abs(adjoint(d) @ eta.matrix @ d - eta.matrix)


def pseudo_inner(x, y, eta: Metric) -> complex:
    """<x | eta y> = x^dagger (eta y)."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    return complex(x.conj() @ (eta.matrix @ y))


def antilinear_symmetry_residual(h, m) -> float:
    """Deviation of H from invariance under v -> M conj(v).

    Returns the max-entry norm of M conj(H) M^-1 - H; zero means the
    antilinear map commutes with H.
    """
    m = np.asarray(m, dtype=complex)
    return max_abs(m @ np.asarray(h).conj() @ inv2(m) - h)


def _sinhc(musq: complex) -> complex:
    # sinh(mu)/mu as an even function of mu, so the sqrt branch is irrelevant
    if abs(musq) < 1e-8:
        return 1.0 + musq / 6.0 * (1.0 + musq / 20.0 * (1.0 + musq / 42.0))
    mu = cmath.sqrt(musq)
    return cmath.sinh(mu) / mu


def expm(a) -> np.ndarray:
    """Matrix exponential of a 2x2 complex matrix (closed form).

    Splits A = alpha I + N with N traceless; N^2 = -det(N) I, so
    exp(A) = e^alpha (cosh(mu) I + sinh(mu)/mu N) with mu^2 = -det(N).
    Entrywise accuracy is a few ulp, which keeps pseudo-unitarity
    residuals of exp(iG) near the representation floor even for large
    hyperbolic growth.
    """
    a = np.asarray(a, dtype=complex)
    alpha = 0.5 * (a[0, 0] + a[1, 1])
    n = a - alpha * _I2
    musq = -det2(n)
    ch = cmath.cosh(cmath.sqrt(musq))
    sc = _sinhc(musq)
    return cmath.exp(alpha) * (ch * _I2 + sc * n)


def expm_taylor(a, max_terms: int = 64) -> np.ndarray:
    """Matrix exponential by scaling and squaring on a truncated series.

    Reference path for cross-validation of expm(); slower and slightly
    less accurate after repeated squaring.
    """
    a = np.asarray(a, dtype=complex)
    norm = max_abs(a)
    squarings = max(0, math.ceil(math.log2(norm / 0.25))) if norm > 0.25 else 0
    b = a / (2.0 ** squarings)
    term = _I2.copy()
    total = _I2.copy()
    for k in range(1, max_terms):
        term = term @ b / k
        total = total + term
        if max_abs(term) < 1e-20 * max_abs(total):
            break
    for _ in range(squarings):
        total = total @ total
    return total
