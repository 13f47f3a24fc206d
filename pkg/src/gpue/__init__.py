"""Gaussian pseudo-unitary ensemble toolkit.

2x2 pseudo-Hermitian random matrices: group algebra of the underlying
pseudo-unitary symmetry, counter-seeded ensemble sampling, and the
exact spectral statistics (joint eigenvalue density, level density,
and the S K0(S^2/4 sigma^2) spacing law), with Monte Carlo
cross-validation of every closed form.
"""

from . import algebra, backends, ensemble, group, specfun, stats, verify
from .backends import BACKEND_NAME, HAVE_COMPILED
from .ensemble import (
    ConjugatePair,
    CounterStream,
    EigenDecomposition,
    GpueParams,
    HSample,
    RealPair,
    eigenvalues,
    eigenvector_matrix,
    gaussian_weight,
    invert_map,
    jacobian,
    sample,
    sample_batch,
)
from .errors import ConsistencyError, ConvergenceError, GpueError, StatisticsError
from .specfun import QuadratureResult, bessel_k0, integrate
from .stats import (
    ComparisonReport,
    Histogram,
    jpdf,
    jpdf_oracle,
    level_density,
    mc_level_density,
    mc_spacing,
    mean_spacing,
    spacing_pdf,
    wigner_reference,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "HAVE_COMPILED",
    "ComparisonReport",
    "ConjugatePair",
    "ConsistencyError",
    "ConvergenceError",
    "CounterStream",
    "EigenDecomposition",
    "GpueError",
    "GpueParams",
    "HSample",
    "Histogram",
    "QuadratureResult",
    "RealPair",
    "StatisticsError",
    "algebra",
    "backends",
    "bessel_k0",
    "eigenvalues",
    "eigenvector_matrix",
    "ensemble",
    "gaussian_weight",
    "group",
    "integrate",
    "invert_map",
    "jacobian",
    "jpdf",
    "jpdf_oracle",
    "level_density",
    "mc_level_density",
    "mc_spacing",
    "mean_spacing",
    "sample",
    "sample_batch",
    "spacing_pdf",
    "specfun",
    "stats",
    "verify",
    "wigner_reference",
]
