"""Sampling of the Gaussian pseudo-unitary ensemble and its spectra.

A draw is a real triple (a, b, c) carrying the matrix [[a, -ib], [ic, a]]
under the weight exp(-(2a^2 + b^2 + c^2) / 2 sigma^2), i.e. independent
marginals a ~ N(0, sigma^2/2) and b, c ~ N(0, sigma^2).  Eigenvalues are
a +- sqrt(bc): real for bc >= 0, a conjugate pair otherwise.

Randomness is counter based (see gpue._pykernels): sample i is a pure
function of (seed, i), so runs are reproducible for any worker count.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import algebra, backends
from .errors import ConsistencyError


@dataclass(frozen=True)
class GpueParams:
    """Ensemble scale sigma of the Gaussian weight."""

    sigma: float = 1.0

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError("sigma must be positive and finite")


@dataclass(frozen=True)
class RealPair:
    e_plus: float
    e_minus: float

    @property
    def is_real(self) -> bool:
        return True

    @property
    def spacing(self) -> float:
        return self.e_plus - self.e_minus


@dataclass(frozen=True)
class ConjugatePair:
    re: float
    im: float

    @property
    def is_real(self) -> bool:
        return False


Spectrum = Union[RealPair, ConjugatePair]


def classify(a: float, b: float, c: float) -> Spectrum:
    """Spectrum of [[a, -ib], [ic, a]] from the sign of bc."""
    bc = b * c
    if bc >= 0.0:
        root = math.sqrt(bc)
        return RealPair(a + root, a - root)
    return ConjugatePair(a, math.sqrt(-bc))


@dataclass(frozen=True)
class HSample:
    """One ensemble draw with its matrix and spectral classification."""

    a: float
    b: float
    c: float

    @property
    def matrix(self) -> np.ndarray:
        return algebra.h_matrix(self.a, self.b, self.c)

    @property
    def spectrum(self) -> Spectrum:
        return classify(self.a, self.b, self.c)


def eigenvalues(sample: HSample) -> Spectrum:
    """Closed-form eigenvalues a +- sqrt(bc) of the sample's matrix."""
    return classify(sample.a, sample.b, sample.c)


class CounterStream:
    """Sequential view of the counter-based random stream.

    Each sample index consumes four fixed uniforms which are turned into
    three Gaussian deviates by Box-Muller; the mapping is part of the
    file-format contract and must match the batch kernels.
    """

    def __init__(self, seed: int, start: int = 0):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.index = int(start)

    def _uniform(self, counter: int) -> float:
        mask = 0xFFFFFFFFFFFFFFFF
        z = (self.seed + ((counter + 1) * 0x9E3779B97F4A7C15 & mask)) & mask
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        z ^= z >> 31
        return ((z >> 11) + 0.5) * 2.0 ** -53

    def normals3(self):
        """Advance one index; return three standard normal deviates."""
        base = 4 * self.index
        u0 = self._uniform(base)
        u1 = self._uniform(base + 1)
        u2 = self._uniform(base + 2)
        u3 = self._uniform(base + 3)
        self.index += 1
        r1 = math.sqrt(-2.0 * math.log(u0))
        z0 = r1 * math.cos(2.0 * math.pi * u1)
        z1 = r1 * math.sin(2.0 * math.pi * u1)
        z2 = math.sqrt(-2.0 * math.log(u2)) * math.cos(2.0 * math.pi * u3)
        return z0, z1, z2


def sample(params: GpueParams, rng: CounterStream) -> HSample:
    """Draw the next ensemble sample from the stream."""
    z0, z1, z2 = rng.normals3()
    return HSample(
        a=(params.sigma / math.sqrt(2.0)) * z0,
        b=params.sigma * z1,
        c=params.sigma * z2,
    )


def sample_batch(params: GpueParams, n: int, seed: int, start: int = 0, kernels=None):
    """Arrays (a, b, c) for sample indices start..start+n-1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    kern = kernels if kernels is not None else backends.active
    return kern.sample_abc(seed, start, n, params.sigma)


@dataclass(frozen=True)
class EigenDecomposition:
    """Normalized eigenvector matrix and eigenvalues on the b, c > 0 quadrant."""

    e_plus: float
    e_minus: float
    r: float
    d: np.ndarray


def eigenvector_matrix(sample: HSample) -> EigenDecomposition:
    """Eigenvector matrix D = (1/sqrt 2) [[1, i/r], [ir, 1]], r = sqrt(c/b).

    Defined for b > 0 and c > 0; the opposite real-spectrum quadrant is
    reached by the sign map (b, c) -> (-b, -c), which leaves the
    eigenvalues unchanged.  The 1/sqrt 2 normalization makes D strictly
    pseudo-unitary for the off-diagonal symmetric metric (the
    unnormalized matrix has determinant 2 and maps eta to 2 eta).
    """
    if not (sample.b > 0 and sample.c > 0):
        raise ValueError("eigenvector_matrix requires b > 0 and c > 0")
    r = math.sqrt(sample.c / sample.b)
    d = algebra.mat2(1, 1j / r, 1j * r, 1) / math.sqrt(2.0)
    spec = classify(sample.a, sample.b, sample.c)
    return EigenDecomposition(e_plus=spec.e_plus, e_minus=spec.e_minus, r=r, d=d)


def invert_map(e_plus: float, e_minus: float, r: float):
    """(a, b, c) reached from eigenvalues and eigenvector ratio r > 0."""
    if not r > 0:
        raise ValueError("r must be positive")
    spacing = e_plus - e_minus
    return (
        0.5 * (e_plus + e_minus),
        spacing / (2.0 * r),
        0.5 * r * spacing,
    )


def jacobian(e_plus: float, e_minus: float, r: float) -> float:
    """|d(a,b,c)/d(E+,E-,r)| = |E+ - E-| / (2r)."""
    if not r > 0:
        raise ValueError("r must be positive")
    return abs(e_plus - e_minus) / (2.0 * r)


def trace_form(sample: HSample) -> float:
    """tr(H^dagger H) computed from the matrix entries."""
    m = sample.matrix
    return float(np.sum(np.abs(m) ** 2))


def gaussian_weight(sample: HSample, params: GpueParams) -> float:
    """Normalized density of (a, b, c) under the ensemble weight.

    Cross-checks that the quadratic form 2a^2 + b^2 + c^2 agrees with
    tr(H^dagger H) before evaluating.
    """
    quad = 2.0 * sample.a ** 2 + sample.b ** 2 + sample.c ** 2
    if abs(quad - trace_form(sample)) > 1e-12 * max(1.0, quad):
        raise ConsistencyError("tr(H^dagger H) disagrees with 2a^2 + b^2 + c^2")
    sig2 = params.sigma ** 2
    norm = 2.0 * (math.pi * sig2) ** 1.5
    return math.exp(-quad / (2.0 * sig2)) / norm
