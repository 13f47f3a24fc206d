"""Spectral statistics of the pseudo-unitary ensemble.

Closed forms
------------
jpdf           joint density of the two real eigenvalues,
               |s| K0(s^2/4sig^2) exp(-(sum)^2/4sig^2) / (2 (pi sig^2)^1.5),
               s = E+ - E-.  Read as a density on unordered pairs: it is
               symmetric, carries total mass 1 over the whole plane, and
               mass 1/2 on the ordered wedge, matching the probability
               1/2 of a real spectrum.
spacing_pdf    nearest-neighbour spacing law (S / pi sig^2) K0(S^2/4sig^2),
               normalized to 1 over S >= 0; behaves like S log(1/S) near
               zero spacing.

Monte Carlo estimators condition on the real-spectrum sector (bc >= 0,
probability 1/2) and report the rejected fraction; that conditioning is
the unique one under which the normalized spacing law and the sampler
agree.  Histograms are accumulated in fixed 65536-sample chunks and
merged in chunk order, so results are bit-identical for any worker
count.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import backends, specfun
from .ensemble import GpueParams
from .errors import StatisticsError

CHUNK = 1 << 16

_SQRT_PI = math.sqrt(math.pi)


def jpdf(e_plus: float, e_minus: float, sigma: float) -> float:
    """Joint eigenvalue density at (E+, E-); zero on the diagonal."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    s = abs(e_plus - e_minus)
    if s == 0.0:
        return 0.0
    sig2 = sigma * sigma
    pref = s / (2.0 * (math.pi * sig2) ** 1.5)
    return (
        pref
        * specfun.bessel_k0(s * s / (4.0 * sig2))
        * math.exp(-((e_plus + e_minus) ** 2) / (4.0 * sig2))
    )


def jpdf_oracle(e_plus: float, e_minus: float, sigma: float, tol: float = 1e-10) -> float:
    """Brute-force marginal over the eigenvector ratio r.

    Integrates the parameter-space density along the fiber
    (a, b, c) = ((E+ + E-)/2, s/2r, rs/2) weighted by the Jacobian
    s/2r, doubled for the two real-spectrum quadrants.  Independent of
    the Bessel closed form in jpdf.
    """
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    if e_plus == e_minus:
        raise ValueError("oracle is defined for distinct eigenvalues")
    a = 0.5 * (e_plus + e_minus)
    s = abs(e_plus - e_minus)
    sig2 = sigma * sigma
    pref = 1.0 / (2.0 * (math.pi * sig2) ** 1.5)

    def fiber(r):
        r = np.asarray(r, dtype=np.float64)
        b = s / (2.0 * r)
        c = 0.5 * r * s
        w = np.exp(-(2.0 * a * a + b * b + c * c) / (2.0 * sig2))
        return 2.0 * pref * w * s / (2.0 * r)

    return specfun.integrate(fiber, 0.0, math.inf, tol).value


def spacing_pdf(s, sigma: float):
    """Spacing density (S / pi sig^2) K0(S^2 / 4 sig^2) on S >= 0."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    sig2 = sigma * sigma
    if np.ndim(s) == 0:
        s = float(s)
        if s < 0:
            raise ValueError("spacing must be non-negative")
        if s == 0.0:
            return 0.0
        return (s / (math.pi * sig2)) * specfun.bessel_k0(s * s / (4.0 * sig2))
    s = np.asarray(s, dtype=np.float64)
    if (s < 0).any():
        raise ValueError("spacing must be non-negative")
    out = np.zeros_like(s)
    pos = s > 0
    sp = s[pos]
    out[pos] = (sp / (math.pi * sig2)) * specfun.bessel_k0(sp * sp / (4.0 * sig2))
    return out


def mean_spacing(sigma: float) -> float:
    """First moment of the spacing law; proportional to sigma."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    res = specfun.integrate(
        lambda s: s * spacing_pdf(s, sigma), 0.0, math.inf, 1e-11
    )
    return res.value


def _jpdf_line(e, x, sigma):
    """jpdf(e, x, sigma) vectorized over the partner eigenvalue x."""
    x = np.asarray(x, dtype=np.float64)
    sig2 = sigma * sigma
    s = np.abs(e - x)
    out = np.zeros_like(x)
    pos = s > 0
    sp = s[pos]
    out[pos] = (
        sp
        / (2.0 * (math.pi * sig2) ** 1.5)
        * specfun.bessel_k0(sp * sp / (4.0 * sig2))
        * np.exp(-((e + x[pos]) ** 2) / (4.0 * sig2))
    )
    return out


def level_density(e: float, sigma: float, tol: float = 1e-9) -> float:
    """Density of levels at energy e, normalized so the integral is 2.

    The integrand has a logarithmic kink at the coincident eigenvalue,
    so the line is integrated separately on each side of e.
    """
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    f = lambda x: _jpdf_line(e, x, sigma)
    lo = specfun.integrate(f, -math.inf, e, tol / 2)
    hi = specfun.integrate(f, e, math.inf, tol / 2)
    return 2.0 * (lo.value + hi.value)


def wigner_reference(beta0: int, s):
    """Unit-mean Wigner surmise density for the orthogonal or unitary class."""
    s = np.asarray(s, dtype=np.float64) if np.ndim(s) else float(s)
    if np.any(np.asarray(s) < 0):
        raise ValueError("spacing must be non-negative")
    if beta0 == 1:
        return (math.pi / 2.0) * s * np.exp(-(math.pi / 4.0) * s * s)
    if beta0 == 2:
        return (32.0 / math.pi ** 2) * s * s * np.exp(-(4.0 / math.pi) * s * s)
    raise ValueError("beta0 must be 1 (orthogonal) or 2 (unitary)")


@dataclass(frozen=True)
class Histogram:
    """Fixed-width histogram; density integrates to 1 by construction."""

    edges: np.ndarray
    counts: np.ndarray

    def __post_init__(self):
        if len(self.edges) != len(self.counts) + 1:
            raise ValueError("edges must have one more entry than counts")

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def density(self) -> np.ndarray:
        total = self.total
        if total == 0:
            return np.zeros_like(self.widths)
        return self.counts / (total * self.widths)


@dataclass(frozen=True)
class ComparisonReport:
    """Per-bin agreement of an empirical histogram with an analytic curve."""

    sup_deviation: float
    z_scores: np.ndarray
    fraction_within_3sigma: float
    rejected_fraction: float
    n_samples: int
    n_accepted: int

    def to_dict(self):
        return {
            "sup_deviation": self.sup_deviation,
            "z_scores": [float(z) for z in self.z_scores],
            "fraction_within_3sigma": self.fraction_within_3sigma,
            "rejected_fraction": self.rejected_fraction,
            "n_samples": self.n_samples,
            "n_accepted": self.n_accepted,
        }


@dataclass(frozen=True)
class McSpacingResult:
    histogram: Histogram
    report: ComparisonReport
    sum_spacing: float
    sum_spacing_sq: float

    @property
    def mean_spacing(self) -> float:
        if self.report.n_accepted == 0:
            return math.nan
        return self.sum_spacing / self.report.n_accepted


def _chunk_ranges(n):
    return [(start, min(CHUNK, n - start)) for start in range(0, n, CHUNK)]


def _run_chunks(task, n, workers):
    """Evaluate task(start, count) for fixed chunks; reduce in chunk order."""
    ranges = _chunk_ranges(n)
    if workers is None or workers <= 1 or len(ranges) <= 1:
        return [task(start, count) for start, count in ranges]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(task, start, count) for start, count in ranges]
        return [f.result() for f in futures]


def _bin_probabilities(density, edges, tol=1e-11):
    probs = np.empty(len(edges) - 1)
    for i in range(len(probs)):
        probs[i] = specfun.integrate(density, edges[i], edges[i + 1], tol).value
    return probs


def _binomial_z_scores(counts, trials, probs):
    expected = trials * probs
    var = trials * probs * (1.0 - probs)
    z = np.zeros_like(expected)
    ok = var > 0
    z[ok] = (counts[ok] - expected[ok]) / np.sqrt(var[ok])
    z[~ok] = np.where(counts[~ok] == 0, 0.0, math.inf)
    return z


def mc_spacing(
    params: GpueParams,
    n: int,
    bins: int = 100,
    smax: float = None,
    seed: int = 0,
    workers: int = None,
    kernels=None,
) -> McSpacingResult:
    """Monte Carlo spacing histogram with per-bin binomial z-scores.

    Draws n samples, discards complex-spectrum draws, histograms
    S = E+ - E- of the accepted ones on [0, smax), and compares against
    the analytic spacing law.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if bins < 1:
        raise ValueError("bins must be at least 1")
    if smax is None:
        smax = 5.0 * params.sigma
    if not smax > 0:
        raise ValueError("smax must be positive")
    kern = kernels if kernels is not None else backends.active

    def task(start, count):
        return kern.spacing_chunk(seed, start, count, params.sigma, 0.0, smax, bins)

    counts = np.zeros(bins, dtype=np.int64)
    n_acc = 0
    sum_s = 0.0
    sum_s2 = 0.0
    for ch_counts, ch_acc, ch_sum, ch_sum2 in _run_chunks(task, n, workers):
        counts += ch_counts
        n_acc += ch_acc
        sum_s += ch_sum
        sum_s2 += ch_sum2
    if n_acc == 0:
        raise StatisticsError("no real-spectrum samples were accepted")

    edges = np.linspace(0.0, smax, bins + 1)
    hist = Histogram(edges=edges, counts=counts)
    probs = _bin_probabilities(lambda s: spacing_pdf(s, params.sigma), edges)
    z = _binomial_z_scores(counts, n_acc, probs)
    analytic = spacing_pdf(hist.centers, params.sigma)
    report = ComparisonReport(
        sup_deviation=float(np.abs(hist.density - analytic).max()),
        z_scores=z,
        fraction_within_3sigma=float(np.mean(np.abs(z) <= 3.0)),
        rejected_fraction=(n - n_acc) / n,
        n_samples=n,
        n_accepted=n_acc,
    )
    return McSpacingResult(hist, report, sum_s, sum_s2)


def spacing_histogram(a, b, c, bins: int, smax: float) -> Histogram:
    """Histogram of spacings for explicitly given parameter arrays.

    Same binning semantics as the sampling kernels; useful for feeding
    hand-constructed draws through the estimator path.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    bc = b * c
    s = 2.0 * np.sqrt(bc[bc >= 0.0])
    scale = bins / smax
    mask = (s >= 0.0) & (s < smax)
    idx = (s[mask] * scale).astype(np.int64)
    idx = idx[idx < bins]
    counts = np.bincount(idx, minlength=bins).astype(np.int64)
    return Histogram(edges=np.linspace(0.0, smax, bins + 1), counts=counts)


@dataclass(frozen=True)
class McDensityResult:
    histogram: Histogram
    report: ComparisonReport


def mc_level_density(
    params: GpueParams,
    n: int,
    bins: int = 100,
    emax: float = None,
    seed: int = 0,
    workers: int = None,
    kernels=None,
    band_tol: float = 1e-8,
) -> McDensityResult:
    """Histogram of all real eigenvalues of accepted draws on [-emax, emax).

    The comparison curve is the per-level density (half the level
    density), whose per-bin masses give binomial bands on 2 * n_accepted
    eigenvalue draws.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if emax is None:
        emax = 4.0 * params.sigma
    if not emax > 0:
        raise ValueError("emax must be positive")
    kern = kernels if kernels is not None else backends.active

    def task(start, count):
        return kern.eigenvalue_chunk(
            seed, start, count, params.sigma, -emax, emax, bins
        )

    counts = np.zeros(bins, dtype=np.int64)
    n_acc = 0
    for ch_counts, ch_acc in _run_chunks(task, n, workers):
        counts += ch_counts
        n_acc += ch_acc
    if n_acc == 0:
        raise StatisticsError("no real-spectrum samples were accepted")

    edges = np.linspace(-emax, emax, bins + 1)
    hist = Histogram(edges=edges, counts=counts)

    def per_level(e):
        return np.array(
            [0.5 * level_density(float(ei), params.sigma, band_tol) for ei in np.atleast_1d(e)]
        )

    probs = _bin_probabilities(per_level, edges, tol=band_tol)
    z = _binomial_z_scores(counts, 2 * n_acc, probs)
    analytic = per_level(hist.centers)
    report = ComparisonReport(
        sup_deviation=float(np.abs(hist.density - analytic).max()),
        z_scores=z,
        fraction_within_3sigma=float(np.mean(np.abs(z) <= 3.0)),
        rejected_fraction=(n - n_acc) / n,
        n_samples=n,
        n_accepted=n_acc,
    )
    return McDensityResult(hist, report)
