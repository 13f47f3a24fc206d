"""Pure-Python (numpy) implementations of the hot kernels.

This is the fallback lane used when the compiled extension is not
available; `gpue._kernels` implements the same functions in Cython.
Both lanes implement bit-identical integer RNG streams; floating-point
outputs agree to a few ulp (libm vs numpy transcendentals).

The random stream is counter based: uniform j of sample i depends only
on (seed, 4*i + j), so disjoint index ranges can be generated on any
number of workers with identical results.
"""

import math

import numpy as np

from ._k0_table import K0_TAIL_CHEB

NAME = "python"

# splitmix64 constants
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_INV53 = 2.0 ** -53

_EULER_GAMMA = 0.5772156649015328606

_CHEB = np.array(K0_TAIL_CHEB)


def mix64(z):
    """splitmix64 finalizer on uint64 arrays (wrapping arithmetic)."""
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def uniforms(seed, counters):
    """Uniforms in (0, 1) for an array of uint64 counters."""
    z = mix64(np.uint64(seed) + (counters + np.uint64(1)) * _GAMMA)
    return ((z >> np.uint64(11)).astype(np.float64) + 0.5) * _INV53


def sample_abc(seed, start, n, sigma):
    """Draw samples start..start+n-1 of the matrix parameters (a, b, c).

    a ~ N(0, sigma^2/2), b, c ~ N(0, sigma^2), via Box-Muller on four
    counter-indexed uniforms per sample.
    """
    idx = np.arange(start, start + n, dtype=np.uint64)
    base = idx * np.uint64(4)
    u0 = uniforms(seed, base)
    u1 = uniforms(seed, base + np.uint64(1))
    u2 = uniforms(seed, base + np.uint64(2))
    u3 = uniforms(seed, base + np.uint64(3))
    r1 = np.sqrt(-2.0 * np.log(u0))
    a = (sigma / math.sqrt(2.0)) * (r1 * np.cos(2.0 * math.pi * u1))
    b = sigma * (r1 * np.sin(2.0 * math.pi * u1))
    c = sigma * (np.sqrt(-2.0 * np.log(u2)) * np.cos(2.0 * math.pi * u3))
    return a, b, c


def _bin_counts(values, lo, hi, nbins):
    # same truncation semantics as the C lane: idx = (int)((v - lo) * scale)
    scale = nbins / (hi - lo)
    mask = (values >= lo) & (values < hi)
    idx = ((values[mask] - lo) * scale).astype(np.int64)
    idx = idx[(idx >= 0) & (idx < nbins)]
    return np.bincount(idx, minlength=nbins).astype(np.int64)


def spacing_chunk(seed, start, n, sigma, lo, hi, nbins):
    """Histogram of spacings S = 2 sqrt(bc) for real-spectrum draws.

    Returns (counts, n_accepted, sum_s, sum_s2); draws with bc < 0 are
    rejected.  Accepted spacings outside [lo, hi) still contribute to
    the moment sums.
    """
    a, b, c = sample_abc(seed, start, n, sigma)
    bc = b * c
    acc = bc >= 0.0
    s = 2.0 * np.sqrt(bc[acc])
    counts = _bin_counts(s, lo, hi, nbins)
    return counts, int(acc.sum()), float(s.sum()), float((s * s).sum())


def eigenvalue_chunk(seed, start, n, sigma, lo, hi, nbins):
    """Histogram of both real eigenvalues a +- sqrt(bc) of accepted draws."""
    a, b, c = sample_abc(seed, start, n, sigma)
    bc = b * c
    acc = bc >= 0.0
    root = np.sqrt(bc[acc])
    am = a[acc]
    levels = np.concatenate([am + root, am - root])
    counts = _bin_counts(levels, lo, hi, nbins)
    return counts, int(acc.sum())


def _k0_small(x):
    # ascending series: K0 = -(log(x/2) + gamma) I0(x) + sum t_k H_k,
    # t_k = (x^2/4)^k / (k!)^2, H_k the harmonic numbers
    q = 0.25 * x * x
    term = np.ones_like(x)
    i0 = np.ones_like(x)
    acc = np.zeros_like(x)
    h = 0.0
    for k in range(1, 40):
        term = term * (q / (k * k))
        h += 1.0 / k
        i0 += term
        acc += term * h
        if np.all(term * (h + 1.0) < 1e-18 * i0):
            break
    return -(np.log(0.5 * x) + _EULER_GAMMA) * i0 + acc


def _k0_large(x):
    t = (8.0 / x - 2.0) * 0.5
    bk1 = np.zeros_like(t)
    bk2 = np.zeros_like(t)
    for ck in _CHEB[:0:-1]:
        bk1, bk2 = 2.0 * t * bk1 - bk2 + ck, bk1
    cheb = t * bk1 - bk2 + 0.5 * _CHEB[0]
    return np.exp(-x) * cheb / np.sqrt(x)


def k0_array(x):
    """K0 on an array of positive arguments."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    small = x <= 2.0
    if small.any():
        out[small] = _k0_small(x[small])
    if (~small).any():
        out[~small] = _k0_large(x[~small])
    return out


def k0(x):
    """K0 at a positive scalar argument."""
    return float(k0_array(np.array([x]))[0])
