# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Mirrors gpue._pykernels function for function; see that module for the
contracts.  The integer RNG stream is bit-identical across the two
lanes; transcendental outputs may differ by a few ulp.
"""

from libc.math cimport cos, exp, log, sin, sqrt
from libc.stdint cimport int64_t, uint64_t

import numpy as np

from ._k0_table import K0_TAIL_CHEB

NAME = "compiled"

cdef double _EULER_GAMMA = 0.5772156649015328606
cdef double _TWO_PI = 6.283185307179586476925287
cdef double _INV53 = 1.0 / 9007199254740992.0

cdef int _NCHEB = len(K0_TAIL_CHEB)
cdef double[32] _CHEB
for _i, _c in enumerate(K0_TAIL_CHEB):
    _CHEB[_i] = _c


cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline double _u01(uint64_t seed, uint64_t counter) nogil:
    cdef uint64_t z = _mix64(seed + (counter + 1) * <uint64_t>0x9E3779B97F4A7C15)
    return (<double>(z >> 11) + 0.5) * _INV53


cdef inline void _draw3(uint64_t seed, uint64_t i, double sigma,
                        double *a, double *b, double *c) nogil:
    cdef uint64_t base = i * 4
    cdef double u0 = _u01(seed, base)
    cdef double u1 = _u01(seed, base + 1)
    cdef double u2 = _u01(seed, base + 2)
    cdef double u3 = _u01(seed, base + 3)
    cdef double r1 = sqrt(-2.0 * log(u0))
    a[0] = (sigma / sqrt(2.0)) * (r1 * cos(_TWO_PI * u1))
    b[0] = sigma * (r1 * sin(_TWO_PI * u1))
    c[0] = sigma * (sqrt(-2.0 * log(u2)) * cos(_TWO_PI * u3))


def mix64(z):
    out = np.asarray(z, dtype=np.uint64).copy()
    cdef uint64_t[::1] v = out.reshape(-1)
    cdef Py_ssize_t i
    for i in range(v.shape[0]):
        v[i] = _mix64(v[i])
    return out


def uniforms(seed, counters):
    ctr = np.ascontiguousarray(counters, dtype=np.uint64)
    out = np.empty(ctr.shape[0], dtype=np.float64)
    cdef uint64_t[::1] cv = ctr
    cdef double[::1] ov = out
    cdef uint64_t s = seed
    cdef Py_ssize_t i
    with nogil:
        for i in range(cv.shape[0]):
            ov[i] = _u01(s, cv[i])
    return out


def sample_abc(seed, start, n, sigma):
    a = np.empty(n, dtype=np.float64)
    b = np.empty(n, dtype=np.float64)
    c = np.empty(n, dtype=np.float64)
    cdef double[::1] av = a, bv = b, cv = c
    cdef uint64_t s = seed, i0 = start
    cdef double sig = sigma
    cdef Py_ssize_t i, m = n
    with nogil:
        for i in range(m):
            _draw3(s, i0 + <uint64_t>i, sig, &av[i], &bv[i], &cv[i])
    return a, b, c


def spacing_chunk(seed, start, n, sigma, lo, hi, nbins):
    counts = np.zeros(nbins, dtype=np.int64)
    cdef int64_t[::1] cnt = counts
    cdef uint64_t s = seed, i0 = start
    cdef double sig = sigma, blo = lo, bhi = hi
    cdef double scale = nbins / (bhi - blo)
    cdef Py_ssize_t i, m = n
    cdef int64_t nb = nbins, idx, n_acc = 0
    cdef double a, b, c, bc, sp, sum_s = 0.0, sum_s2 = 0.0
    with nogil:
        for i in range(m):
            _draw3(s, i0 + <uint64_t>i, sig, &a, &b, &c)
            bc = b * c
            if bc >= 0.0:
                n_acc += 1
                sp = 2.0 * sqrt(bc)
                sum_s += sp
                sum_s2 += sp * sp
                if sp >= blo and sp < bhi:
                    idx = <int64_t>((sp - blo) * scale)
                    if 0 <= idx < nb:
                        cnt[idx] += 1
    return counts, n_acc, sum_s, sum_s2


def eigenvalue_chunk(seed, start, n, sigma, lo, hi, nbins):
    counts = np.zeros(nbins, dtype=np.int64)
    cdef int64_t[::1] cnt = counts
    cdef uint64_t s = seed, i0 = start
    cdef double sig = sigma, blo = lo, bhi = hi
    cdef double scale = nbins / (bhi - blo)
    cdef Py_ssize_t i, m = n
    cdef int64_t nb = nbins, idx, n_acc = 0
    cdef int j
    cdef double a, b, c, bc, root, level
    with nogil:
        for i in range(m):
            _draw3(s, i0 + <uint64_t>i, sig, &a, &b, &c)
            bc = b * c
            if bc >= 0.0:
                n_acc += 1
                root = sqrt(bc)
                for j in range(2):
                    level = a + root if j == 0 else a - root
                    if level >= blo and level < bhi:
                        idx = <int64_t>((level - blo) * scale)
                        if 0 <= idx < nb:
                            cnt[idx] += 1
    return counts, n_acc


cdef double _k0_small(double x) nogil:
    cdef double q = 0.25 * x * x
    cdef double term = 1.0, i0 = 1.0, acc = 0.0, h = 0.0
    cdef int k
    for k in range(1, 40):
        term *= q / (k * k)
        h += 1.0 / k
        i0 += term
        acc += term * h
        if term * (h + 1.0) < 1e-18 * i0:
            break
    return -(log(0.5 * x) + _EULER_GAMMA) * i0 + acc


cdef double _k0_large(double x) nogil:
    cdef double t = (8.0 / x - 2.0) * 0.5
    cdef double bk1 = 0.0, bk2 = 0.0, tmp
    cdef int k
    for k in range(_NCHEB - 1, 0, -1):
        tmp = 2.0 * t * bk1 - bk2 + _CHEB[k]
        bk2 = bk1
        bk1 = tmp
    return exp(-x) * (t * bk1 - bk2 + 0.5 * _CHEB[0]) / sqrt(x)


cdef inline double _k0(double x) nogil:
    return _k0_small(x) if x <= 2.0 else _k0_large(x)


def k0(double x):
    return _k0(x)


def k0_array(x):
    xs = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty(xs.shape[0], dtype=np.float64)
    cdef double[::1] xv = xs
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(xv.shape[0]):
            ov[i] = _k0(xv[i])
    return out
