"""Compiled hot loops: generator core and the Jacobi eigensolver.

Everything here is deterministic integer or IEEE double arithmetic, so
results are bit-identical across processes and across repeated runs.
The pure-Python twins used as oracles live in the test suite.
"""

import numpy as np
from numba import njit

_C11 = np.uint64(11)
_C17 = np.uint64(17)
_C19 = np.uint64(19)
_C23 = np.uint64(23)
_C41 = np.uint64(41)
_C45 = np.uint64(45)
_TWO_NEG53 = 1.1102230246251565e-16  # 2.0**-53


@njit(cache=True, inline="always")
def _step(s0, s1, s2, s3):
    # xoshiro256++: output rotl(s0 + s3, 23) + s0, then advance the state
    x = s0 + s3
    r = ((x << _C23) | (x >> _C41)) + s0
    t = s1 << _C17
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = (s3 << _C45) | (s3 >> _C19)
    return r, s0, s1, s2, s3


@njit(cache=True)
def fill_raw(state, out):
    """Fill ``out`` (uint64) with raw generator words; advances ``state``."""
    s0, s1, s2, s3 = state[0], state[1], state[2], state[3]
    for i in range(out.shape[0]):
        r, s0, s1, s2, s3 = _step(s0, s1, s2, s3)
        out[i] = r
    state[0], state[1], state[2], state[3] = s0, s1, s2, s3


@njit(cache=True)
def fill_uniforms(state, out):
    """Fill ``out`` (float64) with doubles in [0, 1); advances ``state``."""
    s0, s1, s2, s3 = state[0], state[1], state[2], state[3]
    for i in range(out.shape[0]):
        r, s0, s1, s2, s3 = _step(s0, s1, s2, s3)
        out[i] = (r >> _C11) * _TWO_NEG53
    state[0], state[1], state[2], state[3] = s0, s1, s2, s3


@njit(cache=True)
def fill_normals(state, out):
    """Fill ``out`` (float64) with standard normals via the polar method.

    Accepted pairs are written in order; when ``out`` has odd length the
    second member of the final pair is discarded.
    """
    s0, s1, s2, s3 = state[0], state[1], state[2], state[3]
    n = out.shape[0]
    i = 0
    while i < n:
        while True:
            r1, s0, s1, s2, s3 = _step(s0, s1, s2, s3)
            r2, s0, s1, s2, s3 = _step(s0, s1, s2, s3)
            u = 2.0 * ((r1 >> _C11) * _TWO_NEG53) - 1.0
            v = 2.0 * ((r2 >> _C11) * _TWO_NEG53) - 1.0
            w = u * u + v * v
            if 0.0 < w < 1.0:
                break
        f = np.sqrt(-2.0 * np.log(w) / w)
        out[i] = u * f
        i += 1
        if i < n:
            out[i] = v * f
            i += 1
    state[0], state[1], state[2], state[3] = s0, s1, s2, s3


@njit(cache=True)
def jacobi_sweeps(a, v, off_tol, max_sweeps):
    """Cyclic Jacobi rotations on symmetric ``a``, accumulated into ``v``.

    ``a`` is overwritten (diagonal converges to the eigenvalues) and ``v``
    must start as the identity.  Returns the number of completed sweeps,
    or -1 when the largest off-diagonal entry still exceeds ``off_tol``
    after ``max_sweeps`` sweeps.
    """
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                m = abs(a[p, q])
                if m > off:
                    off = m
        if off <= off_tol:
            return sweep
        if sweep == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                if t == 0.0:
                    # tau overflowed: the entry is negligible at this scale
                    continue
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return -1
