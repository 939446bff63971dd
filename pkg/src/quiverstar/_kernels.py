"""Row-reduction kernels over a prime field.

Dense Gauss-Jordan elimination mod p is the hot loop behind every rank,
kernel and solve in the engine.  Two interchangeable implementations live
here: a numba-compiled scalar loop and a vectorized pure-numpy fallback.
The numpy path is selected when QUIVERSTAR_NO_JIT is set to a nonempty
value other than "0", or when numba is not importable.

Both paths reduce the matrix in place to reduced row echelon form and
return the pivot columns; outputs are bit-identical (same pivoting rule).
Entries must lie in [0, p) with p < 2**31 so that every intermediate
product fits in int64.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("QUIVERSTAR_NO_JIT", "") not in ("", "0")


def _rref_numpy(a: np.ndarray, p: int) -> np.ndarray:
    """Vectorized in-place RREF; returns the pivot column indices."""
    rows, cols = a.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        f = a[:, c].copy()
        f[r] = 0
        if np.any(f):
            # f * row <= (p-1)^2 < 2**62, safe in int64
            a -= f[:, None] * a[r][None, :]
            a %= p
        piv.append(c)
        r += 1
    return np.asarray(piv, dtype=np.int64)


def _rref_loops(a, p):
    rows, cols = a.shape
    piv = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(c, cols):
                t = a[r, j]
                a[r, j] = a[k, j]
                a[k, j] = t
        inv = np.int64(1)
        b = a[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * b % p
            b = b * b % p
            e >>= 1
        for j in range(c, cols):
            a[r, j] = a[r, j] * inv % p
        for i in range(rows):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                for j in range(c, cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        piv[r] = c
        r += 1
    return piv[:r].copy()


if not _FORCE_NUMPY:
    try:
        from numba import njit

        _rref_numba = njit(cache=True)(_rref_loops)
    except ImportError:
        _FORCE_NUMPY = True

BACKEND = "numpy" if _FORCE_NUMPY else "numba"


def rref_inplace(a: np.ndarray, p: int) -> np.ndarray:
    """Reduce `a` (int64, entries in [0, p)) to RREF in place.

    Returns the pivot columns as an int64 array; the rank is its length.
    """
    if a.size == 0:
        return np.empty(0, dtype=np.int64)
    if _FORCE_NUMPY:
        return _rref_numpy(a, p)
    return _rref_numba(a, np.int64(p))
