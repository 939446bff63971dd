"""Exact dense linear algebra over a fixed odd prime field.

Matrices are int64 numpy arrays with all entries in [0, p).  The default
prime 2**31 - 1 is large enough that random points miss every degeneracy
locus we care about with overwhelming probability, and small enough that
a product of two reduced entries fits in int64.

All operations are pure; randomness comes only from an explicit
:class:`FieldCtx`, and identical (prime, seed) yields identical streams.
"""

from __future__ import annotations

import numpy as np

from ._kernels import BACKEND, rref_inplace

__all__ = [
    "BACKEND",
    "DEFAULT_PRIME",
    "DEFAULT_TRIALS",
    "FieldCtx",
    "identity_mat",
    "is_probable_prime",
    "kernel_basis",
    "matmul_mod",
    "random_mat",
    "rank",
    "rref",
    "solve_affine",
    "solve_matrix",
    "block_diag",
]

DEFAULT_PRIME = 2_147_483_647
DEFAULT_TRIALS = 7

_MAX_PRIME = 1 << 31  # int64 overflow bound for a*b with a, b < p


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all 64-bit integers."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldCtx:
    """Prime modulus plus a seeded random stream.

    Contexts must not be shared across concurrent tasks; derive one per
    trial with :meth:`trial`, which depends only on (seed, index), never
    on how much of the parent stream was consumed.
    """

    __slots__ = ("prime", "seed", "rng")

    def __init__(self, prime: int = DEFAULT_PRIME, seed: int = 0):
        if prime < 3 or prime >= _MAX_PRIME or not is_probable_prime(prime):
            raise ValueError(f"modulus must be an odd prime below 2**31, got {prime}")
        self.prime = int(prime)
        self.seed = int(seed)
        self.rng = np.random.default_rng(np.random.SeedSequence(entropy=self.seed))

    def trial(self, index: int) -> "FieldCtx":
        """Independent context for trial `index`, derived from (seed, index)."""
        child = object.__new__(FieldCtx)
        child.prime = self.prime
        child.seed = self.seed
        child.rng = np.random.default_rng(
            np.random.SeedSequence(entropy=self.seed, spawn_key=(index,))
        )
        return child

    def __repr__(self) -> str:
        return f"FieldCtx(prime={self.prime}, seed={self.seed})"


def as_mat(data, p: int) -> np.ndarray:
    a = np.asarray(data, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    return a % p


def identity_mat(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros_mat(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def random_mat(rows: int, cols: int, ctx: FieldCtx) -> np.ndarray:
    """Matrix with entries uniform in [0, p), drawn from ctx's stream."""
    return ctx.rng.integers(0, ctx.prime, size=(rows, cols), dtype=np.int64)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact A @ B mod p via a 16-bit split (keeps accumulators in int64)."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return zeros_mat(a.shape[0], b.shape[1])
    if a.shape[1] > (1 << 15):
        raise ValueError("inner dimension too large for the int64 split trick")
    hi = b >> 16
    lo = b & 0xFFFF
    return (((a @ hi) % p << 16) + (a @ lo)) % p


def block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros_mat(rows, cols)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form (a copy) and pivot columns."""
    r = a.copy()
    piv = rref_inplace(r, p)
    return r, piv


def rank(a: np.ndarray, p: int) -> int:
    r = a.copy()
    return len(rref_inplace(r, p))


def kernel_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of the right kernel; count = cols - rank."""
    rows, cols = a.shape
    if cols == 0:
        return zeros_mat(0, 0)
    if rows == 0:
        return identity_mat(cols)
    r, piv = rref(a, p)
    piv_set = set(int(c) for c in piv)
    free = [j for j in range(cols) if j not in piv_set]
    out = zeros_mat(cols, len(free))
    for k, j in enumerate(free):
        out[j, k] = 1
        for row, pc in enumerate(piv):
            out[int(pc), k] = (-int(r[row, j])) % p
    return out


def solve_affine(
    a: np.ndarray, b: np.ndarray, p: int
) -> tuple[np.ndarray, np.ndarray] | None:
    """One solution of A x = b plus a kernel basis, or None if inconsistent."""
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    if a.shape[0] != b.shape[0]:
        raise ValueError("right-hand side length mismatch")
    aug = np.concatenate([a % p, b[:, None]], axis=1)
    r, piv = rref(aug, p)
    n = a.shape[1]
    if len(piv) and int(piv[-1]) == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row, pc in enumerate(piv):
        x[int(pc)] = r[row, n]
    return x, kernel_basis(a, p)


def solve_matrix(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Solve A X = B where A has full column rank (basis-change solves)."""
    n = a.shape[1]
    if a.shape[0] != b.shape[0]:
        raise ValueError("row mismatch in solve_matrix")
    if n == 0:
        if b.size and np.any(b % p):
            raise ArithmeticError("inconsistent system with empty unknown")
        return zeros_mat(0, b.shape[1])
    aug = np.concatenate([a % p, b % p], axis=1)
    r, piv = rref(aug, p)
    if len(piv) != n or (len(piv) and int(piv[-1]) >= n):
        raise ArithmeticError("matrix does not have full column rank")
    if np.any(r[n:, n:]):
        raise ArithmeticError("inconsistent system in solve_matrix")
    return r[:n, n:].copy()
