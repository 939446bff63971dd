"""Quiver representations over the prime field.

Provides Hom and Ext dimensions, generic and indecomposable
representatives, direct sums, duality, and the decomposition of an
arbitrary representation into indecomposables by Hom counting (valid in
ADE type, where graded dimension vectors of indecomposables are exactly
the positive roots).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import fieldops as fo
from .errors import GenericityError, NotDynkinError, RouteMismatchError
from .quiver import Quiver, euler_form, is_dynkin, opposite, positive_roots

__all__ = [
    "QRep",
    "RootMultiset",
    "decompose",
    "direct_sum",
    "dual_rep",
    "ext1_q_dim",
    "generic_rep",
    "grdim",
    "hom_q_dim",
    "hom_q_space",
    "indecomposable",
    "rep_of_multiset",
    "zero_rep",
]

# Seed for the cached canonical representatives used by `decompose`;
# independent of user seeds so outputs stay reproducible.
_INTERNAL_SEED = 715


@dataclass(frozen=True, eq=False)
class QRep:
    """One matrix per arrow; maps[k] has shape (d[target], d[source])."""

    quiver: Quiver
    dim: tuple[int, ...]
    maps: tuple[np.ndarray, ...]
    prime: int

    def __post_init__(self):
        d = self.quiver.check_dim(self.dim)
        object.__setattr__(self, "dim", d)
        if len(self.maps) != len(self.quiver.arrows):
            raise ValueError("one matrix per arrow required")
        for k, (s, t) in enumerate(self.quiver.arrows):
            if self.maps[k].shape != (d[t], d[s]):
                raise ValueError(
                    f"arrow {k} matrix has shape {self.maps[k].shape}, "
                    f"expected ({d[t]}, {d[s]})"
                )
        for m in self.maps:
            m.setflags(write=False)

    @property
    def total_dim(self) -> int:
        return sum(self.dim)


def grdim(x: QRep) -> tuple[int, ...]:
    return x.dim


def zero_rep(q: Quiver, d, p: int) -> QRep:
    d = q.check_dim(d)
    maps = tuple(fo.zeros_mat(d[t], d[s]) for s, t in q.arrows)
    return QRep(q, d, maps, p)


def generic_rep(q: Quiver, d, ctx: fo.FieldCtx) -> QRep:
    """Uniformly random representation; lands in the open orbit w.h.p. (ADE)."""
    d = q.check_dim(d)
    maps = tuple(fo.random_mat(d[t], d[s], ctx) for s, t in q.arrows)
    return QRep(q, d, maps, ctx.prime)


def direct_sum(reps: list[QRep]) -> QRep:
    if not reps:
        raise ValueError("empty direct sum needs an explicit zero_rep")
    q, p = reps[0].quiver, reps[0].prime
    if any(r.quiver != q or r.prime != p for r in reps):
        raise ValueError("direct sum requires a common quiver and prime")
    d = tuple(sum(r.dim[i] for r in reps) for i in range(q.n))
    maps = tuple(
        fo.block_diag([r.maps[k] for r in reps]) for k in range(len(q.arrows))
    )
    return QRep(q, d, maps, p)


def dual_rep(x: QRep) -> QRep:
    """Transpose every arrow matrix; a representation of the opposite quiver."""
    return QRep(
        opposite(x.quiver), x.dim, tuple(m.T.copy() for m in x.maps), x.prime
    )


# ---------------------------------------------------------------------------
# graded intertwiner spaces
# ---------------------------------------------------------------------------


def _flatten_graded(f: list[np.ndarray]) -> np.ndarray:
    if not f:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate([fi.reshape(-1) for fi in f])


def _unflatten_graded(vec: np.ndarray, shapes: list[tuple[int, int]]):
    out = []
    pos = 0
    for rows, cols in shapes:
        out.append(vec[pos : pos + rows * cols].reshape(rows, cols).copy())
        pos += rows * cols
    return out


def _intertwiner_system(
    dm: tuple[int, ...],
    dn: tuple[int, ...],
    arrows: list[tuple[int, int]],
    maps_m: list[np.ndarray],
    maps_n: list[np.ndarray],
    p: int,
) -> np.ndarray:
    """Matrix of (f_i) -> (N_k f_src - f_tgt M_k) in row-major coordinates."""
    nverts = len(dm)
    var_sizes = [dn[i] * dm[i] for i in range(nverts)]
    var_off = np.concatenate([[0], np.cumsum(var_sizes)])
    eq_sizes = [dn[t] * dm[s] for s, t in arrows]
    total_eq = int(sum(eq_sizes))
    total_var = int(var_off[-1])
    sys = fo.zeros_mat(total_eq, total_var)
    row = 0
    for k, (s, t) in enumerate(arrows):
        rows_k = eq_sizes[k]
        if rows_k:
            if var_sizes[s]:
                blk = np.kron(maps_n[k], fo.identity_mat(dm[s])) % p
                sys[row : row + rows_k, var_off[s] : var_off[s + 1]] += blk
            if var_sizes[t]:
                blk = np.kron(fo.identity_mat(dn[t]), maps_m[k].T) % p
                sys[row : row + rows_k, var_off[t] : var_off[t + 1]] -= blk
        row += rows_k
    return sys % p


def hom_q_space(m: QRep, n: QRep) -> list[list[np.ndarray]]:
    """Basis of the space of graded maps intertwining all arrow actions."""
    if m.quiver != n.quiver or m.prime != n.prime:
        raise ValueError("representations live over different quivers or primes")
    q, p = m.quiver, m.prime
    shapes = [(n.dim[i], m.dim[i]) for i in range(q.n)]
    nvars = sum(r * c for r, c in shapes)
    if nvars == 0:
        return []
    sys = _intertwiner_system(m.dim, n.dim, list(q.arrows), list(m.maps), list(n.maps), p)
    ker = fo.kernel_basis(sys, p)
    return [_unflatten_graded(ker[:, j], shapes) for j in range(ker.shape[1])]


def hom_q_dim(m: QRep, n: QRep) -> int:
    if m.quiver != n.quiver or m.prime != n.prime:
        raise ValueError("representations live over different quivers or primes")
    q, p = m.quiver, m.prime
    nvars = sum(n.dim[i] * m.dim[i] for i in range(q.n))
    if nvars == 0:
        return 0
    sys = _intertwiner_system(m.dim, n.dim, list(q.arrows), list(m.maps), list(n.maps), p)
    return nvars - fo.rank(sys, p)


def ext1_q_dim(m: QRep, n: QRep) -> int:
    """First extension dimension, from Hom and the Euler form."""
    val = hom_q_dim(m, n) - euler_form(m.quiver, m.dim, n.dim)
    if val < 0:
        raise RouteMismatchError("negative Ext dimension over the path algebra")
    return val


def end_dim(x: QRep) -> int:
    return hom_q_dim(x, x)


def apply_graded(f: list[np.ndarray], g: list[np.ndarray], p: int):
    """Vertex-wise composition f after g."""
    return [fo.matmul_mod(fi, gi, p) for fi, gi in zip(f, g)]


# ---------------------------------------------------------------------------
# root multisets
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"^\[(-?\d+(?:,-?\d+)*)\](?:\^(\d+))?$")


class RootMultiset:
    """Multiset of positive roots; names an irreducible component in ADE type.

    Canonical text form: bracketed dimension vectors joined by '+', with a
    '^k' multiplicity suffix, roots sorted lexicographically; the empty
    multiset prints as '0'.
    """

    __slots__ = ("_counts", "_n")

    def __init__(self, counts: dict[tuple[int, ...], int], n: int):
        clean = {}
        for root, mult in counts.items():
            root = tuple(int(x) for x in root)
            if len(root) != n:
                raise ValueError("root length does not match vertex count")
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult:
                clean[root] = clean.get(root, 0) + int(mult)
        self._counts = clean
        self._n = n

    @classmethod
    def empty(cls, n: int) -> "RootMultiset":
        return cls({}, n)

    @classmethod
    def single(cls, root, n: int | None = None) -> "RootMultiset":
        root = tuple(int(x) for x in root)
        return cls({root: 1}, len(root) if n is None else n)

    @classmethod
    def simple(cls, i: int, n: int) -> "RootMultiset":
        return cls({tuple(int(j == i) for j in range(n)): 1}, n)

    @classmethod
    def parse(cls, text: str, n: int) -> "RootMultiset":
        text = text.strip().replace(" ", "")
        if text in ("", "0"):
            return cls.empty(n)
        counts: dict[tuple[int, ...], int] = {}
        for term in text.split("+"):
            m = _TERM_RE.match(term)
            if not m:
                raise ValueError(f"bad multiset term {term!r}")
            root = tuple(int(x) for x in m.group(1).split(","))
            mult = int(m.group(2)) if m.group(2) else 1
            counts[root] = counts.get(root, 0) + mult
        return cls(counts, n)

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self._counts.items())

    def roots_with_multiplicity(self):
        for root, mult in self.items():
            for _ in range(mult):
                yield root

    @property
    def n(self) -> int:
        return self._n

    def grdim(self) -> tuple[int, ...]:
        out = [0] * self._n
        for root, mult in self._counts.items():
            for i, x in enumerate(root):
                out[i] += mult * x
        return tuple(out)

    def total_dim(self) -> int:
        return sum(self.grdim())

    def size(self) -> int:
        return sum(self._counts.values())

    def __add__(self, other: "RootMultiset") -> "RootMultiset":
        if self._n != other._n:
            raise ValueError("multisets over different vertex sets")
        counts = dict(self._counts)
        for root, mult in other._counts.items():
            counts[root] = counts.get(root, 0) + mult
        return RootMultiset(counts, self._n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RootMultiset)
            and self._n == other._n
            and self._counts == other._counts
        )

    def __hash__(self):
        return hash((self._n, tuple(self.items())))

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __str__(self) -> str:
        if not self._counts:
            return "0"
        parts = []
        for root, mult in self.items():
            lit = "[" + ",".join(str(x) for x in root) + "]"
            parts.append(lit if mult == 1 else f"{lit}^{mult}")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"RootMultiset({self})"


# ---------------------------------------------------------------------------
# indecomposables and decomposition
# ---------------------------------------------------------------------------


def indecomposable(q: Quiver, beta, ctx: fo.FieldCtx) -> QRep:
    """A representative of the unique indecomposable with dimension `beta`.

    Sampled generically, then certified by the brick property (End of
    dimension one); resampled on failure.
    """
    roots = positive_roots(q)
    beta = tuple(int(x) for x in beta)
    if beta not in roots:
        raise ValueError(f"{beta} is not a positive root of this quiver")
    for _ in range(fo.DEFAULT_TRIALS):
        x = generic_rep(q, beta, ctx)
        if end_dim(x) == 1:
            return x
    raise GenericityError(f"failed to certify an indecomposable of dimension {beta}")


def rep_of_multiset(q: Quiver, m: RootMultiset, ctx: fo.FieldCtx) -> QRep:
    """Block-diagonal direct sum of indecomposables, one per multiset entry."""
    summands = [indecomposable(q, root, ctx) for root in m.roots_with_multiplicity()]
    if not summands:
        return zero_rep(q, (0,) * q.n, ctx.prime)
    return direct_sum(summands)


class _RootData:
    def __init__(self, q: Quiver, p: int):
        self.roots = positive_roots(q)
        ctx = fo.FieldCtx(p, _INTERNAL_SEED)
        self.indecs = [indecomposable(q, beta, ctx) for beta in self.roots]
        n = len(self.roots)
        self.hom_matrix = np.zeros((n, n), dtype=np.int64)
        for i, mi in enumerate(self.indecs):
            for j, mj in enumerate(self.indecs):
                self.hom_matrix[i, j] = hom_q_dim(mi, mj)
        if fo.rank(self.hom_matrix % p, p) != n:
            raise RouteMismatchError("hom matrix of indecomposables is singular")


@lru_cache(maxsize=None)
def _root_data(q: Quiver, p: int) -> _RootData:
    return _RootData(q, p)


def canonical_indecomposable(q: Quiver, beta, p: int) -> QRep:
    """Cached, deterministic representative (independent of user seeds)."""
    data = _root_data(q, p)
    return data.indecs[data.roots.id_of(beta)]


def canonical_rep(q: Quiver, m: RootMultiset, p: int) -> QRep:
    summands = [canonical_indecomposable(q, root, p) for root in m.roots_with_multiplicity()]
    if not summands:
        return zero_rep(q, (0,) * q.n, p)
    return direct_sum(summands)


def decompose(x: QRep) -> RootMultiset:
    """Multiplicities of indecomposable summands, recovered by Hom counting.

    Solves the (invertible) linear system whose matrix is the Hom-pairing
    of indecomposables; the lifted solution is verified over the integers.
    """
    q, p = x.quiver, x.prime
    ok, _ = is_dynkin(q)
    if not ok:
        raise NotDynkinError("decomposition by Hom counting requires ADE type")
    if x.total_dim == 0:
        return RootMultiset.empty(q.n)
    data = _root_data(q, p)
    h = np.array([hom_q_dim(mi, x) for mi in data.indecs], dtype=np.int64)
    sol = fo.solve_affine(data.hom_matrix % p, h % p, p)
    if sol is None:
        raise ValueError("no solution: input is not a valid representation record")
    mvec = sol[0]
    bound = x.total_dim
    if np.any(mvec > bound) or np.any(data.hom_matrix @ mvec != h):
        raise ValueError("no nonnegative integer solution for the multiplicities")
    result = RootMultiset(
        {root: int(mvec[k]) for k, root in enumerate(data.roots) if mvec[k]}, q.n
    )
    if result.grdim() != x.dim:
        raise ValueError("multiplicity solution does not match the dimension vector")
    return result
