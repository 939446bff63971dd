"""Translation-datum presentation of preprojective-algebra modules.

A module is presented as a quiver representation M together with a
morphism from M to its translation.  Hom and Ext dimensions are then read
off one linear map per ordered pair: its kernel computes Hom, and the two
cokernels add up to the Ext dimension.  This is the second, independent
route to the same numbers as the double-quiver computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import fieldops as fo
from .coxeter import TauImage, tau
from .errors import RouteMismatchError
from .qrep import (
    QRep,
    RootMultiset,
    _flatten_graded,
    apply_graded,
    canonical_rep,
    hom_q_space,
)
from .quiver import Quiver

__all__ = [
    "TauMod",
    "ext1_pi_via_t",
    "generic_ext1_via_t",
    "hom_pi_via_t",
    "random_tau_module",
    "split_by_tau_vanishing",
    "star_criterion",
    "t_map_matrix",
    "tau_module",
    "zero_tau_module",
]


@dataclass(frozen=True, eq=False)
class TauMod:
    """Representation plus a datum: a morphism into its translation."""

    rep: QRep
    tau_img: TauImage
    theta: tuple[np.ndarray, ...]

    def __post_init__(self):
        taum = self.tau_img.module
        p = self.rep.prime
        for i in range(self.rep.quiver.n):
            if self.theta[i].shape != (taum.dim[i], self.rep.dim[i]):
                raise ValueError("datum has wrong graded shape")
        # intertwining check: the datum must be a morphism into the translation
        for k, (s, t) in enumerate(self.rep.quiver.arrows):
            lhs = fo.matmul_mod(taum.maps[k], self.theta[s], p)
            rhs = fo.matmul_mod(self.theta[t], self.rep.maps[k], p)
            if np.any((lhs - rhs) % p):
                raise ValueError("datum does not intertwine the arrow actions")


def tau_module(rep: QRep, theta: list[np.ndarray], img: TauImage | None = None) -> TauMod:
    if img is None:
        img = tau(rep)
    return TauMod(rep, img, tuple(m % rep.prime for m in theta))


def zero_tau_module(rep: QRep, img: TauImage | None = None) -> TauMod:
    if img is None:
        img = tau(rep)
    taum = img.module
    theta = tuple(
        fo.zeros_mat(taum.dim[i], rep.dim[i]) for i in range(rep.quiver.n)
    )
    return TauMod(rep, img, theta)


def _theta_from_coords(
    rep: QRep, img: TauImage, basis: list[list[np.ndarray]], coords: np.ndarray
) -> TauMod:
    p = rep.prime
    taum = img.module
    theta = [fo.zeros_mat(taum.dim[i], rep.dim[i]) for i in range(rep.quiver.n)]
    for c, b in zip(coords, basis):
        for i in range(rep.quiver.n):
            theta[i] = (theta[i] + int(c) * b[i]) % p
    return TauMod(rep, img, tuple(theta))


def random_tau_module(rep: QRep, ctx: fo.FieldCtx, img: TauImage | None = None) -> TauMod:
    """Datum with random coordinates in the morphism space into the translation."""
    if img is None:
        img = tau(rep)
    basis = hom_q_space(rep, img.module)
    if not basis:
        return zero_tau_module(rep, img)
    coords = fo.random_mat(len(basis), 1, ctx).reshape(-1)
    return _theta_from_coords(rep, img, basis, coords)


# ---------------------------------------------------------------------------
# the pairing map and its kernel/cokernel dimensions
# ---------------------------------------------------------------------------


def _coords_in_basis(basis: list[list[np.ndarray]], u: list[np.ndarray], p: int):
    target = np.stack([_flatten_graded(b) for b in basis], axis=1)
    vec = _flatten_graded(u)[:, None] % p
    return fo.solve_matrix(target, vec, p).reshape(-1)


def t_map_matrix(x: TauMod, y: TauMod) -> tuple[np.ndarray, int, int]:
    """Matrix of f -> tau(f).theta_x - theta_y.f on morphism-space bases.

    Returns (matrix, domain dimension, target dimension) where the domain
    is Hom(X, Y) and the target Hom(X, tauY).
    """
    p = x.rep.prime
    f_basis = hom_q_space(x.rep, y.rep)
    g_basis = hom_q_space(x.rep, y.tau_img.module)
    cols = []
    for f in f_basis:
        tf = x.tau_img.transport(y.tau_img, list(f))
        first = apply_graded(tf, list(x.theta), p)
        second = apply_graded(list(y.theta), list(f), p)
        u = [(a - b) % p for a, b in zip(first, second)]
        if not g_basis:
            if any(np.any(ui) for ui in u):
                raise RouteMismatchError("image misses the empty morphism space")
            cols.append(np.zeros(0, dtype=np.int64))
        else:
            cols.append(_coords_in_basis(g_basis, u, p))
    if cols:
        mat = np.stack(cols, axis=1)
    else:
        mat = fo.zeros_mat(len(g_basis), 0)
    return mat, len(f_basis), len(g_basis)


def hom_pi_via_t(x: TauMod, y: TauMod) -> int:
    """Module-morphism dimension: nullity of the pairing map."""
    mat, dom, _ = t_map_matrix(x, y)
    return dom - fo.rank(mat, x.rep.prime)


def ext1_pi_via_t(x: TauMod, y: TauMod) -> int:
    """Ext dimension: the two cokernel dimensions added; symmetric in (x, y)."""
    p = x.rep.prime
    mat_xy, _, tgt_xy = t_map_matrix(x, y)
    mat_yx, _, tgt_yx = t_map_matrix(y, x)
    return (tgt_xy - fo.rank(mat_xy, p)) + (tgt_yx - fo.rank(mat_yx, p))


# ---------------------------------------------------------------------------
# generic values over named components
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _canonical_tau_data(q: Quiver, m: RootMultiset, p: int):
    rep = canonical_rep(q, m, p)
    img = tau(rep)
    basis = hom_q_space(rep, img.module)
    return rep, img, basis


def _random_mod(q: Quiver, m: RootMultiset, ctx: fo.FieldCtx) -> TauMod:
    rep, img, basis = _canonical_tau_data(q, m, ctx.prime)
    if not basis:
        return zero_tau_module(rep, img)
    coords = fo.random_mat(len(basis), 1, ctx).reshape(-1)
    return _theta_from_coords(rep, img, basis, coords)


def generic_ext1_via_t(
    q: Quiver,
    m: RootMultiset,
    n: RootMultiset,
    ctx: fo.FieldCtx,
    trials: int = fo.DEFAULT_TRIALS,
) -> int:
    """Minimum Ext dimension over randomized data on the two named components."""
    best = None
    for t in range(trials):
        sub = ctx.trial(t)
        x = _random_mod(q, m, sub)
        y = _random_mod(q, n, sub)
        val = ext1_pi_via_t(x, y)
        best = val if best is None else min(best, val)
    return int(best)


def star_criterion(
    q: Quiver,
    m: RootMultiset,
    n: RootMultiset,
    ctx: fo.FieldCtx,
    trials: int = fo.DEFAULT_TRIALS,
) -> bool:
    """Surjectivity test deciding whether the product lands on the sum multiset.

    True iff for some randomized data the pairing map from Hom(N, M) to
    Hom(N, tauM) is surjective, with M over m and N over n.
    """
    for t in range(trials):
        sub = ctx.trial(t)
        x = _random_mod(q, m, sub)
        y = _random_mod(q, n, sub)
        mat, _, tgt = t_map_matrix(y, x)
        if fo.rank(mat, ctx.prime) == tgt:
            return True
    return False


# ---------------------------------------------------------------------------
# splitting along a direct-sum decomposition
# ---------------------------------------------------------------------------


def _slice_rep(x: QRep, lo: tuple[int, ...], hi: tuple[int, ...]) -> QRep:
    maps = []
    for k, (s, t) in enumerate(x.quiver.arrows):
        maps.append(x.maps[k][lo[t] : hi[t], lo[s] : hi[s]].copy())
    d = tuple(h - l for l, h in zip(lo, hi))
    return QRep(x.quiver, d, tuple(maps), x.prime)


def split_by_tau_vanishing(x: TauMod, dims1) -> tuple[TauMod, TauMod]:
    """Split a datum along a block direct sum M = M1 (+) M2.

    Requires the morphism space from M2 into the translation of M1 to
    vanish; the pieces then present a submodule and quotient such that the
    whole is an extension of the first piece by the second.
    """
    q = x.rep.quiver
    p = x.rep.prime
    d = x.rep.dim
    d1 = q.check_dim(dims1)
    if any(a > b for a, b in zip(d1, d)):
        raise ValueError("first block exceeds the module dimensions")
    zero = (0,) * q.n
    m1 = _slice_rep(x.rep, zero, d1)
    m2 = _slice_rep(x.rep, d1, d)
    for k, (s, t) in enumerate(q.arrows):
        if np.any(x.rep.maps[k][: d1[t], d1[s] :]) or np.any(
            x.rep.maps[k][d1[t] :, : d1[s]]
        ):
            raise ValueError("module is not block diagonal for the given split")
    img1, img2 = tau(m1), tau(m2)
    if hom_q_space(m2, img1.module):
        raise ValueError(
            "split hypothesis fails: morphisms from the second block into "
            "the translation of the first do not vanish"
        )
    img = x.tau_img

    def datum_for(mi: QRep, imgi: TauImage, lo, hi) -> TauMod:
        # projection and inclusion as graded 0/1 matrices
        proj = []
        inc = []
        for v in range(q.n):
            pmat = fo.zeros_mat(mi.dim[v], d[v])
            imat = fo.zeros_mat(d[v], mi.dim[v])
            for j in range(mi.dim[v]):
                pmat[j, lo[v] + j] = 1
                imat[lo[v] + j, j] = 1
            proj.append(pmat)
            inc.append(imat)
        tproj = img.transport(imgi, proj)
        theta_i = apply_graded(
            tproj, apply_graded(list(x.theta), inc, p), p
        )
        return TauMod(mi, imgi, tuple(theta_i))

    x1 = datum_for(m1, img1, zero, d1)
    x2 = datum_for(m2, img2, d1, d)
    return x1, x2
