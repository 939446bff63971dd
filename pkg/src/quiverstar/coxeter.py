"""BGP reflection functors and the Auslander-Reiten translation.

The translation is computed as the sign-twisted composite of reflection
functors over an admissible ordering (repeatedly extracting the smallest
sink).  Each reflection step records the inclusion of the new vertex
space, which is exactly the data needed to push morphisms through the
functor; that transport realizes the translation on maps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fieldops as fo
from .errors import NotDynkinError
from .qrep import QRep, direct_sum, zero_rep
from .quiver import Quiver, is_dynkin

__all__ = [
    "TauImage",
    "kq_projective",
    "projective_pi_module",
    "reflect_minus",
    "reflect_plus",
    "tau",
    "tau_minus",
]


@dataclass(frozen=True)
class _Step:
    vertex: int
    sources: tuple[int, ...]  # h' for each arrow into the vertex, in arrow order
    kernel_inc: np.ndarray  # inclusion of the new vertex space into the stacked sum


def _reflect_plus_step(x: QRep, i: int) -> tuple[QRep, _Step]:
    q, p, d = x.quiver, x.prime, x.dim
    if not q.is_sink(i):
        raise ValueError(f"vertex {q.vertices[i]!r} is not a sink")
    arrows_in = q.arrows_into(i)
    srcs = [q.arrows[k][0] for k in arrows_in]
    if arrows_in:
        stacked = np.concatenate([x.maps[k] for k in arrows_in], axis=1)
    else:
        stacked = fo.zeros_mat(d[i], 0)
    ker = fo.kernel_basis(stacked, p)
    new_d = list(d)
    new_d[i] = ker.shape[1]
    new_arrows = list(q.arrows)
    new_maps = list(x.maps)
    offset = 0
    for k, s in zip(arrows_in, srcs):
        new_arrows[k] = (i, s)
        new_maps[k] = ker[offset : offset + d[s], :].copy()
        offset += d[s]
    q2 = Quiver(q.vertices, tuple(new_arrows))
    return QRep(q2, tuple(new_d), tuple(new_maps), p), _Step(i, tuple(srcs), ker)


def reflect_plus(x: QRep, i: int) -> QRep:
    """Reflection at a sink: the new vertex space is the kernel of the sum map."""
    return _reflect_plus_step(x, i)[0]


def reflect_minus(x: QRep, i: int) -> QRep:
    """Reflection at a source: the new vertex space is the cokernel of the map in."""
    q, p, d = x.quiver, x.prime, x.dim
    if not q.is_source(i):
        raise ValueError(f"vertex {q.vertices[i]!r} is not a source")
    arrows_out = q.arrows_out_of(i)
    tgts = [q.arrows[k][1] for k in arrows_out]
    if arrows_out:
        stacked = np.concatenate([x.maps[k] for k in arrows_out], axis=0)
    else:
        stacked = fo.zeros_mat(0, d[i])
    coker = fo.kernel_basis(stacked.T.copy(), p).T.copy()
    new_d = list(d)
    new_d[i] = coker.shape[0]
    new_arrows = list(q.arrows)
    new_maps = list(x.maps)
    offset = 0
    for k, t in zip(arrows_out, tgts):
        new_arrows[k] = (t, i)
        new_maps[k] = coker[:, offset : offset + d[t]].copy()
        offset += d[t]
    q2 = Quiver(q.vertices, tuple(new_arrows))
    return QRep(q2, tuple(new_d), tuple(new_maps), p)


def _admissible_order(q: Quiver, want_sinks: bool) -> list[int]:
    arrows = list(q.arrows)
    remaining = set(range(q.n))
    order = []
    while remaining:
        pick = None
        for v in sorted(remaining):
            incident_out = any(s == v for s, _ in arrows)
            incident_in = any(t == v for _, t in arrows)
            if want_sinks and not incident_out:
                pick = v
                break
            if not want_sinks and not incident_in:
                pick = v
                break
        if pick is None:
            raise ValueError("quiver has a cycle; no admissible ordering exists")
        order.append(pick)
        arrows = [
            (t, s) if (s == pick or t == pick) else (s, t) for s, t in arrows
        ]
        remaining.discard(pick)
    return order


def sink_order(q: Quiver) -> list[int]:
    return _admissible_order(q, want_sinks=True)


def source_order(q: Quiver) -> list[int]:
    return _admissible_order(q, want_sinks=False)


@dataclass(frozen=True)
class TauImage:
    """Translated module plus the per-step data that transports morphisms."""

    module: QRep
    steps: tuple[_Step, ...]

    def transport(self, other: "TauImage", f: list[np.ndarray]) -> list[np.ndarray]:
        """Image of f: M -> N under the translation, as graded matrices.

        `self` must be the translation data of the domain M and `other`
        that of the codomain N; the sign twist acts trivially on maps.
        """
        p = self.module.prime
        fs = [fi.copy() for fi in f]
        for sm, sn in zip(self.steps, other.steps):
            if sm.vertex != sn.vertex or sm.sources != sn.sources:
                raise ValueError("translation data were built over different quivers")
            big = fo.block_diag([fs[v] for v in sm.sources])
            w = fo.matmul_mod(big, sm.kernel_inc, p)
            fs[sm.vertex] = fo.solve_matrix(sn.kernel_inc, w, p)
        return fs


def _negate(x: QRep) -> QRep:
    p = x.prime
    return QRep(x.quiver, x.dim, tuple((p - m) % p for m in x.maps), p)


def tau(x: QRep) -> TauImage:
    """Auslander-Reiten translation; kills projectives."""
    q = x.quiver
    if not q.is_acyclic():
        raise ValueError("translation requires an acyclic quiver")
    cur = x
    steps = []
    for i in sink_order(q):
        cur, step = _reflect_plus_step(cur, i)
        steps.append(step)
    if cur.quiver != q:
        raise AssertionError("reflection sequence did not restore the orientation")
    return TauImage(_negate(cur), tuple(steps))


def tau_minus(x: QRep) -> QRep:
    """Left adjoint of the translation; kills injectives."""
    q = x.quiver
    if not q.is_acyclic():
        raise ValueError("translation requires an acyclic quiver")
    cur = _negate(x)
    for i in source_order(q):
        cur = reflect_minus(cur, i)
    if cur.quiver != q:
        raise AssertionError("reflection sequence did not restore the orientation")
    return cur


def kq_projective(q: Quiver, i: int, p: int) -> QRep:
    """Projective path-algebra module at vertex i: paths out of i act by extension."""
    if not q.is_acyclic():
        raise ValueError("path-space construction requires an acyclic quiver")
    paths: list[list[tuple[int, ...]]] = [[] for _ in range(q.n)]
    paths[i].append(())
    frontier = [((), i)]
    while frontier:
        nxt = []
        for path, v in frontier:
            for k in q.arrows_out_of(v):
                new = path + (k,)
                paths[q.arrows[k][1]].append(new)
                nxt.append((new, q.arrows[k][1]))
        frontier = nxt
    index = [{pth: j for j, pth in enumerate(ps)} for ps in paths]
    d = tuple(len(ps) for ps in paths)
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        m = fo.zeros_mat(d[t], d[s])
        for pth, col in index[s].items():
            m[index[t][pth + (k,)], col] = 1
        maps.append(m)
    return QRep(q, d, tuple(maps), p)


def projective_pi_module(q: Quiver, i: int, p: int) -> QRep:
    """Underlying path-algebra module of the projective at i over the doubled algebra.

    Direct sum of the backward-translation orbit of the projective at i;
    finite exactly in ADE type.
    """
    ok, _ = is_dynkin(q)
    if not ok:
        raise NotDynkinError("the translation orbit need not terminate outside ADE type")
    term = kq_projective(q, i, p)
    summands = []
    while term.total_dim > 0:
        summands.append(term)
        term = tau_minus(term)
    if not summands:
        return zero_rep(q, (0,) * q.n, p)
    return direct_sum(summands)
