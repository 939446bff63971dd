"""Modules over the preprojective algebra as double-quiver representations.

A module is one matrix per doubled arrow subject to the moment-map
relation at every vertex.  First extension spaces are computed by two
independent routes: the Crawley-Boevey dimension count from Hom spaces,
and the cocycle/coboundary quotient of triangular module structures.
Their agreement is asserted wherever both are computed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fieldops as fo
from .errors import NotDynkinError, RouteMismatchError
from .qrep import (
    QRep,
    RootMultiset,
    _flatten_graded,
    _intertwiner_system,
    _unflatten_graded,
    rep_of_multiset,
)
from .quiver import Quiver, dim_g, dim_r_q, is_dynkin, sym_form

__all__ = [
    "Cocycle",
    "ExtSpace",
    "PiMod",
    "attach_generic_reverse",
    "build_extension",
    "check_nilpotent",
    "check_pi",
    "conormal_fiber_dim",
    "dual_pimod",
    "ext1_pi_dim_cb",
    "ext_space",
    "forward_rep",
    "hom_pi_dim",
    "hom_pi_space",
    "is_rigid_component",
    "is_rigid_module",
    "kernel_of_surjection",
    "orbitmap_coker_dim",
    "rigidity_report",
    "sample_conormal",
    "simple_pimod",
    "zero_pimod",
]


@dataclass(frozen=True, eq=False)
class PiMod:
    """Forward maps fwd[k]: V_src -> V_tgt and reverse maps rev[k]: V_tgt -> V_src."""

    quiver: Quiver
    dim: tuple[int, ...]
    fwd: tuple[np.ndarray, ...]
    rev: tuple[np.ndarray, ...]
    prime: int

    def __post_init__(self):
        d = self.quiver.check_dim(self.dim)
        object.__setattr__(self, "dim", d)
        narr = len(self.quiver.arrows)
        if len(self.fwd) != narr or len(self.rev) != narr:
            raise ValueError("one forward and one reverse matrix per arrow required")
        for k, (s, t) in enumerate(self.quiver.arrows):
            if self.fwd[k].shape != (d[t], d[s]):
                raise ValueError(f"forward matrix {k} has wrong shape")
            if self.rev[k].shape != (d[s], d[t]):
                raise ValueError(f"reverse matrix {k} has wrong shape")
        for m in self.fwd + self.rev:
            m.setflags(write=False)

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    def to_json_dict(self) -> dict:
        q = self.quiver
        arrows = {}
        for k, (s, t) in enumerate(q.arrows):
            arrows[f"h:{q.vertices[s]}->{q.vertices[t]}"] = self.fwd[k].tolist()
            arrows[f"hop:{q.vertices[t]}->{q.vertices[s]}"] = self.rev[k].tolist()
        return {"dim": list(self.dim), "arrows": arrows}


def _double_arrows(q: Quiver) -> list[tuple[int, int]]:
    """Endpoints of the doubled arrow set: forward arrows, then all reverses."""
    return list(q.arrows) + [(t, s) for s, t in q.arrows]


def _double_maps(x: PiMod) -> list[np.ndarray]:
    return list(x.fwd) + list(x.rev)


def zero_pimod(q: Quiver, d, p: int) -> PiMod:
    d = q.check_dim(d)
    fwd = tuple(fo.zeros_mat(d[t], d[s]) for s, t in q.arrows)
    rev = tuple(fo.zeros_mat(d[s], d[t]) for s, t in q.arrows)
    return PiMod(q, d, fwd, rev, p)


def simple_pimod(q: Quiver, i: int, p: int) -> PiMod:
    return zero_pimod(q, tuple(int(j == i) for j in range(q.n)), p)


def forward_rep(x: PiMod) -> QRep:
    """The underlying representation of the original quiver (forward maps only)."""
    return QRep(x.quiver, x.dim, tuple(m.copy() for m in x.fwd), x.prime)


def pimod_from_parts(fwd_rep: QRep, rev: list[np.ndarray]) -> PiMod:
    return PiMod(
        fwd_rep.quiver,
        fwd_rep.dim,
        tuple(m.copy() for m in fwd_rep.maps),
        tuple(m.copy() for m in rev),
        fwd_rep.prime,
    )


def check_pi(x: PiMod) -> bool:
    """Vertex-wise moment-map relation, checked exactly."""
    q, p = x.quiver, x.prime
    for i in range(q.n):
        acc = fo.zeros_mat(x.dim[i], x.dim[i])
        for k, (s, t) in enumerate(q.arrows):
            if t == i:
                acc = (acc + fo.matmul_mod(x.fwd[k], x.rev[k], p)) % p
            if s == i:
                acc = (acc - fo.matmul_mod(x.rev[k], x.fwd[k], p)) % p
        if np.any(acc):
            return False
    return True


def _total_operator(x: PiMod) -> np.ndarray:
    d = x.dim
    off = np.concatenate([[0], np.cumsum(d)])
    total = fo.zeros_mat(int(off[-1]), int(off[-1]))
    for k, (s, t) in enumerate(x.quiver.arrows):
        total[off[t] : off[t + 1], off[s] : off[s + 1]] = x.fwd[k]
        total[off[s] : off[s + 1], off[t] : off[t + 1]] = x.rev[k]
    return total


def check_nilpotent(x: PiMod) -> bool:
    """Whether the total arrow operator is nilpotent (power = total dimension)."""
    n = x.total_dim
    if n == 0:
        return True
    base = _total_operator(x)
    power = fo.identity_mat(n)
    e = n
    while e > 0:
        if e & 1:
            power = fo.matmul_mod(power, base, x.prime)
        base = fo.matmul_mod(base, base, x.prime)
        e >>= 1
    return not np.any(power)


def hom_pi_space(x: PiMod, y: PiMod) -> list[list[np.ndarray]]:
    """Basis of graded maps intertwining all doubled-arrow actions."""
    if x.quiver != y.quiver or x.prime != y.prime:
        raise ValueError("modules live over different quivers or primes")
    q, p = x.quiver, x.prime
    shapes = [(y.dim[i], x.dim[i]) for i in range(q.n)]
    nvars = sum(r * c for r, c in shapes)
    if nvars == 0:
        return []
    sys = _intertwiner_system(
        x.dim, y.dim, _double_arrows(q), _double_maps(x), _double_maps(y), p
    )
    ker = fo.kernel_basis(sys, p)
    return [_unflatten_graded(ker[:, j], shapes) for j in range(ker.shape[1])]


def hom_pi_dim(x: PiMod, y: PiMod) -> int:
    if x.quiver != y.quiver or x.prime != y.prime:
        raise ValueError("modules live over different quivers or primes")
    q, p = x.quiver, x.prime
    nvars = sum(y.dim[i] * x.dim[i] for i in range(q.n))
    if nvars == 0:
        return 0
    sys = _intertwiner_system(
        x.dim, y.dim, _double_arrows(q), _double_maps(x), _double_maps(y), p
    )
    return nvars - fo.rank(sys, p)


def ext1_pi_dim_cb(x: PiMod, y: PiMod) -> int:
    """Ext dimension from the Crawley-Boevey count; symmetric in (x, y)."""
    val = hom_pi_dim(x, y) + hom_pi_dim(y, x) - sym_form(x.quiver, x.dim, y.dim)
    if val < 0:
        raise RouteMismatchError("negative Ext dimension in the dimension count")
    return val


# ---------------------------------------------------------------------------
# extensions: cocycles, coboundaries, triangular modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cocycle:
    """Connecting blocks of a triangular module.

    fwd[k]: V1_src -> V2_tgt and rev[k]: V1_tgt -> V2_src, one pair per
    arrow of the base quiver.
    """

    fwd: tuple[np.ndarray, ...]
    rev: tuple[np.ndarray, ...]


class ExtSpace:
    """Cocycle space Z and coboundary subspace B; dim Z - dim B is the Ext dimension."""

    def __init__(self, x1: PiMod, x2: PiMod):
        if x1.quiver != x2.quiver or x1.prime != x2.prime:
            raise ValueError("modules live over different quivers or primes")
        self.x1, self.x2 = x1, x2
        q, p = x1.quiver, x1.prime
        self.prime = p
        d1, d2 = x1.dim, x2.dim
        darrows = _double_arrows(q)
        self.shapes = [(d2[t], d1[s]) for s, t in darrows]
        sizes = [r * c for r, c in self.shapes]
        off = np.concatenate([[0], np.cumsum(sizes)])
        nvars = int(off[-1])

        # linearized relation at each vertex, in the connecting blocks
        rows = sum(d2[i] * d1[i] for i in range(q.n))
        sys = fo.zeros_mat(rows, nvars)
        row = 0
        narr = len(q.arrows)
        x1d = _double_maps(x1)
        x2d = _double_maps(x2)
        for i in range(q.n):
            blockrows = d2[i] * d1[i]
            if blockrows:
                for k in range(narr):
                    s, t = q.arrows[k]
                    kf, kr = k, k + narr
                    if t == i:
                        if sizes[kf]:
                            blk = np.kron(fo.identity_mat(d2[i]), x1d[kr].T) % p
                            sys[row : row + blockrows, off[kf] : off[kf + 1]] += blk
                        if sizes[kr]:
                            blk = np.kron(x2d[kf], fo.identity_mat(d1[i])) % p
                            sys[row : row + blockrows, off[kr] : off[kr + 1]] += blk
                    if s == i:
                        if sizes[kr]:
                            blk = np.kron(fo.identity_mat(d2[i]), x1d[kf].T) % p
                            sys[row : row + blockrows, off[kr] : off[kr + 1]] -= blk
                        if sizes[kf]:
                            blk = np.kron(x2d[kr], fo.identity_mat(d1[i])) % p
                            sys[row : row + blockrows, off[kf] : off[kf + 1]] -= blk
            row += blockrows
        self.z_basis = fo.kernel_basis(sys % p, p)
        self.dim_z = self.z_basis.shape[1]

        # coboundaries of graded maps g: V1 -> V2
        gshapes = [(d2[i], d1[i]) for i in range(q.n)]
        cols = []
        for i in range(q.n):
            for r in range(d2[i]):
                for c in range(d1[i]):
                    g = [fo.zeros_mat(*sh) for sh in gshapes]
                    g[i][r, c] = 1
                    cols.append(self._coboundary_vector(g))
        if cols:
            self.b_matrix = np.stack(cols, axis=1)
        else:
            self.b_matrix = fo.zeros_mat(nvars, 0)
        self.dim_b = fo.rank(self.b_matrix, p)
        self.ext_dim = self.dim_z - self.dim_b
        cb = ext1_pi_dim_cb(x1, x2)
        if self.ext_dim != cb:
            raise RouteMismatchError(
                f"cocycle quotient {self.ext_dim} != dimension count {cb}"
            )

    def _coboundary_vector(self, g: list[np.ndarray]) -> np.ndarray:
        """Connecting blocks of the conjugate of the split module by (1, 0; g, 1)."""
        q, p = self.x1.quiver, self.prime
        x1d = _double_maps(self.x1)
        x2d = _double_maps(self.x2)
        blocks = []
        for k, (s, t) in enumerate(_double_arrows(q)):
            val = (
                fo.matmul_mod(g[t], x1d[k], p) - fo.matmul_mod(x2d[k], g[s], p)
            ) % p
            blocks.append(val)
        return _flatten_graded(blocks)

    def cocycle_from_vector(self, vec: np.ndarray) -> Cocycle:
        narr = len(self.x1.quiver.arrows)
        mats = _unflatten_graded(vec, self.shapes)
        return Cocycle(tuple(mats[:narr]), tuple(mats[narr:]))

    def cocycle_vector(self, c: Cocycle) -> np.ndarray:
        return _flatten_graded(list(c.fwd) + list(c.rev))

    def random_class(self, ctx: fo.FieldCtx) -> Cocycle:
        """Generic cocycle: a random combination of the cocycle basis."""
        nvars = self.z_basis.shape[0]
        if self.dim_z == 0:
            return self.cocycle_from_vector(np.zeros(nvars, dtype=np.int64))
        coeffs = fo.random_mat(self.dim_z, 1, ctx)
        vec = fo.matmul_mod(self.z_basis, coeffs, self.prime).reshape(-1)
        return self.cocycle_from_vector(vec)

    def is_cocycle(self, c: Cocycle) -> bool:
        vec = self.cocycle_vector(c)[:, None] % self.prime
        stacked = np.concatenate([self.z_basis, vec], axis=1)
        return fo.rank(stacked, self.prime) == self.dim_z


def ext_space(x1: PiMod, x2: PiMod) -> ExtSpace:
    """Cocycle/coboundary presentation of the first extension space."""
    return ExtSpace(x1, x2)


def build_extension(
    x1: PiMod, x2: PiMod, cls: Cocycle, space: ExtSpace | None = None
) -> PiMod:
    """Triangular module with diagonal (x1, x2) and connecting blocks from cls.

    The result has x2 as a submodule with quotient x1.
    """
    q, p = x1.quiver, x1.prime
    d1, d2 = x1.dim, x2.dim
    if space is None:
        space = ExtSpace(x1, x2)
    if not space.is_cocycle(cls):
        raise ValueError("connecting blocks do not satisfy the linearized relation")
    d = tuple(a + b for a, b in zip(d1, d2))
    fwd, rev = [], []
    for k in range(len(q.arrows)):
        s, t = q.arrows[k]
        big = fo.zeros_mat(d[t], d[s])
        big[: d1[t], : d1[s]] = x1.fwd[k]
        big[d1[t] :, : d1[s]] = cls.fwd[k]
        big[d1[t] :, d1[s] :] = x2.fwd[k]
        fwd.append(big)
        bigr = fo.zeros_mat(d[s], d[t])
        bigr[: d1[s], : d1[t]] = x1.rev[k]
        bigr[d1[s] :, : d1[t]] = cls.rev[k]
        bigr[d1[s] :, d1[t] :] = x2.rev[k]
        rev.append(bigr)
    x = PiMod(q, d, tuple(fwd), tuple(rev), p)
    if not check_pi(x):
        raise RouteMismatchError("triangular module violates the relation")
    return x


# ---------------------------------------------------------------------------
# conormal sampling and rigidity
# ---------------------------------------------------------------------------


def _reverse_system(fwd: QRep) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Linear system cutting out admissible reverse maps over fixed forward maps."""
    q, p = fwd.quiver, fwd.prime
    d = fwd.dim
    shapes = [(d[s], d[t]) for s, t in q.arrows]
    sizes = [r * c for r, c in shapes]
    off = np.concatenate([[0], np.cumsum(sizes)])
    nvars = int(off[-1])
    rows = sum(x * x for x in d)
    sys = fo.zeros_mat(rows, nvars)
    row = 0
    for i in range(q.n):
        blockrows = d[i] * d[i]
        if blockrows:
            for k, (s, t) in enumerate(q.arrows):
                if not sizes[k]:
                    continue
                if t == i:  # + X_k R_k
                    blk = np.kron(fwd.maps[k], fo.identity_mat(d[t])) % p
                    sys[row : row + blockrows, off[k] : off[k + 1]] += blk
                if s == i:  # - R_k X_k
                    blk = np.kron(fo.identity_mat(d[s]), fwd.maps[k].T) % p
                    sys[row : row + blockrows, off[k] : off[k + 1]] -= blk
        row += blockrows
    return sys % p, shapes


def attach_generic_reverse(fwd: QRep, ctx: fo.FieldCtx) -> PiMod:
    """Random reverse maps solving the (linear) relation for fixed forward maps."""
    p = fwd.prime
    sys, shapes = _reverse_system(fwd)
    nvars = sys.shape[1]
    ker = fo.kernel_basis(sys, p)
    if ker.shape[1]:
        coeffs = fo.random_mat(ker.shape[1], 1, ctx)
        vec = fo.matmul_mod(ker, coeffs, p).reshape(-1)
    else:
        vec = np.zeros(nvars, dtype=np.int64)
    x = pimod_from_parts(fwd, _unflatten_graded(vec, shapes))
    if not check_pi(x):
        raise RouteMismatchError("sampled reverse maps violate the relation")
    return x


def conormal_fiber_dim(fwd: QRep) -> int:
    """Dimension of the space of admissible reverse maps over a fixed forward part."""
    sys, shapes = _reverse_system(fwd)
    nvars = sys.shape[1]
    if nvars == 0:
        return 0
    return nvars - fo.rank(sys, fwd.prime)


def sample_conormal(q: Quiver, m: RootMultiset, ctx: fo.FieldCtx) -> PiMod:
    """Generic point of the conormal stratum named by the multiset m."""
    ok, _ = is_dynkin(q)
    if not ok:
        raise NotDynkinError("conormal strata are named by multisets only in ADE type")
    fwd = rep_of_multiset(q, m, ctx)
    return attach_generic_reverse(fwd, ctx)


def is_rigid_module(x: PiMod) -> bool:
    """Whether the endomorphism count matches the open-orbit value."""
    if not check_pi(x):
        raise ValueError("input does not satisfy the relation")
    ok, _ = is_dynkin(x.quiver)
    if not ok and not check_nilpotent(x):
        raise ValueError("rigidity test requires ADE type or a nilpotent module")
    target = dim_g(x.dim) - dim_r_q(x.quiver, x.dim)
    return hom_pi_dim(x, x) == target


@dataclass(frozen=True)
class RigidityReport:
    rigid: bool
    trials: int
    agreement: int  # trials on which a rigid point was sampled


def rigidity_report(
    q: Quiver, m: RootMultiset, ctx: fo.FieldCtx, trials: int = fo.DEFAULT_TRIALS
) -> RigidityReport:
    hits = 0
    for t in range(trials):
        if is_rigid_module(sample_conormal(q, m, ctx.trial(t))):
            hits += 1
    return RigidityReport(hits > 0, trials, hits)


def is_rigid_component(
    q: Quiver, m: RootMultiset, ctx: fo.FieldCtx, trials: int = fo.DEFAULT_TRIALS
) -> bool:
    """Whether some sampled generic point of the component is rigid."""
    return rigidity_report(q, m, ctx, trials).rigid


def dual_pimod(x: PiMod) -> PiMod:
    """Transpose-swap of forward and reverse maps; an involution."""
    fwd = tuple(r.T.copy() for r in x.rev)
    rev = tuple(f.T.copy() for f in x.fwd)
    return PiMod(x.quiver, x.dim, fwd, rev, x.prime)


def orbitmap_coker_dim(x1: PiMod, x2: PiMod, cls: Cocycle) -> int:
    """Cokernel dimension of the differential of the base-change orbit map.

    The differential sends an endomorphism pair (f, g) to the class of the
    blocks g.C - C.f; requires vanishing Hom from x2 to x1.
    """
    if hom_pi_dim(x2, x1) != 0:
        raise ValueError("orbit-map analysis requires Hom(x2, x1) = 0")
    space = ext_space(x1, x2)
    if not space.is_cocycle(cls):
        raise ValueError("connecting blocks do not satisfy the linearized relation")
    p = x1.prime
    q = x1.quiver
    darrows = _double_arrows(q)
    cmats = list(cls.fwd) + list(cls.rev)
    cols = []
    for f in hom_pi_space(x1, x1):
        blocks = [
            (p - fo.matmul_mod(cmats[k], f[s], p)) % p
            for k, (s, _) in enumerate(darrows)
        ]
        cols.append(_flatten_graded(blocks))
    for g in hom_pi_space(x2, x2):
        blocks = [
            fo.matmul_mod(g[t], cmats[k], p) for k, (_, t) in enumerate(darrows)
        ]
        cols.append(_flatten_graded(blocks))
    if cols:
        image = np.stack(cols, axis=1)
        merged = np.concatenate([image, space.b_matrix], axis=1)
        im_mod_b = fo.rank(merged, p) - space.dim_b
    else:
        im_mod_b = 0
    return space.ext_dim - im_mod_b


def kernel_of_surjection(x: PiMod, phi: list[np.ndarray]) -> PiMod:
    """Submodule kernel of a surjection onto a one-dimensional simple.

    `phi` is a graded map whose only nonzero component is a single row at
    the supporting vertex; arrow matrices are restricted to the kernel in
    a completed basis.
    """
    q, p = x.quiver, x.prime
    support = [i for i in range(q.n) if phi[i].shape[0] == 1]
    if len(support) != 1:
        raise ValueError("target must be a simple concentrated at one vertex")
    i = support[0]
    row = phi[i] % p
    if not np.any(row):
        raise ValueError("map onto the simple is not surjective")
    for k, (s, t) in enumerate(q.arrows):
        if t == i and np.any(fo.matmul_mod(row, x.fwd[k], p)):
            raise ValueError("not a module map: forward image escapes the kernel")
        if s == i and np.any(fo.matmul_mod(row, x.rev[k], p)):
            raise ValueError("not a module map: reverse image escapes the kernel")
    bases = []
    for j in range(q.n):
        if j == i:
            bases.append(fo.kernel_basis(row, p))
        else:
            bases.append(fo.identity_mat(x.dim[j]))
    new_d = tuple(b.shape[1] for b in bases)
    fwd, rev = [], []
    for k, (s, t) in enumerate(q.arrows):
        w = fo.matmul_mod(x.fwd[k], bases[s], p)
        fwd.append(fo.solve_matrix(bases[t], w, p))
        wr = fo.matmul_mod(x.rev[k], bases[t], p)
        rev.append(fo.solve_matrix(bases[s], wr, p))
    return PiMod(q, new_d, tuple(fwd), tuple(rev), p)
