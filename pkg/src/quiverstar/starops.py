"""The component calculus on nilpotent varieties of an ADE quiver.

Irreducible components are named by multisets of positive roots.  The
binary product of two components samples generic points of the named
conormal strata, builds a generic extension at a random connecting class
among those trials that minimize the Ext dimension, and identifies the
result through the decomposition of the forward part.  Randomized answers
carry (trials, agreement) provenance; ties are reported, never broken.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import fieldops as fo
from .errors import NoMajorityError, NotDynkinError
from .pimod import (
    build_extension,
    dual_pimod,
    ext1_pi_dim_cb,
    ext_space,
    forward_rep,
    hom_pi_space,
    is_rigid_component,
    kernel_of_surjection,
    rigidity_report,
    sample_conormal,
)
from .qrep import RootMultiset, decompose
from .quiver import Quiver, is_dynkin, positive_roots

__all__ = [
    "Component",
    "StarResult",
    "associativity_probe",
    "cancellation_probe",
    "crystal_e",
    "crystal_f",
    "dual_component",
    "enumerate_components",
    "oplus_component",
    "star_product",
    "strongly_commute",
    "weakly_commute",
]


@dataclass
class Component:
    """A named component with cached graded dimension and rigidity flag."""

    name: RootMultiset
    grdim: tuple[int, ...]
    rigid: bool | None = None

    @classmethod
    def of(cls, m: RootMultiset) -> "Component":
        return cls(m, m.grdim())


@dataclass(frozen=True)
class StarResult:
    """Product result with provenance for the randomized identification."""

    result: RootMultiset
    trials: int
    agreement: int
    min_ext1: int

    def to_json_dict(self) -> dict:
        return {
            "result": str(self.result),
            "trials": self.trials,
            "agreement": self.agreement,
            "min_ext1": self.min_ext1,
        }


def _require_dynkin(q: Quiver) -> None:
    ok, _ = is_dynkin(q)
    if not ok:
        raise NotDynkinError("component naming requires an ADE quiver")


def enumerate_components(q: Quiver, d) -> list[RootMultiset]:
    """All multisets of positive roots with the given graded dimension."""
    _require_dynkin(q)
    d = q.check_dim(d)
    roots = list(positive_roots(q))
    out: list[RootMultiset] = []

    def descend(idx: int, remaining: tuple[int, ...], acc: dict):
        if not any(remaining):
            out.append(RootMultiset(dict(acc), q.n))
            return
        if idx == len(roots):
            return
        beta = roots[idx]
        max_mult = min(
            (rem // b for rem, b in zip(remaining, beta) if b > 0), default=0
        )
        for mult in range(max_mult, -1, -1):
            if mult:
                acc[beta] = mult
            descend(
                idx + 1,
                tuple(r - mult * b for r, b in zip(remaining, beta)),
                acc,
            )
            acc.pop(beta, None)

    descend(0, d, {})
    return sorted(out, key=str)


def _majority(votes: list, trials: int):
    counts = Counter(votes)
    top = counts.most_common(2)
    if len(top) > 1 and top[0][1] == top[1][1]:
        raise NoMajorityError(
            f"no majority after {trials} trials", candidates=[str(c) for c, _ in top]
        )
    return top[0][0], top[0][1]


def star_product(
    q: Quiver,
    m: RootMultiset,
    n: RootMultiset,
    ctx: fo.FieldCtx,
    trials: int = fo.DEFAULT_TRIALS,
) -> StarResult:
    """Product of the components named m and n."""
    _require_dynkin(q)
    observed: list[tuple[int, RootMultiset]] = []
    for t in range(trials):
        sub = ctx.trial(t)
        x1 = sample_conormal(q, m, sub)
        x2 = sample_conormal(q, n, sub)
        space = ext_space(x1, x2)
        cls = space.random_class(sub)
        x = build_extension(x1, x2, cls, space)
        observed.append((space.ext_dim, decompose(forward_rep(x))))
    min_ext = min(e for e, _ in observed)
    kept = [mm for e, mm in observed if e == min_ext]
    winner, _ = _majority(kept, trials)
    agreement = sum(1 for e, mm in observed if e == min_ext and mm == winner)
    expect = tuple(a + b for a, b in zip(m.grdim(), n.grdim()))
    if winner.grdim() != expect:
        raise NoMajorityError("product result has the wrong graded dimension")
    return StarResult(winner, trials, agreement, min_ext)


def oplus_component(q: Quiver, m: RootMultiset, n: RootMultiset) -> RootMultiset:
    """Name of the direct-sum component: the multiset sum."""
    _require_dynkin(q)
    return m + n


def strongly_commute(
    q: Quiver,
    m: RootMultiset,
    n: RootMultiset,
    ctx: fo.FieldCtx,
    trials: int = fo.DEFAULT_TRIALS,
) -> bool:
    """Whether some sampled pair of points has vanishing Ext between them."""
    _require_dynkin(q)
    for t in range(trials):
        sub = ctx.trial(t)
        x1 = sample_conormal(q, m, sub)
        x2 = sample_conormal(q, n, sub)
        if ext1_pi_dim_cb(x1, x2) == 0:
            return True
    return False


def weakly_commute(
    q: Quiver,
    m: RootMultiset,
    n: RootMultiset,
    ctx: fo.FieldCtx,
    trials: int = fo.DEFAULT_TRIALS,
) -> bool:
    """Whether the two products agree as multisets."""
    left = star_product(q, m, n, ctx, trials).result
    right = star_product(q, n, m, ctx, trials).result
    return left == right


def crystal_f(
    q: Quiver,
    i: int,
    m: RootMultiset,
    ctx: fo.FieldCtx,
    side: str = "left",
    trials: int = fo.DEFAULT_TRIALS,
) -> RootMultiset:
    """Product with the simple component at vertex i, on the chosen side."""
    simple = RootMultiset.simple(i, q.n)
    if side == "left":
        return star_product(q, simple, m, ctx, trials).result
    if side == "right":
        return star_product(q, m, simple, ctx, trials).result
    raise ValueError("side must be 'left' or 'right'")


def crystal_e(
    q: Quiver,
    i: int,
    m: RootMultiset,
    ctx: fo.FieldCtx,
    trials: int = fo.DEFAULT_TRIALS,
) -> RootMultiset | None:
    """Inverse of the left product with the simple at i, or None if not in its image.

    Samples generic points, looks for a surjection onto the simple, and
    decomposes the forward part of its kernel; the majority answer wins.
    """
    _require_dynkin(q)
    from .pimod import hom_pi_dim, simple_pimod

    target = simple_pimod(q, i, ctx.prime)
    votes: list[RootMultiset | None] = []
    for t in range(trials):
        sub = ctx.trial(t)
        x = sample_conormal(q, m, sub)
        basis = hom_pi_space(x, target)
        if not basis:
            votes.append(None)
            continue
        coeffs = fo.random_mat(len(basis), 1, sub).reshape(-1)
        phi = [fo.zeros_mat(*basis[0][v].shape) for v in range(q.n)]
        for c, b in zip(coeffs, basis):
            for v in range(q.n):
                phi[v] = (phi[v] + int(c) * b[v]) % ctx.prime
        if not any(np.any(pv) for pv in phi):
            phi = [b.copy() for b in basis[0]]
        votes.append(decompose(forward_rep(kernel_of_surjection(x, phi))))
    winner, _ = _majority(votes, trials)
    return winner


def dual_component(
    q: Quiver,
    m: RootMultiset,
    ctx: fo.FieldCtx,
    trials: int = fo.DEFAULT_TRIALS,
) -> RootMultiset:
    """Name of the dual component: decompose the forward part of a dual point."""
    _require_dynkin(q)
    votes = []
    for t in range(trials):
        sub = ctx.trial(t)
        x = sample_conormal(q, m, sub)
        votes.append(decompose(forward_rep(dual_pimod(x))))
    winner, _ = _majority(votes, trials)
    return winner


@dataclass(frozen=True)
class AssocProbe:
    left: RootMultiset
    right: RootMultiset
    equal: bool


def associativity_probe(
    q: Quiver,
    m: RootMultiset,
    n: RootMultiset,
    k: RootMultiset,
    ctx: fo.FieldCtx,
    trials: int = fo.DEFAULT_TRIALS,
) -> AssocProbe:
    """Compare the two bracketings of a triple product."""
    left = star_product(
        q, star_product(q, m, n, ctx, trials).result, k, ctx, trials
    ).result
    right = star_product(
        q, m, star_product(q, n, k, ctx, trials).result, ctx, trials
    ).result
    return AssocProbe(left, right, left == right)


def cancellation_probe(
    q: Quiver,
    m_rigid: RootMultiset,
    candidates: list[RootMultiset],
    ctx: fo.FieldCtx,
    trials: int = fo.DEFAULT_TRIALS,
) -> bool:
    """Whether left product with a rigid component separates the candidates."""
    if not is_rigid_component(q, m_rigid, ctx, trials):
        raise ValueError("cancellation requires a rigid left factor")
    seen: dict[RootMultiset, RootMultiset] = {}
    for n in candidates:
        res = star_product(q, m_rigid, n, ctx, trials).result
        if res in seen and seen[res] != n:
            return False
        seen[res] = n
    return True


def component_census(q: Quiver, d) -> int:
    return len(enumerate_components(q, d))


def rigid_component(q: Quiver, m: RootMultiset, ctx: fo.FieldCtx, trials=fo.DEFAULT_TRIALS):
    """Component with its rigidity flag resolved by sampling."""
    comp = Component.of(m)
    comp.rigid = rigidity_report(q, m, ctx, trials).rigid
    return comp
