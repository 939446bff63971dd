"""Named verification suites, runnable from the CLI and the test harness.

Every suite is deterministic given (prime, seed, trials) and returns a
:class:`SuiteResult` with one line per sub-check.  The `acceptance` suite
bundles the full exit-criteria battery.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from . import fieldops as fo
from .coxeter import tau
from .pimod import (
    build_extension,
    ext1_pi_dim_cb,
    ext_space,
    forward_rep,
    hom_pi_dim,
    orbitmap_coker_dim,
    rigidity_report,
    sample_conormal,
)
from .qrep import (
    RootMultiset,
    canonical_indecomposable,
    canonical_rep,
    ext1_q_dim,
    hom_q_dim,
)
from .quiver import builtin_quiver, dim_g, dim_r_q, euler_form, sym_form
from .starops import (
    crystal_e,
    crystal_f,
    enumerate_components,
    star_product,
    strongly_commute,
    weakly_commute,
)
from .taudata import generic_ext1_via_t

__all__ = ["SuiteResult", "available_suites", "run_suite"]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    lines: list[str] = field(default_factory=list)


def _mk(q, text: str) -> RootMultiset:
    return RootMultiset.parse(text, q.n)


def _components_up_to(q, bound: tuple[int, ...]) -> list[RootMultiset]:
    """All multisets with componentwise graded dimension at most `bound`."""
    dims = itertools.product(*(range(b + 1) for b in bound))
    out = []
    for d in dims:
        out.extend(enumerate_components(q, d))
    return sorted(out, key=str)


def _generic_ext1_cb(q, m, n, ctx, trials) -> int:
    best = None
    for t in range(trials):
        sub = ctx.trial(t)
        x = sample_conormal(q, m, sub)
        y = sample_conormal(q, n, sub)
        val = ext1_pi_dim_cb(x, y)
        best = val if best is None else min(best, val)
    return best


# ---------------------------------------------------------------------------
# acceptance criteria
# ---------------------------------------------------------------------------


def suite_star_table(prime: int, seed: int, trials: int) -> SuiteResult:
    """A2 product table, exact, with agreement at least 5 of 7 and under 1s."""
    q = builtin_quiver("A2")
    ctx = fo.FieldCtx(prime, seed)
    # warm the kernels so timing reflects steady state, not JIT compilation
    star_product(q, _mk(q, "[1,0]"), _mk(q, "[0,1]"), ctx, trials)
    t0 = time.perf_counter()
    r1 = star_product(q, _mk(q, "[1,0]"), _mk(q, "[0,1]"), ctx, trials)
    r2 = star_product(q, _mk(q, "[0,1]"), _mk(q, "[1,0]"), ctx, trials)
    elapsed = time.perf_counter() - t0
    lines = [
        f"[1,0]*[0,1] = {r1.result} (agreement {r1.agreement}/{r1.trials})",
        f"[0,1]*[1,0] = {r2.result} (agreement {r2.agreement}/{r2.trials})",
        f"elapsed {elapsed:.3f}s",
    ]
    passed = (
        str(r1.result) == "[1,1]"
        and str(r2.result) == "[0,1]+[1,0]"
        and r1.agreement >= 5
        and r2.agreement >= 5
        and elapsed < 1.0
    )
    return SuiteResult("star-table", passed, lines)


def suite_assoc(prime: int, seed: int, trials: int) -> SuiteResult:
    """Non-associativity of the product on the A2 triple (s1, s2, s1)."""
    from .starops import associativity_probe

    q = builtin_quiver("A2")
    ctx = fo.FieldCtx(prime, seed)
    probe = associativity_probe(
        q, _mk(q, "[1,0]"), _mk(q, "[0,1]"), _mk(q, "[1,0]"), ctx, trials
    )
    lines = [f"left = {probe.left}", f"right = {probe.right}", f"equal = {probe.equal}"]
    passed = (
        str(probe.left) == "[1,0]+[1,1]"
        and str(probe.right) == "[0,1]+[1,0]^2"
        and not probe.equal
    )
    return SuiteResult("assoc", passed, lines)


def _module_pool(q, ctx, count: int):
    """Mixed pool of conormal samples and generic extensions of them."""
    comps = _components_up_to(q, (2,) * q.n)
    pool = []
    k = 0
    while len(pool) < count:
        sub = ctx.trial(1000 + k)
        k += 1
        m = comps[int(sub.rng.integers(0, len(comps)))]
        x = sample_conormal(q, m, sub)
        pool.append(x)
        if len(pool) < count:
            n = comps[int(sub.rng.integers(0, len(comps)))]
            y = sample_conormal(q, n, sub)
            space = ext_space(x, y)
            pool.append(build_extension(x, y, space.random_class(sub), space))
    return pool[:count]


def suite_cb_identity(prime: int, seed: int, trials: int) -> SuiteResult:
    """Hom/Ext dimension count on 100 seeded module pairs; Ext from cocycles."""
    failures = 0
    checked = 0
    for qname in ("A2", "A3"):
        q = builtin_quiver(qname)
        ctx = fo.FieldCtx(prime, seed + checked)
        pool = _module_pool(q, ctx, 10)
        rng = fo.FieldCtx(prime, seed + 99).rng
        for _ in range(50):
            x = pool[int(rng.integers(0, len(pool)))]
            y = pool[int(rng.integers(0, len(pool)))]
            space = ext_space(x, y)
            lhs = (
                hom_pi_dim(x, y)
                - (space.dim_z - space.dim_b)
                + hom_pi_dim(y, x)
            )
            if lhs != sym_form(q, x.dim, y.dim):
                failures += 1
            checked += 1
    lines = [f"checked {checked} pairs, {failures} failures"]
    return SuiteResult("cb", failures == 0 and checked == 100, lines)


def suite_route_agreement(prime: int, seed: int, trials: int) -> SuiteResult:
    """Generic Ext minima agree between the dimension-count and datum routes."""
    bad = []
    total = 0
    for qname, bound in (("A2", (2, 2)), ("A3", (1, 1, 1))):
        q = builtin_quiver(qname)
        comps = _components_up_to(q, bound)
        ctx = fo.FieldCtx(prime, seed)
        for m in comps:
            for n in comps:
                total += 1
                a = _generic_ext1_cb(q, m, n, ctx, trials)
                b = generic_ext1_via_t(q, m, n, ctx, trials)
                if a != b:
                    bad.append(f"{qname}: {m} vs {n}: {a} != {b}")
    lines = [f"compared {total} ordered pairs"] + bad[:5]
    return SuiteResult("routes", not bad, lines)


def suite_ar_formula(prime: int, seed: int, trials: int) -> SuiteResult:
    """Ext over the path algebra pairs with Hom into the translation."""
    bad = 0
    total = 0
    for qname in ("A2", "A3"):
        q = builtin_quiver(qname)
        from .quiver import positive_roots

        indecs = [canonical_indecomposable(q, b, prime) for b in positive_roots(q)]
        for m in indecs:
            tm = tau(m).module
            for n in indecs:
                total += 1
                if ext1_q_dim(m, n) != hom_q_dim(n, tm):
                    bad += 1
    lines = [f"checked {total} ordered pairs of indecomposables, {bad} failures"]
    return SuiteResult("ar", bad == 0 and total == 9 + 36, lines)


def suite_purity(prime: int, seed: int, trials: int) -> SuiteResult:
    """Orbit dimension plus the datum-space dimension fills the ambient space."""
    q = builtin_quiver("A3")
    bad = 0
    total = 0
    seen = set()
    for d in itertools.product(range(7), repeat=3):
        if not 0 < sum(d) <= 6:
            continue
        for m in enumerate_components(q, d):
            if m in seen:
                continue
            seen.add(m)
            rep = canonical_rep(q, m, prime)
            taum = tau(rep).module
            orbit = dim_g(d) - hom_q_dim(rep, rep)
            fiber = hom_q_dim(rep, taum)
            total += 1
            if orbit + fiber != dim_r_q(q, d):
                bad += 1
    lines = [f"checked {total} multisets of total dimension <= 6, {bad} failures"]
    return SuiteResult("purity", bad == 0 and total > 0, lines)


def suite_rigidity(prime: int, seed: int, trials: int) -> SuiteResult:
    """Singleton-root components and simple-supported components are rigid."""
    from .quiver import positive_roots

    q = builtin_quiver("A3")
    ctx = fo.FieldCtx(prime, seed)
    lines = []
    passed = True
    for beta in positive_roots(q):
        rep = rigidity_report(q, RootMultiset.single(beta), ctx, trials)
        ok = rep.rigid and rep.agreement >= 5
        passed = passed and ok
        if not ok:
            lines.append(f"FAILED singleton {list(beta)}: {rep}")
    simples = [tuple(int(j == i) for j in range(q.n)) for i in range(q.n)]
    count = 0
    for mult in itertools.product(range(3), repeat=q.n):
        if not any(mult):
            continue
        m = RootMultiset(
            {simples[i]: mult[i] for i in range(q.n) if mult[i]}, q.n
        )
        rep = rigidity_report(q, m, ctx, trials)
        ok = rep.rigid and rep.agreement >= 5
        passed = passed and ok
        count += 1
        if not ok:
            lines.append(f"FAILED simple-supported {m}: {rep}")
    lines.insert(0, f"checked {len(positive_roots(q))} singletons and {count} simple-supported multisets")
    return SuiteResult("rigidity", passed, lines)


def suite_duality(prime: int, seed: int, trials: int) -> SuiteResult:
    """Dualizing reverses the product order."""
    from .starops import dual_component

    q = builtin_quiver("A2")
    comps = _components_up_to(q, (2, 2))
    ctx = fo.FieldCtx(prime, seed)
    dual_memo: dict[RootMultiset, RootMultiset] = {}

    def dual(m):
        if m not in dual_memo:
            dual_memo[m] = dual_component(q, m, ctx, trials)
        return dual_memo[m]

    bad = []
    total = 0
    for m in comps:
        for n in comps:
            total += 1
            lhs = dual(star_product(q, m, n, ctx, trials).result)
            rhs = star_product(q, dual(n), dual(m), ctx, trials).result
            if lhs != rhs:
                bad.append(f"{m},{n}: {lhs} != {rhs}")
    lines = [f"checked {total} ordered pairs"] + bad[:5]
    return SuiteResult("duality", not bad and total == len(comps) ** 2, lines)


def suite_cancellation(prime: int, seed: int, trials: int) -> SuiteResult:
    """Left product with a simple separates components; kernel route inverts it."""
    q = builtin_quiver("A3")
    ctx = fo.FieldCtx(prime, seed)
    comps = _components_up_to(q, (1, 1, 1))
    alpha1 = RootMultiset.simple(0, q.n)
    images = {}
    collision = False
    for n in comps:
        res = star_product(q, alpha1, n, ctx, trials).result
        if res in images:
            collision = True
        images[res] = n
    inverse_ok = True
    for m in comps:
        fm = crystal_f(q, 0, m, ctx, "left", trials)
        back = crystal_e(q, 0, fm, ctx, trials)
        if back != m:
            inverse_ok = False
    lines = [
        f"{len(comps)} candidates, injective = {not collision}, inverse = {inverse_ok}"
    ]
    return SuiteResult("cancellation", not collision and inverse_ok, lines)


def suite_commutativity(prime: int, seed: int, trials: int) -> SuiteResult:
    """Weak and strong commutativity agree when one side is rigid."""
    q = builtin_quiver("A2")
    ctx = fo.FieldCtx(prime, seed)
    comps = _components_up_to(q, (2, 2))
    rigid = {m: rigidity_report(q, m, ctx, trials).rigid for m in comps}
    bad = []
    total = 0
    for m in comps:
        for n in comps:
            if not (rigid[m] or rigid[n]):
                continue
            total += 1
            w = weakly_commute(q, m, n, ctx, trials)
            s = strongly_commute(q, m, n, ctx, trials)
            if w != s:
                bad.append(f"{m},{n}: weak={w} strong={s}")
    lines = [f"checked {total} pairs with a rigid side"] + bad[:5]
    return SuiteResult("commutativity", not bad and total > 0, lines)


def suite_orbitmap(prime: int, seed: int, trials: int) -> SuiteResult:
    """Self-Ext of an extension splits into the pieces plus twice the coker."""
    q = builtin_quiver("A3")
    ctx = fo.FieldCtx(prime, seed)
    comps = [m for m in _components_up_to(q, (1, 1, 1)) if m.total_dim() > 0]
    done = 0
    bad = 0
    attempt = 0
    while done < 30 and attempt < 500:
        sub = ctx.trial(attempt)
        attempt += 1
        m = comps[int(sub.rng.integers(0, len(comps)))]
        n = comps[int(sub.rng.integers(0, len(comps)))]
        x1 = sample_conormal(q, m, sub)
        x2 = sample_conormal(q, n, sub)
        if hom_pi_dim(x2, x1) != 0:
            continue
        space = ext_space(x1, x2)
        cls = space.random_class(sub)
        coker = orbitmap_coker_dim(x1, x2, cls)
        x = build_extension(x1, x2, cls, space)
        lhs = ext1_pi_dim_cb(x, x)
        rhs = (
            ext1_pi_dim_cb(x1, x1) + ext1_pi_dim_cb(x2, x2) + 2 * coker
        )
        if lhs != rhs:
            bad += 1
        done += 1
    lines = [f"checked {done} triples (target 30), {bad} failures"]
    return SuiteResult("orbitmap", bad == 0 and done == 30, lines)


def suite_census(prime: int, seed: int, trials: int) -> SuiteResult:
    """Component counts match brute-force multiset counting."""
    from .quiver import positive_roots

    q = builtin_quiver("A3")
    roots = list(positive_roots(q))
    bad = []
    spot = None
    for d in itertools.product(range(3), repeat=3):
        count = len(enumerate_components(q, d))
        # independent count: iterate over bounded multiplicity boxes
        bounds = []
        for beta in roots:
            bounds.append(
                min(d[i] // beta[i] for i in range(3) if beta[i]) + 1
            )
        brute = 0
        for mults in itertools.product(*(range(b) for b in bounds)):
            total = tuple(
                sum(mults[j] * roots[j][i] for j in range(len(roots)))
                for i in range(3)
            )
            if total == d:
                brute += 1
        if count != brute:
            bad.append(f"d={d}: {count} != {brute}")
        if d == (1, 1, 1):
            spot = count
    lines = [f"spot d=(1,1,1): {spot} components"] + bad[:5]
    return SuiteResult("census", not bad and spot == 4, lines)


_ACCEPTANCE = [
    suite_star_table,
    suite_assoc,
    suite_cb_identity,
    suite_route_agreement,
    suite_ar_formula,
    suite_purity,
    suite_rigidity,
    suite_duality,
    suite_cancellation,
    suite_commutativity,
    suite_orbitmap,
    suite_census,
]

_SUITES = {
    "star-table": suite_star_table,
    "assoc": suite_assoc,
    "cb": suite_cb_identity,
    "routes": suite_route_agreement,
    "ar": suite_ar_formula,
    "purity": suite_purity,
    "rigidity": suite_rigidity,
    "duality": suite_duality,
    "cancellation": suite_cancellation,
    "commutativity": suite_commutativity,
    "orbitmap": suite_orbitmap,
    "census": suite_census,
}


def available_suites() -> list[str]:
    return sorted(_SUITES) + ["acceptance"]


def run_suite(
    name: str,
    prime: int = fo.DEFAULT_PRIME,
    seed: int = 0,
    trials: int = fo.DEFAULT_TRIALS,
) -> list[SuiteResult]:
    if name == "acceptance":
        return [fn(prime, seed, trials) for fn in _ACCEPTANCE]
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; have {available_suites()}")
    return [_SUITES[name](prime, seed, trials)]
