"""Quiver combinatorics: Euler form, ADE recognition, positive roots.

A quiver is a finite directed graph without loops.  Dimension vectors are
plain integer sequences indexed by the vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NotDynkinError

__all__ = [
    "Quiver",
    "RootSystem",
    "builtin_quiver",
    "euler_form",
    "is_dynkin",
    "load_quiver",
    "opposite",
    "positive_roots",
    "sym_form",
]


@dataclass(frozen=True)
class Quiver:
    """Vertex names plus arrows as (source index, target index) pairs."""

    vertices: tuple[str, ...]
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise ValueError("duplicate vertex names")
        for s, t in self.arrows:
            if not (0 <= s < n and 0 <= t < n):
                raise ValueError(f"arrow endpoint out of range: ({s}, {t})")
            if s == t:
                raise ValueError(f"loop at vertex {self.vertices[s]!r}")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def arrows_into(self, i: int) -> list[int]:
        return [k for k, (_, t) in enumerate(self.arrows) if t == i]

    def arrows_out_of(self, i: int) -> list[int]:
        return [k for k, (s, _) in enumerate(self.arrows) if s == i]

    def is_sink(self, i: int) -> bool:
        return not self.arrows_out_of(i)

    def is_source(self, i: int) -> bool:
        return not self.arrows_into(i)

    def is_acyclic(self) -> bool:
        indeg = [0] * self.n
        for _, t in self.arrows:
            indeg[t] += 1
        stack = [v for v in range(self.n) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        stack.append(t)
        return seen == self.n

    def check_dim(self, d) -> tuple[int, ...]:
        d = tuple(int(x) for x in d)
        if len(d) != self.n:
            raise ValueError(f"dimension vector has length {len(d)}, expected {self.n}")
        if any(x < 0 for x in d):
            raise ValueError("dimension vector must be nonnegative")
        return d


def opposite(q: Quiver) -> Quiver:
    """Reverse every arrow; an involution."""
    return Quiver(q.vertices, tuple((t, s) for s, t in q.arrows))


def euler_form(q: Quiver, d, e) -> int:
    """Sum of d(i)e(i) over vertices minus d(src)e(tgt) over arrows."""
    d = q.check_dim(d)
    e = q.check_dim(e)
    total = sum(di * ei for di, ei in zip(d, e))
    total -= sum(d[s] * e[t] for s, t in q.arrows)
    return total


def sym_form(q: Quiver, d, e) -> int:
    """Symmetrized Euler form; orientation independent."""
    return euler_form(q, d, e) + euler_form(q, e, d)


def _components(q: Quiver) -> list[list[int]]:
    adj: list[set[int]] = [set() for _ in range(q.n)]
    for s, t in q.arrows:
        adj[s].add(t)
        adj[t].add(s)
    seen = [False] * q.n
    comps = []
    for v in range(q.n):
        if seen[v]:
            continue
        stack, comp = [v], []
        seen[v] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _classify_tree(q: Quiver, comp: list[int]) -> str | None:
    """ADE label of one connected component of the underlying graph, or None."""
    edges = [(min(s, t), max(s, t)) for s, t in q.arrows if s in comp or t in comp]
    if len(set(edges)) != len(edges):
        return None  # parallel edges: isotropic direction exists
    if len(edges) != len(comp) - 1:
        return None  # not a tree
    deg = {v: 0 for v in comp}
    for s, t in edges:
        deg[s] += 1
        deg[t] += 1
    branch = [v for v in comp if deg[v] >= 3]
    if not branch:
        return f"A{len(comp)}"
    if len(branch) > 1 or deg[branch[0]] > 3:
        return None
    # arm lengths from the unique trivalent vertex
    adj = {v: [] for v in comp}
    for s, t in edges:
        adj[s].append(t)
        adj[t].append(s)
    arms = []
    for start in adj[branch[0]]:
        length, prev, cur = 1, branch[0], start
        while deg[cur] == 2:
            nxt = [w for w in adj[cur] if w != prev][0]
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{len(comp)}"
    if arms == [1, 2, 2]:
        return "E6"
    if arms == [1, 2, 3]:
        return "E7"
    if arms == [1, 2, 4]:
        return "E8"
    return None


def is_dynkin(q: Quiver) -> tuple[bool, str | None]:
    """Whether the underlying graph is ADE, plus the type label when it is.

    Disconnected quivers pass when every component does; the label then
    joins the component labels with '+'.
    """
    if q.n == 0:
        return False, None
    labels = []
    for comp in _components(q):
        label = _classify_tree(q, comp)
        if label is None:
            return False, None
        labels.append(label)
    return True, "+".join(labels)


class RootSystem:
    """Positive roots of an ADE quiver, sorted lexicographically."""

    def __init__(self, roots: list[tuple[int, ...]]):
        self.roots: tuple[tuple[int, ...], ...] = tuple(sorted(roots))
        self._index = {r: k for k, r in enumerate(self.roots)}

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __contains__(self, vec) -> bool:
        return tuple(int(x) for x in vec) in self._index

    def id_of(self, vec) -> int:
        return self._index[tuple(int(x) for x in vec)]


@lru_cache(maxsize=None)
def positive_roots(q: Quiver) -> RootSystem:
    """All dimension vectors with unit Tits form value.

    Grown from the simple roots by adding one simple root at a time; in
    ADE type every positive root is reachable that way.
    """
    ok, _ = is_dynkin(q)
    if not ok:
        raise NotDynkinError("positive roots require an ADE quiver")
    n = q.n
    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for beta in frontier:
            for alpha in simples:
                gamma = tuple(b + a for b, a in zip(beta, alpha))
                if gamma not in found and euler_form(q, gamma, gamma) == 1:
                    found.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    return RootSystem(sorted(found))


def _path_quiver(k: int) -> Quiver:
    verts = tuple(str(i + 1) for i in range(k))
    return Quiver(verts, tuple((i, i + 1) for i in range(k - 1)))


_BUILTINS = {
    "A2": _path_quiver(2),
    "A3": _path_quiver(3),
    "A4": _path_quiver(4),
    # three outer vertices feeding the center, which is listed last
    "D4": Quiver(("1", "2", "3", "4"), ((0, 3), (1, 3), (2, 3))),
}


def builtin_quiver(name: str) -> Quiver:
    try:
        return _BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown builtin quiver {name!r}; have {sorted(_BUILTINS)}")


def quiver_from_dict(data: dict) -> Quiver:
    verts = tuple(str(v) for v in data["vertices"])
    pos = {v: i for i, v in enumerate(verts)}
    arrows = tuple((pos[str(s)], pos[str(t)]) for s, t in data["arrows"])
    return Quiver(verts, arrows)


def load_quiver(spec: str) -> Quiver:
    """Builtin name or path to a JSON file {"vertices": [...], "arrows": [...]}."""
    if spec in _BUILTINS:
        return _BUILTINS[spec]
    with open(spec) as fh:
        return quiver_from_dict(json.load(fh))


def dim_r_q(q: Quiver, d) -> int:
    """Dimension of the space of representations with dimension vector d."""
    d = q.check_dim(d)
    return sum(d[s] * d[t] for s, t in q.arrows)


def dim_g(d) -> int:
    """Dimension of the grading-preserving automorphism group."""
    return int(sum(int(x) * int(x) for x in d))


def simple_reflection(q: Quiver, i: int, d) -> tuple[int, ...]:
    """Reflect a dimension vector in the simple root at vertex i."""
    d = q.check_dim(d)
    alpha = tuple(int(j == i) for j in range(q.n))
    c = sym_form(q, d, alpha)
    return tuple(x - c * a for x, a in zip(d, alpha))


def as_vec(d) -> np.ndarray:
    return np.asarray(d, dtype=np.int64)
