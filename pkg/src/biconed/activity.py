"""Internal/external activity, f- and h-vectors, Tutte polynomial."""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from . import _kernels
from .graph import (
    GraphError,
    Multigraph,
    components,
    forest_counts,
    is_connected,
    is_spanning_tree,
    spanning_tree_array,
)


@dataclass(frozen=True)
class ActivityRecord:
    tree: frozenset
    internally_active: frozenset
    internally_passive: frozenset
    externally_active: frozenset
    externally_passive: frozenset


@dataclass(frozen=True)
class HVector:
    entries: tuple

    @property
    def d(self) -> int:
        return len(self.entries) - 1

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def trimmed(self) -> tuple:
        """Entries with trailing zeros removed."""
        e = list(self.entries)
        while len(e) > 1 and e[-1] == 0:
            e.pop()
        return tuple(e)

    def last_nonzero(self) -> int:
        return self.trimmed()[-1]


class TuttePolynomial:
    """Integer polynomial in x, y stored as {(i, j): coefficient}."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients=None):
        self.coefficients = {k: v for k, v in (coefficients or {}).items() if v}

    def __eq__(self, other):
        if not isinstance(other, TuttePolynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def __call__(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self.coefficients.items())

    def __repr__(self):
        return f"TuttePolynomial({self})"

    def __str__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for (i, j), c in sorted(self.coefficients.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
            mono = "*".join(p for p in (_power("x", i), _power("y", j)) if p)
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)

    def x_coefficients(self, y=1) -> list:
        """Coefficients of T(x, y) as a polynomial in x, constant term first."""
        top = max((i for i, _ in self.coefficients), default=0)
        out = [0] * (top + 1)
        for (i, j), c in self.coefficients.items():
            out[i] += c * y**j
        return out

    def to_json(self) -> list:
        return [[i, j, c] for (i, j), c in sorted(self.coefficients.items())]


def _power(var, k):
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def _require_connected(g: Multigraph):
    if not g.vertices or not is_connected(g):
        raise GraphError("graph is disconnected")


def activity_table(g: Multigraph):
    """(trees, codes): tree rows of edge ids and per-edge activity codes.

    ``codes[t, r]`` refers to the edge of rank ``r``; see ``_kernels`` for
    the code values.
    """
    _require_connected(g)
    eu, ev, eid = g.arrays()
    trees = spanning_tree_array(g)
    rank = np.empty(max(eid.max() + 1, 1) if eid.size else 1, dtype=np.int64)
    rank[eid] = np.arange(eid.size)
    codes = _kernels.activity_flags(len(g.vertices), eu, ev, rank[trees] if trees.size else trees)
    return trees, codes


def activity(g: Multigraph, t) -> ActivityRecord:
    """Classify each edge against the spanning tree ``t``.

    A tree edge is internally active iff it is the smallest edge of its
    fundamental bond; a non-tree edge is externally active iff it is the
    smallest of its fundamental circuit.  A loop is its own circuit and
    therefore always externally active.
    """
    t = frozenset(t)
    if not is_spanning_tree(g, t):
        raise GraphError("edge set is not a spanning tree")
    eu, ev, eid = g.arrays()
    row = np.array([[g.rank_of(e) for e in t]], dtype=np.int64).reshape(1, len(t))
    codes = _kernels.activity_flags(len(g.vertices), eu, ev, row)[0]
    groups = {c: frozenset(int(eid[r]) for r in np.flatnonzero(codes == c)) for c in (1, 2, 3, 4)}
    return ActivityRecord(
        t,
        groups[_kernels.INT_ACTIVE],
        groups[_kernels.INT_PASSIVE],
        groups[_kernels.EXT_ACTIVE],
        groups[_kernels.EXT_PASSIVE],
    )


def activity_counts(g: Multigraph):
    """Per spanning tree: (internally active count, externally active count)."""
    _, codes = activity_table(g)
    ia = (codes == _kernels.INT_ACTIVE).sum(axis=1)
    ea = (codes == _kernels.EXT_ACTIVE).sum(axis=1)
    return ia, ea


def h_from_activity(g: Multigraph) -> HVector:
    """h_i = number of spanning trees with exactly i internally passive edges."""
    ia, _ = activity_counts(g)
    d = len(g.vertices) - 1
    counts = np.bincount(d - ia, minlength=d + 1)
    return HVector(tuple(int(c) for c in counts))


def f_vector(g: Multigraph) -> list:
    """f_{-1}, ..., f_{d-1}: acyclic edge subsets counted by size."""
    n = len(g.vertices)
    if n == 0:
        return [1]
    d = n - len(components(g, g.edge_ids))
    return forest_counts(g)[: d + 1]


def h_from_f(f) -> HVector:
    """Coefficients of sum f_{i-1} (t-1)^(d-i) read against t^(d-k)."""
    f = [int(x) for x in f]
    if not f or f[0] != 1:
        raise GraphError("f-vector must start with f_{-1} = 1")
    d = len(f) - 1
    h = [sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1)) for k in range(d + 1)]
    return HVector(tuple(h))


def f_from_h(h) -> list:
    """Inverse of ``h_from_f``."""
    h = list(h)
    d = len(h) - 1
    return [sum(comb(d - k, i - k) * h[k] for k in range(i + 1)) for i in range(d + 1)]


def tutte_from_activity(g: Multigraph) -> TuttePolynomial:
    """Sum over spanning trees of x^(internally active) y^(externally active)."""
    ia, ea = activity_counts(g)
    coeffs: dict = {}
    for i, j in zip(ia.tolist(), ea.tolist()):
        coeffs[(i, j)] = coeffs.get((i, j), 0) + 1
    return TuttePolynomial(coeffs)


def _poly_add(p, q):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + v
    return out


def _poly_shift(p, di, dj):
    return {(i + di, j + dj): v for (i, j), v in p.items()}


def _canon(n, mult):
    """Drop isolated vertices, relabel the rest order-preservingly."""
    used = sorted({x for (a, b) in mult for x in (a, b)})
    idx = {v: i for i, v in enumerate(used)}
    return len(used), tuple(sorted(((idx[a], idx[b]), k) for (a, b), k in mult.items()))


def _connected_without(edges, a, b, skip):
    adj: dict = {}
    for (u, v), _ in edges:
        if (u, v) == skip:
            continue
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        if x == b:
            return True
        for w in adj.get(x, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


@lru_cache(maxsize=None)
def _dc(key):
    n, edges = key
    if not edges:
        return {(0, 0): 1}
    (a, b), k = edges[0]
    rest = dict(edges)
    # contract the whole parallel class: remaining copies become loops
    merged: dict = {}
    for (u, v), c in rest.items():
        if (u, v) == (a, b):
            continue
        u2 = a if u == b else u
        v2 = a if v == b else v
        if u2 == v2:  # pragma: no cover - classes are loop-free by construction
            continue
        pair = (min(u2, v2), max(u2, v2))
        merged[pair] = merged.get(pair, 0) + c
    contracted = _dc(_canon(n, merged))
    if k == 1 and not _connected_without(edges, a, b, (a, b)):
        return _poly_shift(contracted, 1, 0)
    deleted = dict(rest)
    if k == 1:
        del deleted[(a, b)]
    else:
        deleted[(a, b)] = k - 1
    return _poly_add(_dc(_canon(n, deleted)), _poly_shift(contracted, 0, k - 1))


def tutte_deletion_contraction(g: Multigraph) -> TuttePolynomial:
    """Tutte polynomial by deletion-contraction on parallel classes.

    Bridges contribute x, loops y.  The cache key is the exact edge
    multiset after dropping isolated vertices, so a hit always means an
    isomorphic minor.
    """
    r = g.vertex_rank
    loops = 0
    mult: dict = {}
    for e in g.edges:
        a, b = r[e.u], r[e.v]
        if a == b:
            loops += 1
            continue
        pair = (min(a, b), max(a, b))
        mult[pair] = mult.get(pair, 0) + 1
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10_000))
    try:
        poly = _dc(_canon(len(g.vertices), mult))
    finally:
        sys.setrecursionlimit(limit)
    return TuttePolynomial(_poly_shift(poly, 0, loops))


def mobius_coinvariant(g: Multigraph) -> int:
    """T_g(0, 1): spanning trees with no internally active edge."""
    _require_connected(g)
    return tutte_from_activity(g)(0, 1)
