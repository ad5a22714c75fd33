"""Small test corpora: base graphs up to isomorphism and all biconing covers."""

from __future__ import annotations

from collections.abc import Iterator
from itertools import combinations, permutations, product

from .biconing import BiconedGraph, bicone
from .graph import Multigraph


def _canonical(n: int, edges) -> tuple:
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


def simple_graphs(n: int) -> list[Multigraph]:
    """One representative per isomorphism class of simple graphs on n vertices."""
    verts = list(range(1, n + 1))
    pairs = list(combinations(range(n), 2))
    seen = {}
    for mask in range(1 << len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        key = _canonical(n, edges)
        if key not in seen:
            seen[key] = edges
    out = []
    for key in sorted(seen, key=lambda k: (len(k), k)):
        out.append(Multigraph(verts, [(verts[u], verts[v]) for u, v in key]))
    return out


def variant_graphs() -> list[Multigraph]:
    """A parallel-edge and a loop variant on four vertices."""
    parallel = Multigraph([1, 2, 3, 4], [(1, 2), (1, 2), (2, 3), (3, 4), (1, 4)])
    looped = Multigraph([1, 2, 3, 4], [(1, 1), (1, 2), (2, 3), (1, 3), (3, 4)])
    return [parallel, looped]


def covers(g: Multigraph) -> Iterator[tuple[frozenset, frozenset]]:
    """Every (A, B) with A | B = V(g): each vertex in A only, B only, or both."""
    verts = list(g.vertices)
    for choice in product((0, 1, 2), repeat=len(verts)):
        a = frozenset(v for v, c in zip(verts, choice) if c in (0, 2))
        b = frozenset(v for v, c in zip(verts, choice) if c in (1, 2))
        yield a, b


def base_corpus(max_vertices: int = 4, variants: bool = True) -> list[Multigraph]:
    graphs = [g for n in range(1, max_vertices + 1) for g in simple_graphs(n)]
    if variants:
        graphs += variant_graphs()
    return graphs


def biconed_corpus(max_vertices: int = 4, variants: bool = True) -> Iterator[BiconedGraph]:
    for g in base_corpus(max_vertices, variants):
        for a, b in covers(g):
            yield bicone(g, a, b)
