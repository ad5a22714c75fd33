"""Graph input parsing and JSON rendering."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .biconing import BiconedGraph, label_key
from .graph import GraphError, Multigraph


class InputError(GraphError):
    """Malformed input; the message carries line and column when known."""


@dataclass(frozen=True)
class GraphInput:
    graph: Multigraph
    alias: dict = field(default_factory=dict)  # edge id -> variable name
    cover_a: tuple | None = None
    cover_b: tuple | None = None


_INT = re.compile(r"-?\d+")


def _label(tok: str):
    return int(tok) if _INT.fullmatch(tok) else tok


def _check_label(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"{where}: vertex labels must be integers or strings, got {x!r}")
    return x


def _parse_alias(raw, n_edges: int) -> dict:
    if raw is None:
        return {}
    if isinstance(raw, list):
        pairs = list(enumerate(raw))
    elif isinstance(raw, dict):
        try:
            pairs = [(int(k), v) for k, v in raw.items()]
        except ValueError:
            raise InputError("alias keys must be edge ids") from None
    else:
        raise InputError("alias must be a list or an object")
    out = {}
    for eid, name in pairs:
        if not (0 <= eid < n_edges):
            raise InputError(f"alias refers to unknown edge id {eid}")
        if not isinstance(name, str) or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise InputError(f"alias name {name!r} is not an identifier")
        out[eid] = name
    if len(set(out.values())) != len(out):
        raise InputError("alias names must be distinct")
    return out


def _from_json(text: str) -> GraphInput:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed graph JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise InputError('graph JSON must be an object with "vertices" and "edges"')
    verts = data["vertices"]
    edges = data["edges"]
    if not isinstance(verts, list) or not isinstance(edges, list):
        raise InputError('"vertices" and "edges" must be lists')
    verts = [_check_label(v, "vertices") for v in verts]
    seen = set()
    for v in verts:
        if v in seen:
            raise InputError(f"duplicate vertex label {v!r}")
        seen.add(v)
    pairs = []
    for k, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise InputError(f"edge {k} must be a two-element list")
        pairs.append(tuple(_check_label(x, f"edge {k}") for x in e))
    try:
        g = Multigraph(verts, pairs)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    cover = {}
    for key in ("A", "B"):
        if key in data:
            if not isinstance(data[key], list):
                raise InputError(f'"{key}" must be a list of vertices')
            cover[key] = tuple(data[key])
    return GraphInput(g, _parse_alias(data.get("alias"), len(pairs)), cover.get("A"), cover.get("B"))


def _from_edge_list(text: str) -> GraphInput:
    verts: set = set()
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        toks = body.split()
        if not toks:
            continue
        if len(toks) > 2:
            col = line.index(toks[2]) + 1
            raise InputError(f"edge list line {lineno}, column {col}: expected 'u v' or a lone vertex")
        labels = [_label(t) for t in toks]
        verts.update(labels)
        if len(labels) == 2:
            pairs.append(tuple(labels))
    return GraphInput(Multigraph(sorted(verts, key=label_key), pairs))


def parse_graph_input(text: str) -> GraphInput:
    """Parse JSON (``{"vertices": [...], "edges": [[u, v], ...]}``) or an edge list.

    JSON may carry an ``alias`` (list by edge id, or ``{id: name}``) and
    cover sets ``A`` and ``B``.  Edge-list lines are ``u v`` or a lone
    vertex; ``#`` starts a comment.  Edge ids follow input position.
    """
    if text.lstrip().startswith(("{", "[")):
        return _from_json(text)
    return _from_edge_list(text)


def parse_graph(text: str) -> Multigraph:
    return parse_graph_input(text).graph


def graph_to_json(g: Multigraph) -> dict:
    """Vertices in rank order, edges listed by id (ids 0..m-1 assumed dense)."""
    by_id = sorted(g.edges, key=lambda e: e.id)
    return {"vertices": list(g.vertices), "edges": [[e.u, e.v] for e in by_id]}


def biconed_to_json(bg: BiconedGraph) -> dict:
    out = graph_to_json(bg.full)
    # kept apart from top-level A/B so the output reads back as a plain graph
    out["cover"] = {"A": list(bg.a_order), "B": [v for v in bg.a_order + bg.abar_order if v in bg.cover_b]}
    out["names"] = {str(k): v for k, v in bg.canonical_names().items()}
    out["t_zero"] = sorted(bg.t_zero())
    red = bg.reduced()
    out["reduced"] = {
        "vertices": list(red.graph.vertices),
        "edges": [[e.id, e.u, e.v, red.provenance[e.id]] for e in sorted(red.graph.edges, key=lambda e: e.id)],
    }
    return out


def dumps(obj) -> str:
    """Deterministic compact JSON."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True)
