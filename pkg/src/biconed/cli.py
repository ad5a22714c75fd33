"""Command-line interface: ``biconed <command> [options]``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .activity import (
    f_vector,
    h_from_activity,
    h_from_f,
    mobius_coinvariant,
    tutte_deletion_contraction,
    tutte_from_activity,
)
from .biconing import FAMILIES, BiconedGraph, bicone, gen_family
from .corpus import base_corpus, covers
from .forests import format_monomial, parse_monomial, phi, phi1, phi_inv
from .graph import GraphError, Multigraph, components, count_spanning_trees_oracle
from .io import GraphInput, InputError, _label, biconed_to_json, dumps, parse_graph_input
from .multicomplex import degree_sequence, enumerate_2erf, verify_stanley

COMMANDS = (
    "hvector",
    "tutte",
    "mobius",
    "bicone",
    "gen",
    "map",
    "unmap",
    "multicomplex",
    "verify-stanley",
    "sweep",
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class CapExceeded(GraphError):
    pass


# ------------------------------------------------------------ input


def _read_source(src: str) -> str:
    if src == "-":
        return sys.stdin.read()
    if src.lstrip().startswith("{"):
        return src
    try:
        return Path(src).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {src}: {exc.strerror}") from None


def _split(text: str | None) -> list:
    if text is None:
        return []
    return [_label(t.strip()) for t in text.split(",") if t.strip()]


def _load(args) -> GraphInput | None:
    if args.graph is None:
        return None
    return parse_graph_input(_read_source(args.graph))


def _biconed(args) -> tuple[BiconedGraph, dict]:
    """The biconed graph named by --family/--params or by a graph plus covers."""
    if args.family == "coned":
        gi = _load(args)
        if gi is None:
            raise InputError("the coned family takes an input graph")
        return gen_family("coned", [gi.graph]), gi.alias
    if args.family:
        if args.graph is not None:
            raise InputError("give either a graph or --family, not both")
        return gen_family(args.family, _split(args.params)), {}
    gi = _load(args)
    if gi is None:
        raise InputError("no input graph: pass a path, '-' for stdin, inline JSON, or --family")
    a = _split(args.a) if args.a is not None else gi.cover_a
    b = _split(args.b) if args.b is not None else gi.cover_b
    if a is None or b is None:
        raise InputError("cover sets missing: pass --a and --b or put A and B in the graph JSON")
    return bicone(gi.graph, a, b), gi.alias


def _plain_graph(args) -> Multigraph:
    """A graph for the matroid commands; a biconed input yields its full graph."""
    if args.family or args.a is not None or args.b is not None:
        return _biconed(args)[0].full
    gi = _load(args)
    if gi is None:
        raise InputError("no input graph: pass a path, '-' for stdin, inline JSON, or --family")
    if gi.cover_a is not None and gi.cover_b is not None:
        return bicone(gi.graph, gi.cover_a, gi.cover_b).full
    return gi.graph


def _guard(g: Multigraph, cap: int) -> int:
    count = count_spanning_trees_oracle(g)
    if count > cap:
        raise CapExceeded(f"spanning-tree count {count} exceeds --cap {cap}")
    return count


def _require_connected(g: Multigraph):
    if not g.vertices or len(components(g, g.edge_ids)) != 1:
        raise InputError("graph is disconnected")


# ------------------------------------------------------------ commands


def _h_from_tutte(g: Multigraph, d: int) -> list:
    """h_k is the coefficient of x^(d-k) in T(x, 1)."""
    xs = tutte_deletion_contraction(g).x_coefficients(1)
    xs += [0] * (d + 1 - len(xs))
    return [xs[d - k] for k in range(d + 1)]


def cmd_hvector(args):
    g = _plain_graph(args)
    _require_connected(g)
    _guard(g, args.cap)
    f = f_vector(g)
    d = len(g.vertices) - 1
    methods = {
        "from_f": list(h_from_f(f)),
        "from_activity": list(h_from_activity(g)),
        "from_tutte": _h_from_tutte(g, d),
    }
    agree = len({tuple(v) for v in methods.values()}) == 1
    return {"f": f, "h": methods["from_activity"], "methods_agree": agree, "methods": methods}, EXIT_OK


def cmd_tutte(args):
    g = _plain_graph(args)
    _require_connected(g)
    _guard(g, args.cap)
    ta = tutte_from_activity(g)
    td = tutte_deletion_contraction(g)
    return {
        "tutte": ta.to_json(),
        "polynomial": str(ta),
        "methods_agree": ta == td,
        "spanning_trees": ta(1, 1),
    }, EXIT_OK


def cmd_mobius(args):
    g = _plain_graph(args)
    _require_connected(g)
    _guard(g, args.cap)
    h = h_from_activity(g)
    return {
        "mobius_coinvariant": mobius_coinvariant(g),
        "h_d": h[h.d],
        "h_last_nonzero": h.last_nonzero(),
        "tutte_0_1": tutte_deletion_contraction(g)(0, 1),
    }, EXIT_OK


def cmd_bicone(args):
    bg, _ = _biconed(args)
    return biconed_to_json(bg), EXIT_OK


def cmd_gen(args):
    if not args.family:
        raise InputError("gen needs --family")
    bg, _ = _biconed(args)
    out = {"family": args.family, "params": _split(args.params)}
    out.update(biconed_to_json(bg))
    return out, EXIT_OK


def _names(bg: BiconedGraph, alias: dict) -> dict:
    return {eid: alias[eid] for eid in alias if eid in bg.full.edge}


def cmd_map(args):
    bg, alias = _biconed(args)
    if args.tree is None:
        raise InputError("map needs --tree with comma-separated edge ids or alias names")
    lookup = {v: k for k, v in alias.items()}
    tree = []
    for tok in args.tree.split(","):
        tok = tok.strip()
        if tok in lookup:
            tree.append(lookup[tok])
        elif tok.isdigit():
            tree.append(int(tok))
        elif tok.startswith("e") and tok[1:].isdigit():
            tree.append(int(tok[1:]))
        elif tok:
            raise InputError(f"unknown edge {tok!r} in --tree")
    r = phi1(bg, tree)
    m = phi(bg, tree)
    names = bg.canonical_names()
    return {
        "tree": sorted(tree),
        "birooted": {
            "support": sorted(r.support),
            "roots": sorted((names[v] for v in r.roots), key=_name_key),
        },
        "monomial": format_monomial(m, _names(bg, alias)),
        "degree": sum(k for _, k in m),
    }, EXIT_OK


def _name_key(s: str):
    if s == "0bar":
        return (0, 0)
    return (1 + s.endswith("bar"), int(s.removesuffix("bar")))


def cmd_unmap(args):
    bg, alias = _biconed(args)
    if args.monomial is None:
        raise InputError("unmap needs --monomial")
    m = parse_monomial(args.monomial, _names(bg, alias))
    t = phi_inv(bg, m)
    return {"monomial": format_monomial(m, _names(bg, alias)), "tree": sorted(t)}, EXIT_OK


def cmd_multicomplex(args):
    bg, alias = _biconed(args)
    _guard(bg.full, args.cap)
    s = enumerate_2erf(bg)
    names = _names(bg, alias)
    return {
        "size": len(s),
        "degree_sequence": degree_sequence(s),
        "monomials": [format_monomial(m, names) for m in s.sorted()],
    }, EXIT_OK


def _report(bg: BiconedGraph, args) -> dict:
    rep = verify_stanley(bg, bijection_limit=args.bijection_limit)
    rep.pop("seconds")
    return rep


def cmd_verify(args):
    bg, _ = _biconed(args)
    _guard(bg.full, args.cap)
    rep = _report(bg, args)
    return rep, EXIT_OK if rep["status"] == "PASS" else EXIT_FAIL


def cmd_sweep(args):
    graphs = base_corpus(args.base_vertices, variants=not args.no_variants)
    rng = np.random.default_rng(args.seed)
    rows = []
    for gi, g in enumerate(graphs):
        pairs = list(covers(g))
        if args.covers == "random":
            pick = rng.choice(len(pairs), size=min(args.samples, len(pairs)), replace=False)
            pairs = [pairs[k] for k in sorted(pick.tolist())]
        for a, b in pairs:
            bg = bicone(g, a, b)
            _guard(bg.full, args.cap)
            rep = _report(bg, args)
            rows.append(
                {
                    "graph": gi,
                    "vertices": list(g.vertices),
                    "edges": [[e.u, e.v] for e in sorted(g.edges, key=lambda e: e.id)],
                    "A": list(bg.a_order),
                    "B": [v for v in g.vertices if v in b],
                    "status": rep["status"],
                    "h": rep["h"]["from_activity"],
                    "trees": rep["counts"]["spanning_trees"],
                    "first_failure": rep["first_failure"],
                }
            )
    failed = sum(r["status"] != "PASS" for r in rows)
    out = {"instances": len(rows), "failed": failed, "rows": rows}
    return out, EXIT_FAIL if failed else EXIT_OK


HANDLERS = {
    "hvector": cmd_hvector,
    "tutte": cmd_tutte,
    "mobius": cmd_mobius,
    "bicone": cmd_bicone,
    "gen": cmd_gen,
    "map": cmd_map,
    "unmap": cmd_unmap,
    "multicomplex": cmd_multicomplex,
    "verify-stanley": cmd_verify,
    "sweep": cmd_sweep,
}


# ------------------------------------------------------------ output


def _text(command: str, out: dict) -> str:
    if command == "multicomplex":
        lines = [f"size: {out['size']}", f"degree_sequence: {dumps(out['degree_sequence'])}"]
        return "\n".join(lines + out["monomials"])
    if command == "sweep":
        lines = []
        for r in out["rows"]:
            lines.append(
                f"{r['status']}  graph={r['graph']} edges={dumps(r['edges'])} "
                f"A={dumps(r['A'])} B={dumps(r['B'])} h={dumps(r['h'])}"
            )
        lines.append(f"{out['instances']} instances, {out['failed']} failed")
        return "\n".join(lines)
    return "\n".join(f"{k}: {v if isinstance(v, str) else dumps(v)}" for k, v in out.items())


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="biconed", description="h-vectors and multicomplexes of biconed graphs")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("graph", nargs="?", help="graph file, '-' for stdin, or inline JSON")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--cap", type=_positive, default=10**6, help="refuse graphs with more spanning trees")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--family", choices=FAMILIES)
        sp.add_argument("--params", help="comma-separated family parameters")
        sp.add_argument("--a", help="comma-separated vertices of A")
        sp.add_argument("--b", help="comma-separated vertices of B")
        if name == "map":
            sp.add_argument("--tree", help="comma-separated edge ids or alias names")
        if name == "unmap":
            sp.add_argument("--monomial", help="e.g. e3^2*e5 or alias names")
        if name in ("verify-stanley", "sweep"):
            sp.add_argument(
                "--bijection-limit",
                type=int,
                default=50_000,
                help="run tree-by-tree bijection checks up to this many trees",
            )
        if name == "sweep":
            sp.add_argument("--base-vertices", type=int, default=4)
            sp.add_argument("--covers", choices=("all", "random"), default="all")
            sp.add_argument("--samples", type=_positive, default=3, help="covers per graph with --covers random")
            sp.add_argument("--no-variants", action="store_true", help="skip the parallel-edge and loop graphs")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, code = HANDLERS[args.command](args)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(out) if args.format == "json" else _text(args.command, out)
    sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
