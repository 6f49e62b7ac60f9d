"""``sniplab`` command line.

Every subcommand prints a short human table followed by one JSON document
(sorted keys).  ``--out FILE`` additionally writes the JSON to a file.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import constructions, witnesses, rgraph, snipcore, xixi
from .corpus import default_seed
from .errors import ParseError, SnipLabError
from .ratmat import RationalMatrix, nullity, parse_rational, schur_complement
from .rgraph import RootedGraph


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits on its own otherwise
        raise UsageError(message)


# input helpers ----------------------------------------------------------------


def _read_json(path: str) -> object:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})") from exc


def load_matrix(path: str) -> RationalMatrix:
    return RationalMatrix.from_json(_read_json(path))


def load_graph(source: str, root: int | None) -> RootedGraph:
    """JSON file path, or a graph6 string (optionally in a file ending ``.g6``)."""
    if source.endswith(".json"):
        g = RootedGraph.from_json(_read_json(source))
        return g.with_root(root) if root is not None else g
    text = source
    if source.endswith(".g6"):
        try:
            with open(source, encoding="ascii") as fh:
                text = fh.readline().strip()
        except OSError as exc:
            raise UsageError(f"cannot read {source}: {exc.strerror}") from exc
    return rgraph.from_graph6(text, root or 0)


def _parse_ints(text: str, flag: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from exc


def _emit(args, table: list[str], payload: object) -> None:
    for line in table:
        print(line)
    doc = json.dumps(payload, sort_keys=True, indent=None if args.compact else 2)
    print(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc + "\n")


def _grid(args) -> xixi.SearchGrid:
    kw = {}
    if args.diag:
        kw["diagonal_values"] = tuple(parse_rational(x) for x in args.diag.split(","))
    if args.edges:
        kw["edge_values"] = tuple(parse_rational(x) for x in args.edges.split(","))
    if args.samples:
        seed = args.seed if args.seed is not None else default_seed()
        return xixi.SearchGrid(mode="randomized", sample_count=args.samples, seed=seed, **kw)
    return xixi.SearchGrid(**kw)


# subcommands ------------------------------------------------------------------


def cmd_pair(args) -> int:
    A = load_matrix(args.matrix)
    p = snipcore.nullity_pair(A, args.index)
    _emit(args, [f"{p} {p.index_type.value}"],
          {"pair": [p.k, p.l], "index": p.index_type.value})
    return 0


def cmd_sap(args) -> int:
    A = load_matrix(args.matrix)
    g = load_graph(args.graph, args.root)
    direct = snipcore.has_sap(A, g)
    recipe = snipcore.has_sap_recipe(A, g)
    _emit(args, [f"sap: {str(direct).lower()}"], {"sap": direct, "sap_recipe": recipe})
    return 0 if direct == recipe else 1


def cmd_snip(args) -> int:
    A = load_matrix(args.matrix)
    g = load_graph(args.graph, args.root)
    i = args.index if args.index is not None else g.root
    methods = list(snipcore.METHODS) if args.method == "all" else [args.method]
    verdicts = {m: snipcore.METHODS[m](A, g, i) for m in methods}
    p = snipcore.nullity_pair(A, i)
    table = [f"pair {p} {p.index_type.value}"] + [f"{m:>7}: {str(v).lower()}" for m, v in verdicts.items()]
    agree = len(set(verdicts.values())) == 1
    _emit(args, table, {"pair": [p.k, p.l], "index": p.index_type.value,
                        "snip": verdicts, "agree": agree})
    if not agree:
        print("error: SNIP characterisations disagree", file=sys.stderr)
        return 1
    return 0


def cmd_recipe(args) -> int:
    N = load_matrix(args.matrix)
    g = load_graph(args.graph, args.root)
    full = snipcore.gives_full_recipe(N, g)
    _emit(args, [f"full recipe: {str(full).lower()}"], {"full_recipe": full})
    return 0


def cmd_schur(args) -> int:
    A = load_matrix(args.matrix)
    alpha = _parse_ints(args.alpha, "--alpha")
    S = schur_complement(A, alpha)
    _emit(args, [f"null(A) = {nullity(A)}, null(A/A[alpha]) = {nullity(S)}"], S.to_json())
    return 0


def cmd_minor(args) -> int:
    host = load_graph(args.host, args.host_root)
    pattern = load_graph(args.pattern, args.pattern_root)
    model = rgraph.minor_model(host, pattern, rooted=not args.unrooted)
    found = model is not None
    payload = {"contains": found,
               "branch_sets": None if model is None else {str(v): sorted(bs) for v, bs in sorted(model.items())}}
    _emit(args, [f"contains: {str(found).lower()}"], payload)
    return 0


def cmd_xixi(args) -> int:
    g = load_graph(args.graph, args.root)
    seed = args.seed if args.seed is not None else default_seed()
    grid = _grid(args) if (args.diag or args.edges) else None
    rep = xixi.xixi_minor_based(g, grid, budget=args.budget, seed=seed)
    table = [f"minor value      {rep.minor_value}{' (saturated, true value may exceed 5)' if rep.saturated else ''}",
             f"certified lower  {rep.certified_lower}",
             f"edge bound ok    {str(rep.edge_bound_ok).lower()}"]
    _emit(args, table, rep.to_json())
    return 0


def cmd_enumerate(args) -> int:
    g = load_graph(args.graph, args.root)
    found = xixi.enumerate_pairs(g, _grid(args))
    table = [f"{str(p):>7} {'snip' if s else '-'}" for p, s in found]
    payload = {"pairs": [{"pair": [p.k, p.l], "snip": s, "witness": c.matrix.to_json()}
                         for (p, s), c in found.items()],
               "note": "sound but complete only relative to the grid"}
    _emit(args, table, payload)
    return 0


def cmd_search(args) -> int:
    g = load_graph(args.graph, args.root)
    kl = _parse_ints(args.pair, "--pair")
    if len(kl) != 2:
        raise UsageError("--pair: expected k,l")
    try:
        target = snipcore.NullityPair(*kl)
    except ValueError as exc:
        raise UsageError(f"--pair: {exc}") from exc
    cert = xixi.search_certificate(g, target, args.snip, _grid(args), workers=args.workers)
    if cert is None:
        _emit(args, ["not found in grid (unknown, not impossible)"], {"found": False})
    else:
        _emit(args, [f"found {cert.pair} snip={str(cert.snip).lower()}"],
              {"found": True, "certificate": cert.to_json()})
    return 0


def verify_paper_report() -> dict:
    records = []
    for mid in constructions.PAPER_IDS:
        g, A = constructions.paper_matrix(mid)
        cuts = witnesses.CUT_VERTICES.get(mid, ())
        for v in range(g.n):
            c = snipcore.certify(A, g.with_root(v))
            records.append({"id": mid, "vertex": v, "cut_vertex": v in cuts,
                            "pair": [c.pair.k, c.pair.l], "snip_direct": c.snip_direct,
                            "snip_cases": c.snip_cases, "snip_recipe": c.snip_recipe})
    audit = []
    for s in range(6):
        for member in rgraph.minimal_minor_family(s):
            scores = [xixi.minor_value(h) for h in rgraph.one_step_minors(member)]
            audit.append({"s": s, "graph": member.to_json(), "value": xixi.minor_value(member),
                          "max_minor_value": max(scores, default=-1)})
    non_cut = [r for r in records if not r["cut_vertex"]]
    ok = (all(r["pair"] == [3, 2] for r in non_cut)
          and all(r["snip_direct"] and r["snip_cases"] and r["snip_recipe"] for r in non_cut)
          and all(a["value"] == a["s"] and a["max_minor_value"] < a["s"] for a in audit))
    return {"matrices": records, "minimality_audit": audit, "ok": ok}


def cmd_verify_paper(args) -> int:
    rep = verify_paper_report()
    table = [f"{r['id']:>3} v{r['vertex']} {'cut ' if r['cut_vertex'] else '    '}"
             f"({r['pair'][0]},{r['pair'][1]}) snip={str(r['snip_direct']).lower()}"
             for r in rep["matrices"]]
    table.append(f"minimality audit: {len(rep['minimality_audit'])} members, ok={str(rep['ok']).lower()}")
    _emit(args, table, rep)
    return 0 if rep["ok"] else 1


def cmd_staircase(args) -> int:
    A = load_matrix(args.matrix)
    g = load_graph(args.graph, args.root) if args.graph else None
    i = args.index
    start = snipcore.nullity_pair(A, i)
    steps = constructions.staircase(A, i, g)
    table = [f"start {start}"] + [f"{s.label():>10} -> {s.pair}" for s in steps]
    _emit(args, table, {"start": [start.k, start.l], "steps": [s.to_json() for s in steps]})
    return 0


# parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="also write the JSON document to this file")
    common.add_argument("--compact", action="store_true", help="single-line JSON")

    gridp = _Parser(add_help=False)
    gridp.add_argument("--diag", help="comma-separated diagonal values (default -2..2)")
    gridp.add_argument("--edges", help="comma-separated nonzero edge values (default 1,-1)")
    gridp.add_argument("--samples", type=int, default=0, help="randomized mode with this many samples")
    gridp.add_argument("--seed", type=int, default=None, help="seed (default: SNIPLAB_SEED or built-in)")

    def graph_args(p, required=True):
        p.add_argument("-g", "--graph", required=required, help="graph JSON file or graph6 string/.g6 file")
        p.add_argument("--root", type=int, default=None, help="root vertex (overrides JSON root)")

    p = _Parser(prog="sniplab", description="Nullity pairs, SAP, i-SNIP and xixi on rooted graphs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("pair", parents=[common], help="nullity pair and index type")
    s.add_argument("-m", "--matrix", required=True)
    s.add_argument("-i", "--index", type=int, required=True)
    s.set_defaults(func=cmd_pair)

    s = sub.add_parser("sap", parents=[common], help="Strong Arnold Property")
    s.add_argument("-m", "--matrix", required=True)
    graph_args(s)
    s.set_defaults(func=cmd_sap)

    s = sub.add_parser("snip", parents=[common], help="i-SNIP verdict")
    s.add_argument("-m", "--matrix", required=True)
    graph_args(s)
    s.add_argument("-i", "--index", type=int, default=None, help="defaults to the graph root")
    s.add_argument("--method", choices=["direct", "cases", "recipe", "all"], default="all")
    s.set_defaults(func=cmd_snip)

    s = sub.add_parser("recipe", parents=[common], help="full-recipe test for a kernel basis")
    s.add_argument("-m", "--matrix", required=True, help="basis matrix (n x m)")
    graph_args(s)
    s.set_defaults(func=cmd_recipe)

    s = sub.add_parser("schur", parents=[common], help="Schur complement A/A[alpha]")
    s.add_argument("-m", "--matrix", required=True)
    s.add_argument("--alpha", required=True, help="comma-separated indices")
    s.set_defaults(func=cmd_schur)

    s = sub.add_parser("minor", parents=[common], help="rooted minor containment")
    s.add_argument("--host", required=True)
    s.add_argument("--pattern", required=True)
    s.add_argument("--host-root", type=int, default=None)
    s.add_argument("--pattern-root", type=int, default=None)
    s.add_argument("--unrooted", action="store_true")
    s.set_defaults(func=cmd_minor)

    s = sub.add_parser("xixi", parents=[common, gridp], help="minor-based xixi with certified lower bound")
    graph_args(s)
    s.add_argument("--budget", type=int, default=xixi.DEFAULT_BUDGET)
    s.set_defaults(func=cmd_xixi)

    s = sub.add_parser("enumerate", parents=[common, gridp], help="all nullity pairs found in the grid")
    graph_args(s)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("search", parents=[common, gridp], help="search a witness for one pair")
    graph_args(s)
    s.add_argument("--pair", required=True, help="k,l")
    s.add_argument("--snip", action="store_true", help="require i-SNIP")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify-paper", parents=[common], help="T3 matrices and minimality audit")
    s.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("staircase", parents=[common], help="walk SW/West/South steps down to (0,0)")
    s.add_argument("-m", "--matrix", required=True)
    s.add_argument("-i", "--index", type=int, required=True)
    graph_args(s, required=False)
    s.set_defaults(func=cmd_staircase)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing subcommand")
        func: Callable = args.func
        return func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SnipLabError as exc:
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
