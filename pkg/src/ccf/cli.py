"""``ccf`` command line: catalog, group inspection, verification, expression evaluation."""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__, braid, catalog, expr, verify
from .groups import GroupError, automorphism_group, inner_automorphism_group, subgroup, subgroups, lattice_dot
from .quaternion import RatioConvention

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _group(name: str):
    try:
        return catalog.build(name)
    except catalog.UnknownGroup:
        raise UsageError(f"unknown group {name!r}; see `ccf catalog list`") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def cmd_catalog(args, out) -> int:
    out.write("\n".join(catalog.catalog_lines()) + "\n")
    return EXIT_OK


def _show_markdown(G) -> str:
    lines = [f"# {G.name}", "", f"order {G.order}, {G.kind}", "", "| id | element | order |", "|---|---|---|"]
    for g in range(G.order):
        lines.append(f"| {g} | {G.labels[g]} | {G.element_orders[g]} |")
    return "\n".join(lines) + "\n"


def _table_markdown(G) -> str:
    head = "| · | " + " | ".join(G.labels) + " |"
    lines = [head, "|" + "---|" * (G.order + 1)]
    for g in range(G.order):
        lines.append(f"| **{G.labels[g]}** | " + " | ".join(G.labels[x] for x in G.table[g]) + " |")
    return "\n".join(lines) + "\n"


def cmd_group(args, out) -> int:
    G = _group(args.name)
    as_json = args.format == "json"
    if args.sub == "show":
        out.write(_dump(G.to_json()) if as_json else _show_markdown(G))
    elif args.sub == "table":
        out.write(_dump({"name": G.name, "labels": list(G.labels), "table": [list(r) for r in G.table]}) if as_json else _table_markdown(G))
    elif args.sub == "aut":
        A = automorphism_group(G)
        In, _ = inner_automorphism_group(G)
        kind = catalog.identify(A)
        iso = f"isomorphic to {kind}" if kind else "isomorphism type not in catalog"
        if as_json:
            out.write(_dump({"group": G.name, "order": A.order, "isomorphic_to": kind, "inner_order": In.order, "automorphisms": list(A.labels)}))
        else:
            out.write(f"Aut({G.name}): order {A.order}, {iso}; In({G.name}) has order {In.order}\n")
    elif args.sub == "subgroups":
        subs = subgroups(G)
        rows = []
        for S in subs:
            rows.append({"order": len(S), "type": catalog.identify(subgroup(G, S)) if len(S) <= 24 else None, "elements": [G.labels[g] for g in sorted(S)]})
        if as_json:
            out.write(_dump({"group": G.name, "count": len(subs), "subgroups": rows}))
        else:
            out.write(f"{G.name}: {len(subs)} subgroups\n")
            for r in rows:
                out.write(f"  order {r['order']:<3} {r['type'] or '?':<6} {{{', '.join(r['elements'])}}}\n")
    elif args.sub == "lattice-dot":
        out.write(lattice_dot(G, catalog.identify))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    report = verify.run(args.scope, args.convention)
    if args.json:
        text = json.dumps(report.to_json(), indent=2, ensure_ascii=False, sort_keys=True) + "\n"
        if args.json == "-":
            out.write(text)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
            out.write(report.markdown())
    else:
        out.write(report.markdown())
    return EXIT_FAIL if report.failed else EXIT_OK


def cmd_eval(args, out) -> int:
    conv = RatioConvention(args.convention)
    try:
        value = expr.eval_text(args.expr, conv)
    except expr.ExprError as exc:
        kind = type(exc).__name__
        sys.stderr.write(f"{kind} at offset {exc.position}: {exc}\n  {args.expr}\n  {' ' * exc.position}^\n")
        return EXIT_FAIL
    if args.json:
        out.write(json.dumps(expr.result_json(value), ensure_ascii=False) + "\n")
    else:
        out.write(expr.result_text(value) + "\n")
    return EXIT_OK


def cmd_braid(args, out) -> int:
    try:
        w = braid.parse_braid(args.word)
    except braid.BraidSyntaxError as exc:
        sys.stderr.write(f"BraidSyntaxError: {exc}\n")
        return EXIT_FAIL
    data = {
        "word": str(w),
        "burau": braid.matrix_json(braid.burau(w)),
        "sl2": braid.matrix_json(braid.sl2_image(w)),
        "permutation": [x + 1 for x in braid.braid_permutation(w)],
    }
    if args.json:
        out.write(json.dumps(data) + "\n")
    else:
        for key, val in data.items():
            out.write(f"{key}: {json.dumps(val) if not isinstance(val, str) else val or '(identity)'}\n")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ccf", description=__doc__)
    p.add_argument("--version", action="version", version=f"ccf {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("catalog", help="list catalog groups")
    c.add_argument("action", choices=["list"])
    c.set_defaults(func=cmd_catalog)

    g = sub.add_parser("group", help="inspect a catalog group")
    g.add_argument("sub", choices=["show", "table", "aut", "subgroups", "lattice-dot"])
    g.add_argument("name")
    g.add_argument("--format", choices=["json", "markdown"], default="markdown")
    g.set_defaults(func=cmd_group)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("scope", choices=["all", *verify.SCOPES])
    v.add_argument("--convention", choices=["plain", "star", "both"], default="both")
    v.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate an expression exactly")
    e.add_argument("expr")
    e.add_argument("--convention", choices=["plain", "star"], default="plain")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)

    b = sub.add_parser("braid", help="Burau, SL2(Z) and permutation images of a braid word")
    b.add_argument("word")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_braid)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"ccf: {exc}\n")
        return EXIT_USAGE
    except GroupError as exc:
        sys.stderr.write(f"ccf: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
