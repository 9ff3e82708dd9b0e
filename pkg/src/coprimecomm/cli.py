"""Command-line interface.

    coprimecomm list
    coprimecomm analyze S4 --k 1..3
    coprimecomm verify theorem_a theorem_b --k 2..3 --max-order 700 --format json

Exit codes for ``verify``: 0 all pass, 1 at least one failed verdict,
2 usage error, 3 something was skipped (and nothing failed).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import corpus
from . import group as grp
from .campaign import UsageError, parse_k_range, render_markdown, run_campaign
from .coprime import delta_star_subgroup, gamma_star_subgroup
from .group import BudgetExceeded
from .verify import STATEMENTS

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SKIPPED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def analyze(entry: corpus.CorpusEntry, ks=range(1, 4)) -> dict:
    """Structural summary of one group."""
    G = entry.group()
    soluble = grp.is_soluble(G)
    nilpotent = grp.is_nilpotent(G)
    lcs = grp.lower_central_series(G)
    ds = grp.derived_series(G)
    lfs = grp.lower_fitting_series(G)
    return {
        "name": entry.name,
        "order": G.order,
        "degree": G.degree,
        "primes": G.prime_set,
        "abelian": grp.is_abelian(G),
        "nilpotent": nilpotent,
        "soluble": soluble,
        "nilpotency_class": lcs.length_to_trivial if nilpotent else None,
        "derived_length": ds.length_to_trivial,
        "fitting_height": lfs.length_to_trivial,
        "nilpotent_residual_order": len(grp.nilpotent_residual(G)),
        "fitting_subgroup_order": len(grp.fitting_subgroup(G)),
        "center_order": len(grp.center(G)),
        "lower_central_series": lcs.orders(),
        "derived_series": ds.orders(),
        "lower_fitting_series": lfs.orders(),
        "gamma_star": {str(k): len(gamma_star_subgroup(G, k)) for k in ks if k >= 1},
        "delta_star": {str(k): len(delta_star_subgroup(G, k)) for k in ks},
    }


def _format_analysis(a: dict) -> str:
    def series(xs):
        return " > ".join(str(x) for x in xs)

    lines = [
        f"{a['name']}: order {a['order']}, degree {a['degree']}, pi(G) = {{{', '.join(map(str, a['primes']))}}}",
        f"  abelian: {a['abelian']}  nilpotent: {a['nilpotent']}  soluble: {a['soluble']}",
    ]
    if a["nilpotent"]:
        lines.append(f"  nilpotency class: {a['nilpotency_class']}")
    if a["soluble"]:
        lines.append(f"  derived length: {a['derived_length']}  Fitting height: {a['fitting_height']}")
    lines += [
        f"  |gamma_inf(G)| = {a['nilpotent_residual_order']}  |F(G)| = {a['fitting_subgroup_order']}"
        f"  |Z(G)| = {a['center_order']}",
        f"  lower central series: {series(a['lower_central_series'])}",
        f"  derived series:       {series(a['derived_series'])}",
        f"  lower Fitting series: {series(a['lower_fitting_series'])}",
    ]
    for k, n in a["gamma_star"].items():
        lines.append(f"  |gamma*_{k}(G)| = {n}")
    for k, n in a["delta_star"].items():
        lines.append(f"  |delta*_{k}(G)| = {n}")
    return "\n".join(lines)


def cmd_list(args) -> int:
    for e in corpus.select(max_order=args.max_order):
        print(f"{e.name:<12} {e.expected_order:>6}  {', '.join(sorted(e.tags))}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    try:
        entry = corpus.resolve(args.group)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except corpus.CorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    lo, hi = parse_k_range(args.k)
    try:
        result = analyze(entry, range(lo, hi + 1))
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SKIPPED
    if args.format == "json":
        print(json.dumps(result, indent=2))
    else:
        print(_format_analysis(result))
    return EXIT_OK


def cmd_verify(args) -> int:
    statements = list(args.statements)
    if args.statements_opt:
        statements += [s for chunk in args.statements_opt for s in chunk.split(",") if s]
    groups = [g for chunk in args.groups for g in chunk.split(",") if g] if args.groups else None
    k_range = parse_k_range(args.k) if args.k else None
    report = run_campaign(statements, k_range=k_range, max_order=args.max_order, groups=groups,
                          group_files=args.group_file or (), jobs=args.jobs,
                          witnesses=args.witnesses, stable=args.stable)
    if args.format == "json":
        text = json.dumps(report.to_dict(witnesses=args.witnesses, stable=args.stable), indent=2)
    else:
        text = render_markdown(report, witnesses=args.witnesses, stable=args.stable)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text.rstrip("\n"))
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coprimecomm", description="Coprime commutators in finite permutation groups.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("list", help="list the builtin corpus")
    p.add_argument("--max-order", type=int, default=None)
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("analyze", help="structural report for one group")
    p.add_argument("group", help="builtin group name or path to a group JSON file")
    p.add_argument("--k", default="1..3", help="range of k for gamma*/delta* orders (A..B)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run theorem checks over the corpus")
    p.add_argument("statements", nargs="*", help=f"statements to check (default all): {', '.join(STATEMENTS)}")
    p.add_argument("--statements", dest="statements_opt", action="append",
                   help="comma-separated statements (may repeat)")
    p.add_argument("--k", default=None, help="k range A..B (default: per statement)")
    p.add_argument("--max-order", type=int, default=1000)
    p.add_argument("--groups", action="append", help="comma-separated builtin group names")
    p.add_argument("--group-file", action="append", help="extra group JSON file (may repeat)")
    p.add_argument("--format", choices=("json", "md"), default="md")
    p.add_argument("--witnesses", action="store_true", help="include witness details")
    p.add_argument("--stable", action="store_true", help="omit timings for reproducible output")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--output", "-o", help="write the report to this file")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, corpus.CorpusError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
