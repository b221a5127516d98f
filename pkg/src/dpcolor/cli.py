"""Command-line front end.

Exit codes: 0 for a positive result (sat, valid, computed), 1 for a
certified negative result (unsat, invalid cover, guarantee fails), 2 for
usage, input or resource errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .bounds import chi_equals_chidp_guaranteed, sigma_report, zdp_exact, zdp_n_bounds, zdp_upper
from .constructions import hard_instance, verify_hard_instance
from .cover import cover_from_lists, transversal_to_list_coloring, validate_cover
from .errors import PreconditionError, ResourceLimitError
from .formats import (
    SCHEMA_VERSION,
    FormatError,
    cover_to_json,
    dumps,
    labeling_to_json,
    read_cover,
    read_graph,
    solve_result_to_json,
)
from .solver import DEFAULT_NODE_CAP, chi_dp, find_transversal

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _parse_sizes(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dpcolor", description="Exact DP-coloring toolkit.")
    parser.add_argument("--version", action="version", version=f"dpcolor {__version__} (schema {SCHEMA_VERSION})")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="write the JSON report here instead of stdout")
    common.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP, help="search nodes allowed per solve")
    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--jobs", type=int, default=1, help="worker processes for cover enumeration")
    search.add_argument("--max-covers", type=int, default=None, help="refuse to enumerate more covers than this")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", parents=[common], help="find a transversal of a cover")
    p.add_argument("cover", type=Path)

    p = sub.add_parser("verify-cover", parents=[common], help="check the cover axioms")
    p.add_argument("cover", type=Path)

    p = sub.add_parser("chi-dp", parents=[common, search], help="exact DP-chromatic number")
    p.add_argument("graph", type=Path)

    p = sub.add_parser("z-dp", parents=[common, search], help="exact Z_DP by search over joins")
    p.add_argument("graph", type=Path)
    p.add_argument("--s-max", type=int, required=True)

    p = sub.add_parser("construct-hard", parents=[common], help="build and check the lower-bound instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--refute", action="store_true", help="also prove non-colorability by complete search")
    p.add_argument("--cover-out", type=Path, help="write the instance in cover JSON form")
    p.add_argument("--labels-out", type=Path, help="write the (name, i, j) labeling sidecar")

    p = sub.add_parser("bounds", parents=[common], help="closed-form Z_DP bounds for a graph")
    p.add_argument("graph", type=Path)

    p = sub.add_parser("reduce-list", parents=[common], help="list assignment to cover")
    p.add_argument("graph", type=Path)
    p.add_argument("lists", type=Path)
    p.add_argument("--solve", action="store_true", help="also search for an L-coloring")

    p = sub.add_parser("sigma", parents=[common], help="sufficiency condition for J(G, A)")
    p.add_argument("graph", type=Path)
    p.add_argument("--a-size", type=int, required=True)
    p.add_argument("--list-sizes", type=_parse_sizes, required=True,
                   help="one size for every vertex, or a comma-separated size per vertex")
    p.add_argument("--a-list-min", type=int, default=None)
    p.add_argument("--k", type=int, default=None, help="chromatic number of G (computed if omitted)")

    p = sub.add_parser("guarantee", parents=[common], help="finite-n test 2r - n >= 6(n - r)^2")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    return parser


def _emit(report: dict, out: Path | None) -> None:
    text = dumps(report)
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _read_lists(path: Path) -> list[list]:
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    if isinstance(obj, dict):
        obj = obj.get("lists")
    if not isinstance(obj, list) or not all(isinstance(lst, list) for lst in obj):
        raise FormatError(f"{path}: expected a list of color lists or {{\"lists\": [...]}}")
    return obj


def _run(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd == "solve":
        cover = read_cover(args.cover)
        res = find_transversal(cover, args.node_cap)
        _emit(solve_result_to_json(res), args.out)
        return EXIT_OK if res.satisfiable else EXIT_NEGATIVE

    if cmd == "verify-cover":
        report = validate_cover(read_cover(args.cover))
        _emit({
            "valid": report.ok,
            "violations": [{"axiom": v.axiom, "detail": v.detail} for v in report.violations],
        }, args.out)
        return EXIT_OK if report.ok else EXIT_NEGATIVE

    if cmd == "chi-dp":
        g = read_graph(args.graph)
        value = chi_dp(g, node_cap=args.node_cap, max_covers=args.max_covers, jobs=args.jobs)
        _emit({"chi_dp": value}, args.out)
        return EXIT_OK

    if cmd == "z-dp":
        g = read_graph(args.graph)
        value = zdp_exact(g, args.s_max, node_cap=args.node_cap, max_covers=args.max_covers, jobs=args.jobs)
        _emit({"z_dp": value, "s_max": args.s_max}, args.out)
        return EXIT_OK if value is not None else EXIT_NEGATIVE

    if cmd == "construct-hard":
        report = verify_hard_instance(args.n, refute=args.refute, node_cap=args.node_cap)
        if args.cover_out or args.labels_out:
            inst = hard_instance(args.n)
            if args.cover_out:
                args.cover_out.write_text(dumps(cover_to_json(inst.cover)))
            if args.labels_out:
                args.labels_out.write_text(dumps(labeling_to_json(inst.labeling)))
        out = report.to_dict()
        lower, _ = zdp_n_bounds(args.n)
        out["zdp_n_lower"] = lower
        _emit(out, args.out)
        if not report.structural_ok:
            return EXIT_NEGATIVE
        if args.refute:
            return EXIT_NEGATIVE if report.refuted else EXIT_OK
        return EXIT_OK

    if cmd == "bounds":
        g = read_graph(args.graph)
        out = zdp_upper(g).to_dict()
        lower, upper = zdp_n_bounds(g.n)
        out["zdp_n_bounds"] = {"lower": lower, "upper": upper}
        _emit(out, args.out)
        return EXIT_OK

    if cmd == "reduce-list":
        g = read_graph(args.graph)
        lists = _read_lists(args.lists)
        if len(lists) != g.n:
            raise FormatError(f"{args.lists}: expected {g.n} lists, got {len(lists)}")
        cover = cover_from_lists(g, [[c if not isinstance(c, list) else tuple(c) for c in lst] for lst in lists])
        out: dict = {
            "cover": cover_to_json(cover),
            "provenance": [[u, col] for _, (u, col) in sorted(cover.labels.items())],
        }
        if not args.solve:
            _emit(out, args.out)
            return EXIT_OK
        res = find_transversal(cover, args.node_cap)
        out["solve"] = solve_result_to_json(res)
        out["coloring"] = transversal_to_list_coloring(cover, res.witness) if res.satisfiable else None
        _emit(out, args.out)
        return EXIT_OK if res.satisfiable else EXIT_NEGATIVE

    if cmd == "sigma":
        g = read_graph(args.graph)
        sizes = args.list_sizes * g.n if len(args.list_sizes) == 1 else args.list_sizes
        if len(sizes) != g.n:
            raise FormatError(f"--list-sizes: expected 1 or {g.n} values, got {len(sizes)}")
        report = sigma_report(g, args.a_size, sizes, args.a_list_min, args.k)
        _emit(report.to_dict(), args.out)
        return EXIT_OK if report.certifies else EXIT_NEGATIVE

    if cmd == "guarantee":
        holds = chi_equals_chidp_guaranteed(args.n, args.r)
        _emit({"formula": "2r - n >= 6(n - r)^2", "inputs": {"n": args.n, "r": args.r}, "holds": holds}, args.out)
        return EXIT_OK if holds else EXIT_NEGATIVE

    raise AssertionError(cmd)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (FormatError, PreconditionError, ResourceLimitError, ValueError, OSError) as exc:
        print(f"dpcolor {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
