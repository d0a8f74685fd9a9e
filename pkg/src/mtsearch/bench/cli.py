"""Benchmark command line: run, verify, sweep, ordering.

Exit codes: 0 success, 1 verification failure, 2 bad experiment spec. A plain
`key = value` config file can seed any flag's default; explicit flags win.
"""

from __future__ import annotations

import argparse
import sys

from ..drivers import ALL_ALGORITHMS, VALUE_ALGORITHMS
from ..games import GAME_NAMES
from ..values import SearchError, VerificationError
from .experiments import (
    ExperimentSpec,
    first_guess_sweep,
    ordering_report,
    run_matrix,
    rows_to_csv_text,
    verify_suite,
)
from .suite import suite_tree_configs


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip() != "")


def load_config_file(path: str) -> dict[str, str]:
    """Read `key = value` lines; '#' starts a comment, blank lines ignored."""
    values: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="FILE", help="config file of key = value lines")
    p.add_argument(
        "--algo",
        action="append",
        dest="algos",
        metavar="NAME",
        help=f"algorithm to run; repeatable; one of {', '.join(ALL_ALGORITHMS)}",
    )
    p.add_argument("--game", choices=GAME_NAMES, default="synthetic")
    p.add_argument("--depth", type=int, default=None, help="deepen 1..DEPTH (default: tree depth)")
    p.add_argument("--depths", type=str, default=None, help="comma list of report depths")
    p.add_argument("--depth-step", type=int, choices=(1, 2), default=1)
    p.add_argument("--seeds", type=int, default=None, help="use seeds/positions 0..N-1")
    p.add_argument("--seed-list", type=str, default=None, help="explicit comma list of seeds")
    p.add_argument("--tt-bits", type=int, default=20, help="table holds 2^BITS entries")
    p.add_argument("--tt-policy", choices=("two-tier", "always", "exact"), default="two-tier")
    p.add_argument("--jobs", type=int, default=1, help="concurrent worker processes")
    p.add_argument("--node-budget", type=int, default=None)
    # synthetic tree shape
    p.add_argument("--w", type=int, default=3, help="fixed branching factor")
    p.add_argument("--wmin", type=int, default=None, help="variable branching lower bound")
    p.add_argument("--wmax", type=int, default=None, help="variable branching upper bound")
    p.add_argument("--d", type=int, default=6, help="synthetic tree depth")
    p.add_argument("--inc", type=int, default=25, help="per-edge value increment range")
    p.add_argument("--corr", choices=("on", "off"), default="on", help="correlated leaf values")
    p.add_argument("--order-pct", type=float, default=0.0, help="%% of nodes with best child first")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mtsearch",
        description="Benchmark null-window search drivers against classical alpha-beta.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the benchmark matrix and emit CSV")
    _add_common_flags(p_run)
    p_run.add_argument("--csv", metavar="PATH", help="write results here (plus .rel.csv)")
    p_run.add_argument("--verify", action="store_true", help="cross-check every cell's value")

    p_verify = sub.add_parser("verify", help="oracle verification over the tree suite")
    _add_common_flags(p_verify)
    p_verify.add_argument(
        "--suite-size", type=int, default=None,
        help="default-suite tree count (ignores shape flags)",
    )

    p_sweep = sub.add_parser("sweep", help="first-guess offset sweep for mtd-f")
    _add_common_flags(p_sweep)
    p_sweep.add_argument(
        "--first-guess-offsets",
        type=str,
        default="-125,-25,0,25,125",
        help="comma list of offsets added to the previous iteration's value",
    )
    p_sweep.add_argument("--csv", metavar="PATH")

    p_ord = sub.add_parser("ordering", help="cut-node first-move success per ply")
    _add_common_flags(p_ord)
    p_ord.add_argument("--csv", metavar="PATH")
    return parser


def _apply_config_file(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Turn config-file entries into leading argv entries (flags still win)."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    try:
        path = argv[idx + 1]
    except IndexError:
        return argv  # argparse will report the missing value
    injected: list[str] = []
    for key, value in load_config_file(path).items():
        flag = "--" + key.lstrip("-")
        if flag == "--algo":
            if "--algo" in argv:
                continue  # explicit flags replace the whole config list
            for part in value.split(","):
                injected.extend([flag, part.strip()])
        elif flag == "--verify":
            if value.lower() in ("true", "yes", "on", "1"):
                injected.append(flag)
        else:
            injected.extend([flag, value])
    # Keep the subcommand first, then injected defaults, then explicit flags.
    return argv[:1] + injected + argv[1:]


def _spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    algos = tuple(args.algos) if args.algos else ALL_ALGORITHMS
    if args.seed_list is not None:
        positions = _parse_int_list(args.seed_list)
    elif args.seeds is not None:
        positions = tuple(range(args.seeds))
    else:
        positions = tuple(range(10))
    tree_depth = args.d
    max_depth = args.depth if args.depth is not None else (tree_depth if args.game == "synthetic" else 6)
    report = _parse_int_list(args.depths) if args.depths else None
    return ExperimentSpec(
        algorithms=algos,
        game=args.game,
        positions=positions,
        max_depth=max_depth,
        depth_step=args.depth_step,
        report_depths=report,
        tt_bits=args.tt_bits,
        tt_policy=args.tt_policy,
        verify=getattr(args, "verify", False),
        jobs=args.jobs,
        csv_path=getattr(args, "csv", None),
        node_budget=args.node_budget,
        w=args.w,
        w_min=args.wmin,
        w_max=args.wmax,
        d=tree_depth,
        inc=args.inc,
        correlated=args.corr == "on",
        order_pct=args.order_pct,
    )


def _cmd_run(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    rows = run_matrix(spec)
    if spec.csv_path:
        print(f"wrote {len(rows)} rows to {spec.csv_path}")
    else:
        sys.stdout.write(rows_to_csv_text(rows))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.suite_size is not None or (
        args.seeds is None and args.seed_list is None
    ):
        configs = suite_tree_configs(args.suite_size or 1000)
        include_ttt = args.game in ("synthetic", "tictactoe")
    else:
        spec = _spec_from_args(args)
        if spec.game == "othello6":
            raise ValueError("verify supports synthetic and tictactoe only")
        configs = [spec.tree_config(pid) for pid in spec.positions] if spec.game == "synthetic" else []
        include_ttt = spec.game == "tictactoe"
    report = verify_suite(configs, VALUE_ALGORITHMS, include_tictactoe=include_ttt)
    if report.passed:
        print(f"PASS: {report.cells} cells verified")
        return 0
    for failure in report.failures[:50]:
        print(f"FAIL: {failure}")
    if len(report.failures) > 50:
        print(f"... and {len(report.failures) - 50} more")
    return 1


def _cmd_sweep(args: argparse.Namespace) -> int:
    offsets = _parse_int_list(args.first_guess_offsets)
    spec = _spec_from_args(args)
    points = first_guess_sweep(spec, offsets)
    lines = ["offset,mean_rel_nbp"]
    lines += [f"{p.offset},{p.mean_rel_nbp:.4f}" for p in points]
    text = "\n".join(lines) + "\n"
    if getattr(args, "csv", None):
        with open(args.csv, "w", newline="") as fh:
            fh.write(text)
        print(f"wrote {len(points)} offsets to {args.csv}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_ordering(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    buckets = ordering_report(spec)
    lines = ["ply,cut_nodes,first_move_cuts,rate,category"]
    lines += [
        f"{b.ply},{b.cut_nodes},{b.first_move_cuts},{b.rate:.4f},{b.category}"
        for b in buckets
    ]
    text = "\n".join(lines) + "\n"
    if getattr(args, "csv", None):
        with open(args.csv, "w", newline="") as fh:
            fh.write(text)
        print(f"wrote {len(buckets)} buckets to {args.csv}")
    else:
        sys.stdout.write(text)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _apply_config_file(parser, argv)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    args = parser.parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "verify": _cmd_verify,
        "sweep": _cmd_sweep,
        "ordering": _cmd_ordering,
    }
    try:
        return handlers[args.command](args)
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, SearchError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
