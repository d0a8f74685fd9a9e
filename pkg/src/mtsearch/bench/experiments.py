"""Experiment runner and verification harness.

Reproduces the measurement methodology at desk scale: iterative-deepening
runs over seeded trees or scripted game positions, cumulative node counts per
depth, a relative view normalized to the aspiration-NegaScout baseline, an
oracle verification mode, the first-guess sweep and the move-ordering report.
All output is deterministic except wall-clock columns.
"""

from __future__ import annotations

import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..drivers import (
    ALL_ALGORITHMS,
    VALUE_ALGORITHMS,
    iterative_deepening,
    mtd_f,
)
from ..engine import NodeBudget, negascout
from ..games import GAME_NAMES
from ..games.oracle import oracle_minimax
from ..games.othello import OthelloState
from ..games.synthetic import SyntheticTreeConfig, root as synthetic_root, walk_nodes
from ..games.tictactoe import TicTacToeState
from ..ordering import OrderingContext
from ..position import GamePosition
from ..ttable import TTConfig, TranspositionTable
from ..values import (
    MINUS_INF,
    PLUS_INF,
    SearchStats,
    VerificationError,
)
from .suite import suite_tree_configs

CSV_HEADER = "algo,game,position,depth,nbp,nodes,mt_calls,tt_hits,tt_stores,cut_rate,wall_ms"
REL_CSV_HEADER = "algo,game,position,depth,nbp_pct,nodes_pct"
BASELINE_ALGORITHM = "asp-ns"


@dataclass(frozen=True)
class ExperimentSpec:
    """One benchmark matrix: algorithms x positions, searched by deepening."""

    algorithms: tuple[str, ...] = ALL_ALGORITHMS
    game: str = "synthetic"
    positions: tuple[int, ...] = tuple(range(10))
    max_depth: int = 6
    depth_step: int = 1
    report_depths: tuple[int, ...] | None = None
    tt_bits: int = 20
    tt_policy: str = "two-tier"
    verify: bool = False
    jobs: int = 1
    csv_path: str | None = None
    metrics: tuple[str, ...] = ("nbp", "nodes")
    node_budget: int | None = None
    # synthetic tree shape
    w: int = 3
    w_min: int | None = None
    w_max: int | None = None
    d: int = 6
    inc: int = 25
    correlated: bool = True
    order_pct: float = 0.0
    first_guess_offsets: tuple[int, ...] = ()

    def validate(self) -> None:
        if not self.algorithms:
            raise ValueError("need at least one algorithm")
        for a in self.algorithms:
            if a not in ALL_ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}; expected one of {ALL_ALGORITHMS}")
        if self.game not in GAME_NAMES:
            raise ValueError(f"unknown game {self.game!r}; expected one of {GAME_NAMES}")
        if not self.positions:
            raise ValueError("need at least one seed/position")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.depth_step not in (1, 2):
            raise ValueError("depth_step must be 1 or 2")
        visited = set(self.visited_depths())
        for dep in self.report_depths or ():
            if dep not in visited:
                raise ValueError(f"report depth {dep} is not in the deepening schedule")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.verify and self.game == "othello6":
            raise ValueError("--verify supports synthetic and tictactoe only")
        for m in self.metrics:
            if m not in ("nbp", "nodes"):
                raise ValueError(f"unknown metric {m!r}")
        # Synthetic shape errors surface immediately rather than inside workers.
        if self.game == "synthetic":
            self.tree_config(0)

    def visited_depths(self) -> list[int]:
        return list(range(self.depth_step, self.max_depth + 1, self.depth_step))

    def row_depths(self) -> list[int]:
        if self.report_depths is not None:
            return sorted(self.report_depths)
        return self.visited_depths()

    def tree_config(self, seed: int) -> SyntheticTreeConfig:
        return SyntheticTreeConfig(
            seed=seed,
            w=self.w,
            depth=self.d,
            increment_range=self.inc,
            correlated=self.correlated,
            order_pct=self.order_pct,
            w_min=self.w_min,
            w_max=self.w_max,
        )


@dataclass(frozen=True)
class ResultRow:
    """One (algorithm, position, depth) cell, counters cumulative over depths."""

    algo: str
    game: str
    position: str
    depth: int
    nbp: int
    nodes: int
    mt_calls: int
    tt_hits: int
    tt_stores: int
    cut_rate: float
    wall_ms: float

    def csv_line(self) -> str:
        return (
            f"{self.algo},{self.game},{self.position},{self.depth},{self.nbp},"
            f"{self.nodes},{self.mt_calls},{self.tt_hits},{self.tt_stores},"
            f"{self.cut_rate:.4f},{self.wall_ms:.3f}"
        )


# -- positions ----------------------------------------------------------------


def _initial_state(game: str) -> GamePosition:
    if game == "tictactoe":
        return TicTacToeState()
    if game == "othello6":
        return OthelloState()
    raise ValueError(f"no initial state for game {game!r}")


def self_play_position(game: str, plies: int, choose_depth: int = 3) -> GamePosition:
    """Deterministic self-play prefix: `plies` best moves from the start.

    Stops early at terminal states so every returned position is playable
    when possible. The chooser is a fresh-table NegaScout at fixed depth with
    static tie-breaking, so prefixes are reproducible everywhere.
    """
    state = _initial_state(game)
    table = TranspositionTable()
    for _ in range(plies):
        moves = state.legal_moves()
        if not moves:
            break
        best_move = None
        best_value = None
        for move in moves:
            v = -negascout(state.apply(move), MINUS_INF, PLUS_INF, choose_depth - 1, table)
            if best_value is None or v > best_value:
                best_move, best_value = move, v
        state = state.apply(best_move)
    return state


def build_position(spec: ExperimentSpec, position_id: int) -> GamePosition:
    if spec.game == "synthetic":
        return synthetic_root(spec.tree_config(position_id))
    return self_play_position(spec.game, position_id)


# -- the run matrix -------------------------------------------------------------


def _run_cell(args: tuple[ExperimentSpec, str, int]) -> list[ResultRow]:
    spec, algo, position_id = args
    root = build_position(spec, position_id)
    table = TranspositionTable(TTConfig(spec.tt_bits, spec.tt_policy))
    ordering = OrderingContext()
    budget = NodeBudget(spec.node_budget) if spec.node_budget else None
    iters = iterative_deepening(
        algo,
        root,
        max_depth=spec.max_depth,
        depth_step=spec.depth_step,
        table=table,
        ordering=ordering,
        budget=budget,
    )
    cumulative = SearchStats()
    wall_ms = 0.0
    rows: list[ResultRow] = []
    report = set(spec.row_depths())
    for it in iters:
        cumulative.add(it.stats)
        wall_ms += it.wall_ms
        if spec.verify:
            _verify_cell_value(spec, algo, position_id, root, it.depth, it.value, it.best_move)
        if it.depth in report:
            rows.append(
                ResultRow(
                    algo,
                    spec.game,
                    str(position_id),
                    it.depth,
                    cumulative.leaf_evals,
                    cumulative.total_nodes,
                    cumulative.mt_calls,
                    cumulative.tt_hits,
                    cumulative.tt_stores,
                    cumulative.ordering_rate(),
                    wall_ms,
                )
            )
    return rows


def _verify_cell_value(spec, algo, position_id, root, depth, value, move) -> None:
    cell = f"algo={algo} game={spec.game} position={position_id} depth={depth}"
    oracle = oracle_minimax(root, depth)
    if algo == "mtd-best":
        if move is None:
            if root.legal_moves():
                raise VerificationError(f"{cell}: no best move returned")
            return
        move_value = -oracle_minimax(root.apply(move), depth - 1)
        if move_value != oracle:
            raise VerificationError(
                f"{cell}: proven move scores {move_value}, oracle argmax value {oracle}"
            )
    elif value != oracle:
        raise VerificationError(f"{cell}: returned {value}, oracle {oracle}")


def run_matrix(spec: ExperimentSpec) -> list[ResultRow]:
    """Execute every (algorithm, position) cell with a fresh table per cell.

    Each iterative-deepening step is re-driven on the shared per-cell table so
    counters can be reported cumulatively at every depth. Rows come back in
    spec order regardless of how many worker processes ran them.
    """
    spec.validate()
    cells = [(spec, algo, pid) for algo in spec.algorithms for pid in spec.positions]
    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            per_cell = list(pool.map(_run_cell, cells))
    else:
        per_cell = [_run_cell(c) for c in cells]
    rows = [row for cell_rows in per_cell for row in cell_rows]
    if spec.csv_path:
        write_csv(rows, spec.csv_path)
        rel = relative_rows(rows, metrics=spec.metrics)
        if rel:
            write_relative_csv(rel, _relative_path(spec.csv_path))
    return rows


def _relative_path(csv_path: str) -> str:
    if csv_path.endswith(".csv"):
        return csv_path[: -len(".csv")] + ".rel.csv"
    return csv_path + ".rel"


def write_csv(rows: list[ResultRow], path: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(row.csv_line() + "\n")


def rows_to_csv_text(rows: list[ResultRow]) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for row in rows:
        buf.write(row.csv_line() + "\n")
    return buf.getvalue()


@dataclass(frozen=True)
class RelativeRow:
    """Per-cell counters as a percentage of the baseline algorithm's cell."""

    algo: str
    game: str
    position: str
    depth: int
    nbp_pct: float
    nodes_pct: float

    def csv_line(self) -> str:
        return (
            f"{self.algo},{self.game},{self.position},{self.depth},"
            f"{self.nbp_pct:.4f},{self.nodes_pct:.4f}"
        )


def relative_rows(
    rows: list[ResultRow],
    baseline: str = BASELINE_ALGORITHM,
    metrics: tuple[str, ...] = ("nbp", "nodes"),
) -> list[RelativeRow]:
    """Normalize every cell to the baseline row of the same (position, depth).

    Returns an empty list when the baseline algorithm is absent. The baseline
    normalizes to exactly 100.0, mirroring the usual 100%-baseline plots.
    """
    del metrics  # both percentages are always emitted
    base = {
        (r.game, r.position, r.depth): r for r in rows if r.algo == baseline
    }
    if not base:
        return []
    out = []
    for r in rows:
        b = base.get((r.game, r.position, r.depth))
        if b is None or b.nbp == 0 or b.nodes == 0:
            continue
        out.append(
            RelativeRow(
                r.algo,
                r.game,
                r.position,
                r.depth,
                100.0 * r.nbp / b.nbp,
                100.0 * r.nodes / b.nodes,
            )
        )
    return out


def write_relative_csv(rows: list[RelativeRow], path: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(REL_CSV_HEADER + "\n")
        for row in rows:
            fh.write(row.csv_line() + "\n")


# -- oracle verification ---------------------------------------------------------


@dataclass
class VerifyReport:
    cells: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _subtree_values(cfg: SyntheticTreeConfig) -> dict[int, int]:
    """Side-to-move value of every node, by one bottom-up enumeration."""
    values: dict[int, int] = {}
    interior: list[tuple[int, int]] = []
    for pos in walk_nodes(cfg):
        if pos.is_terminal():
            values[pos.path] = pos.evaluate()
        else:
            interior.append((pos.path, pos.ply))
    interior.sort(key=lambda t: -t[1])  # children before parents
    for path, ply in interior:
        values[path] = max(
            -values[cfg.child_path(path, m)] for m in cfg.moves_for(path, ply)
        )
    return values


def _check_driver_outcome(cell: str, outcome, oracle: int, failures: list[str]) -> None:
    from ..values import BoundPair, merge_bound

    bounds = BoundPair()
    for rec in outcome.trace:
        if rec.fail_direction == "low" and not oracle <= rec.g:
            failures.append(f"{cell}: fail-low g={rec.g} below oracle {oracle}")
        if rec.fail_direction == "high" and not oracle >= rec.g:
            failures.append(f"{cell}: fail-high g={rec.g} above oracle {oracle}")
        bounds = merge_bound(bounds, rec.g, rec.bound)
        if not bounds.contains(oracle):
            failures.append(f"{cell}: interval {bounds} lost oracle {oracle}")
            return


def verify_suite(
    configs: list[SyntheticTreeConfig] | None = None,
    algorithms: tuple[str, ...] = VALUE_ALGORITHMS,
    include_tictactoe: bool = True,
    tamper=None,
) -> VerifyReport:
    """Assert oracle agreement, probe soundness, bracketing and table soundness.

    Runs every algorithm on every cell with a fresh collision-free table, then
    checks each stored entry against the enumerated ground truth. `tamper`,
    when given, is called as tamper(table, cell_id) after a cell's searches:
    a fault-injection hook for exercising the failure path.
    """
    from ..drivers import aspiration_negascout, dual_star, mtd_bi, mtd_step, sss_star
    from ..engine import alpha_beta

    if configs is None:
        configs = suite_tree_configs()
    failures: list[str] = []
    cells = 0
    for cfg in configs:
        root = synthetic_root(cfg)
        oracle = oracle_minimax(root, cfg.depth)
        truth = _subtree_values(cfg)
        if truth[0] != oracle:
            failures.append(f"tree {cfg.seed}/{cfg.w}/{cfg.depth}: harness value mismatch")
            continue
        keymap = {}
        for pos in walk_nodes(cfg):
            keymap[pos.position_key()] = (pos.path, pos.ply)
        for algo in algorithms:
            cells += 1
            cell = (
                f"algo={algo} seed={cfg.seed} w={cfg.w} d={cfg.depth} "
                f"corr={'on' if cfg.correlated else 'off'}"
            )
            table = TranspositionTable()
            stats = SearchStats()
            ordering = OrderingContext()
            outcome = None
            if algo == "ab":
                table.begin_iteration()
                value = alpha_beta(
                    root, MINUS_INF, PLUS_INF, cfg.depth, table, stats, ordering
                )
            elif algo == "ns":
                table.begin_iteration()
                value = negascout(root, MINUS_INF, PLUS_INF, cfg.depth, table, stats, ordering)
            elif algo == "asp-ns":
                value = aspiration_negascout(
                    root, cfg.depth, 0, table=table, stats=stats, ordering=ordering
                )
            else:
                fn = {"sss": sss_star, "dual": dual_star, "mtd-bi": mtd_bi,
                      "mtd-f": mtd_f, "mtd-step": mtd_step}[algo]
                outcome = fn(root, cfg.depth, table=table, stats=stats, ordering=ordering)
                value = outcome.f
            if value != oracle:
                failures.append(f"{cell}: value {value} != oracle {oracle}")
            if outcome is not None:
                _check_driver_outcome(cell, outcome, oracle, failures)
            if tamper is not None:
                tamper(table, cell)
            for entry in table.entries():
                where = keymap.get(entry.key)
                if where is None:
                    failures.append(f"{cell}: stored key {entry.key:#x} matches no node")
                    continue
                path, ply = where
                if entry.depth != cfg.depth - ply:
                    failures.append(f"{cell}: entry at ply {ply} has depth {entry.depth}")
                if not entry.bounds.contains(truth[path]):
                    failures.append(
                        f"{cell}: entry at ply {ply} bounds {entry.bounds} "
                        f"exclude true value {truth[path]}"
                    )
    if include_tictactoe:
        cells += len(algorithms)
        failures.extend(_verify_tictactoe(algorithms, tamper))
    return VerifyReport(cells, failures)


def _verify_tictactoe(algorithms, tamper) -> list[str]:
    from ..drivers import aspiration_negascout, dual_star, mtd_bi, mtd_step, sss_star
    from ..engine import alpha_beta

    failures: list[str] = []
    root = TicTacToeState()
    full_depth = 9
    truth: dict[int, int] = {}
    statemap: dict[int, TicTacToeState] = {}

    def value_of(state: TicTacToeState) -> int:
        key = state.position_key()
        if key in truth:
            return truth[key]
        statemap[key] = state
        if state.is_terminal():
            v = state.evaluate()
        else:
            v = max(-value_of(state.apply(m)) for m in state.legal_moves())
        truth[key] = v
        return v

    oracle = value_of(root)
    if oracle != 0:
        failures.append(f"tictactoe harness value {oracle} != 0")
    for algo in algorithms:
        cell = f"algo={algo} game=tictactoe"
        table = TranspositionTable()
        stats = SearchStats()
        ordering = OrderingContext()
        outcome = None
        if algo == "ab":
            table.begin_iteration()
            value = alpha_beta(root, MINUS_INF, PLUS_INF, full_depth, table, stats, ordering)
        elif algo == "ns":
            table.begin_iteration()
            value = negascout(root, MINUS_INF, PLUS_INF, full_depth, table, stats, ordering)
        elif algo == "asp-ns":
            value = aspiration_negascout(
                root, full_depth, 0, table=table, stats=stats, ordering=ordering
            )
        else:
            fn = {"sss": sss_star, "dual": dual_star, "mtd-bi": mtd_bi,
                  "mtd-f": mtd_f, "mtd-step": mtd_step}[algo]
            outcome = fn(root, full_depth, table=table, stats=stats, ordering=ordering)
            value = outcome.f
        if value != oracle:
            failures.append(f"{cell}: value {value} != oracle {oracle}")
        if outcome is not None:
            _check_driver_outcome(cell, outcome, oracle, failures)
        if tamper is not None:
            tamper(table, cell)
        for entry in table.entries():
            state = statemap.get(entry.key)
            if state is None:
                failures.append(f"{cell}: stored key {entry.key:#x} matches no position")
                continue
            if not entry.bounds.contains(truth[entry.key]):
                failures.append(
                    f"{cell}: bounds {entry.bounds} exclude value {truth[entry.key]}"
                )
    return failures


# -- first-guess sweep ------------------------------------------------------------


@dataclass(frozen=True)
class SweepPoint:
    offset: int
    mean_rel_nbp: float  # mean over positions of 100 * nbp / baseline nbp


def first_guess_sweep(spec: ExperimentSpec, offsets: tuple[int, ...] | None = None) -> list[SweepPoint]:
    """Search effort of deepening mtd-f as a function of the first-guess error.

    For each offset h, every iteration is seeded with the previous iteration's
    true value plus h (the first iteration with h itself). Effort is the
    cumulative unique-leaf count at the final depth, as a percentage of the
    aspiration-NegaScout baseline on the same tree; the series is averaged
    over all positions.
    """
    if offsets is None:
        offsets = spec.first_guess_offsets
    if not offsets:
        raise ValueError("need at least one first-guess offset")
    if len(spec.positions) < 20:
        raise ValueError("need at least 20 positions for a stable sweep average")
    if spec.game != "synthetic":
        raise ValueError("the first-guess sweep runs on synthetic trees")
    spec.validate()

    totals = {off: 0.0 for off in offsets}
    for pid in spec.positions:
        root = build_position(spec, pid)
        base_stats = SearchStats()
        table = TranspositionTable(TTConfig(spec.tt_bits, spec.tt_policy))
        ordering = OrderingContext()
        for it in iterative_deepening(
            BASELINE_ALGORITHM, root, spec.max_depth, spec.depth_step, table, ordering
        ):
            base_stats.add(it.stats)
        base_nbp = base_stats.leaf_evals
        for off in offsets:
            stats = SearchStats()
            table = TranspositionTable(TTConfig(spec.tt_bits, spec.tt_policy))
            ordering = OrderingContext()
            prev_f = 0
            for depth in spec.visited_depths():
                out = mtd_f(
                    root, depth, prev_f + off, table=table, stats=stats, ordering=ordering
                )
                prev_f = out.f
            totals[off] += 100.0 * stats.leaf_evals / base_nbp
    n = len(spec.positions)
    return [SweepPoint(off, totals[off] / n) for off in offsets]


# -- move-ordering report ----------------------------------------------------------


ORDERING_CATEGORIES = (
    (0.95, "almost perfectly ordered"),
    (0.90, "very strongly ordered"),
    (0.80, "strongly ordered"),
)


def ordering_category(rate: float) -> str:
    for threshold, label in ORDERING_CATEGORIES:
        if rate >= threshold:
            return label
    return "below strongly ordered"


@dataclass(frozen=True)
class OrderingBucket:
    ply: int
    cut_nodes: int
    first_move_cuts: int

    @property
    def rate(self) -> float:
        return self.first_move_cuts / self.cut_nodes if self.cut_nodes else 1.0

    @property
    def category(self) -> str:
        return ordering_category(self.rate)


def ordering_report(spec: ExperimentSpec) -> list[OrderingBucket]:
    """Per-ply first-move cutoff rates, aggregated over all cells' deepening runs."""
    spec.validate()
    cuts: dict[int, int] = {}
    firsts: dict[int, int] = {}
    for algo in spec.algorithms:
        for pid in spec.positions:
            root = build_position(spec, pid)
            table = TranspositionTable(TTConfig(spec.tt_bits, spec.tt_policy))
            ordering = OrderingContext()
            for it in iterative_deepening(
                algo, root, spec.max_depth, spec.depth_step, table, ordering
            ):
                for ply, n in it.stats.cut_nodes_by_ply.items():
                    cuts[ply] = cuts.get(ply, 0) + n
                for ply, n in it.stats.first_move_cuts_by_ply.items():
                    firsts[ply] = firsts.get(ply, 0) + n
    return [
        OrderingBucket(ply, cuts[ply], firsts.get(ply, 0)) for ply in sorted(cuts)
    ]
