"""Drivers that steer repeated null-window probes to the minimax value.

A driver is a (first, next) policy: the first probe bound, and a rule mapping
the last result and the current root interval to the next bound. Probing
continues until the interval closes. The classic instances:

  sss       first +INF, next g          (upper bounds walk down)
  dual      first -INF+1, next g+1      (lower bounds walk up)
  mtd-bi    bisect the remaining interval
  mtd-f     probe at a guess, then creep in the failing direction
  mtd-step  like sss but jumping `stepsize` at a time
  mtd-best  prove one root move best without valuing it exactly

Plus the classical baselines wide-window alpha-beta, NegaScout and aspiration
NegaScout, and an iterative-deepening wrapper that feeds each iteration's
result into the next.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .engine import NodeBudget, alpha_beta, mt, negascout
from .ordering import OrderingContext
from .position import GamePosition
from .ttable import TranspositionTable
from .values import (
    BoundPair,
    MINUS_INF,
    PLUS_INF,
    NodeBudgetExceeded,
    PolicyProgressError,
    SearchStats,
    merge_bound,
)

VALUE_ALGORITHMS = ("ab", "ns", "asp-ns", "sss", "dual", "mtd-bi", "mtd-f", "mtd-step")
ALL_ALGORITHMS = VALUE_ALGORITHMS + ("mtd-best",)

DEFAULT_STEPSIZE = 8
DEFAULT_ASPIRATION_HALF_WIDTH = 16


def _clamp(v: int, lo: int, hi: int) -> int:
    return max(lo, min(hi, v))


@dataclass(frozen=True)
class DriverPolicy:
    """(first, next) pair parameterizing the probe loop.

    `next_bound(g, bounds)` must return a bound strictly above the interval's
    lower edge and at most its upper edge, which guarantees every probe
    tightens the interval.
    """

    name: str
    first: int
    next_bound: Callable[[int, BoundPair], int]


@dataclass(frozen=True)
class ProbeRecord:
    bound: int
    g: int
    fail_direction: str


@dataclass
class DriverOutcome:
    """Result of one driver run: the value, the probe trace, final interval."""

    f: int
    mt_calls: int
    trace: list[ProbeRecord]
    bounds: BoundPair
    best_move: int | None
    stats: SearchStats


def _fresh_table() -> TranspositionTable:
    return TranspositionTable()  # exact-policy: collision-free, grows as needed


def mtd(
    policy: DriverPolicy,
    root: GamePosition,
    depth: int,
    table: TranspositionTable | None = None,
    stats: SearchStats | None = None,
    ordering: OrderingContext | None = None,
    budget: NodeBudget | None = None,
    initial_bounds: BoundPair | None = None,
) -> DriverOutcome:
    """Run probes under `policy` until the root interval closes.

    Every pass narrows [f_minus, f_plus]; a policy that proposes a bound
    outside (f_minus, f_plus], or repeats a probe without the interval having
    moved, raises PolicyProgressError.
    """
    if table is None:
        table = _fresh_table()
    if stats is None:
        stats = SearchStats()
    if ordering is None:
        ordering = OrderingContext()
    table.begin_iteration()

    bounds = initial_bounds if initial_bounds is not None else BoundPair()
    bound = policy.first
    if not bounds.f_minus < bound <= bounds.f_plus:
        raise PolicyProgressError(
            f"policy {policy.name!r} first bound {bound} outside ({bounds.f_minus}, {bounds.f_plus}]"
        )
    trace: list[ProbeRecord] = []
    last_pass = None
    g = 0
    while True:
        if (bound, bounds) == last_pass:
            raise PolicyProgressError(
                f"policy {policy.name!r} repeated bound {bound} with interval unchanged"
            )
        last_pass = (bound, bounds)
        res = mt(root, bound, depth, table, stats, ordering, budget)
        g = res.g
        bounds = merge_bound(bounds, g, bound)
        trace.append(ProbeRecord(bound, g, res.fail_direction))
        if bounds.is_exact:
            break
        bound = policy.next_bound(g, bounds)
        if not bounds.f_minus < bound <= bounds.f_plus:
            raise PolicyProgressError(
                f"policy {policy.name!r} proposed bound {bound} outside ({bounds.f_minus}, {bounds.f_plus}]"
            )
    best_move = None
    if not root.is_terminal() and depth > 0:
        entry, move = table.probe(root.position_key(), depth)
        best_move = move
    return DriverOutcome(g, len(trace), trace, bounds, best_move, stats)


# -- policy instantiations ---------------------------------------------------


def sss_star(root: GamePosition, depth: int, **kw) -> DriverOutcome:
    """Best-first from above: the upper bound walks strictly down to the value."""
    return mtd(DriverPolicy("sss", PLUS_INF, lambda g, b: g), root, depth, **kw)


def dual_star(root: GamePosition, depth: int, **kw) -> DriverOutcome:
    """Best-first from below: the lower bound walks strictly up to the value."""
    return mtd(DriverPolicy("dual", MINUS_INF + 1, lambda g, b: g + 1), root, depth, **kw)


def mtd_f(root: GamePosition, depth: int, first_guess: int = 0, **kw) -> DriverOutcome:
    """Start at a guess; creep downward after fail-lows, upward after fail-highs.

    With first_guess equal to the true value exactly two probes are needed:
    one fails high proving the lower bound, one fails low proving the upper.
    """
    first = _clamp(first_guess, MINUS_INF + 1, PLUS_INF)

    def nxt(g: int, b: BoundPair) -> int:
        # After a fail-low the upper edge equals g, so probe at g; after a
        # fail-high probe just above it.
        return g if b.f_plus == g else g + 1

    return mtd(DriverPolicy("mtd-f", first, nxt), root, depth, **kw)


def mtd_bi(
    root: GamePosition, depth: int, lo: int = MINUS_INF, hi: int = PLUS_INF, **kw
) -> DriverOutcome:
    """Bisect [lo, hi]; requires the value to lie inside that range.

    Probes are clamped to (f_minus, f_plus] so integer bisection always makes
    progress. A value outside the range surfaces as a BoundConflictError when
    a probe at the clamp edge fails outward.
    """
    if lo >= hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")

    def nxt(g: int, b: BoundPair) -> int:
        return _clamp((b.f_minus + b.f_plus) // 2, b.f_minus + 1, b.f_plus)

    first = _clamp((lo + hi) // 2, lo + 1, hi)
    return mtd(
        DriverPolicy("mtd-bi", first, nxt),
        root,
        depth,
        initial_bounds=BoundPair(lo, hi),
        **kw,
    )


def mtd_step(root: GamePosition, depth: int, stepsize: int = DEFAULT_STEPSIZE, **kw) -> DriverOutcome:
    """Like sss_star but descending at most `stepsize` below the latest bound.

    The jump target never reaches the proven lower edge, so each probe stays
    inside the open interval; after a fail-high the rule degenerates to g+1.
    """
    if stepsize < 1:
        raise ValueError(f"stepsize must be >= 1, got {stepsize}")

    def nxt(g: int, b: BoundPair) -> int:
        return max(b.f_minus + 1, g - stepsize)

    return mtd(DriverPolicy("mtd-step", PLUS_INF, nxt), root, depth, **kw)


# -- prove-best driver --------------------------------------------------------


@dataclass(frozen=True)
class MoveProbeRecord:
    move: int
    bound: int
    g: int
    fail_direction: str


@dataclass
class BestMoveOutcome:
    """A proven-best root move with the per-move intervals that certify it."""

    move: int
    proven: bool
    move_bounds: dict[int, BoundPair]
    mt_calls: int
    trace: list[MoveProbeRecord]
    stats: SearchStats
    value_bound: int  # proven lower bound on the winning move (MINUS_INF if none)


def mtd_best(
    root: GamePosition,
    depth: int,
    first_guess: int = 0,
    candidate_move: int | None = None,
    table: TranspositionTable | None = None,
    stats: SearchStats | None = None,
    ordering: OrderingContext | None = None,
    budget: NodeBudget | None = None,
) -> BestMoveOutcome:
    """Prove one root move best without computing its exact value.

    Strategy: establish a lower bound on the candidate (first probe at
    first_guess), then drive every other move's upper bound below it with
    null-window probes. The winner's upper bound is never computed. If a probe
    disproves the current candidate, the move with the best proven interval
    (highest f_minus, then highest f_plus, then move order) takes over.
    Budget exhaustion returns the current candidate flagged unproven.
    """
    if depth < 1:
        raise ValueError("need depth >= 1 to compare root moves")
    moves = list(root.legal_moves())
    if not moves:
        raise ValueError("position has no legal moves")
    if stats is None:
        stats = SearchStats()
    if candidate_move is None:
        candidate_move = moves[0]
    if candidate_move not in moves:
        raise ValueError(f"candidate move {candidate_move} is not legal here")
    move_bounds = {m: BoundPair() for m in moves}
    if len(moves) == 1:
        return BestMoveOutcome(moves[0], True, move_bounds, 0, [], stats, MINUS_INF)

    if table is None:
        table = _fresh_table()
    if ordering is None:
        ordering = OrderingContext()
    table.begin_iteration()
    order_index = {m: i for i, m in enumerate(moves)}
    children = {m: root.apply(m) for m in moves}
    trace: list[MoveProbeRecord] = []

    def probe(move: int, b: int) -> bool:
        res = mt(children[move], 1 - b, depth - 1, table, stats, ordering, budget)
        g = -res.g
        fail_high = g >= b
        move_bounds[move] = merge_bound(move_bounds[move], g, b)
        trace.append(MoveProbeRecord(move, b, g, "high" if fail_high else "low"))
        return fail_high

    def fallback() -> int:
        # Highest proven lower bound; ties: highest upper bound, then move order.
        return max(
            moves,
            key=lambda m: (move_bounds[m].f_minus, move_bounds[m].f_plus, -order_index[m]),
        )

    cand = candidate_move
    try:
        while True:
            cb = move_bounds[cand]
            others_plus = max(move_bounds[m].f_plus for m in moves if m != cand)
            if cb.f_minus > MINUS_INF and cb.f_minus >= others_plus:
                return BestMoveOutcome(
                    cand, True, move_bounds, len(trace), trace, stats, cb.f_minus
                )
            if cb.f_minus == MINUS_INF:
                if not probe(cand, _clamp(first_guess, cb.f_minus + 1, cb.f_plus)):
                    cand = fallback()  # candidate disproved at this target
                continue
            blocker = max(
                (m for m in moves if m != cand and move_bounds[m].f_plus >= cb.f_minus),
                key=lambda m: (move_bounds[m].f_plus, -order_index[m]),
            )
            bb = move_bounds[blocker]
            if probe(blocker, _clamp(cb.f_minus, bb.f_minus + 1, bb.f_plus)):
                cand = fallback()  # blocker is at least as good
    except NodeBudgetExceeded:
        cand = fallback()
        return BestMoveOutcome(
            cand, False, move_bounds, len(trace), trace, stats, move_bounds[cand].f_minus
        )


# -- classical baselines -------------------------------------------------------


def aspiration_negascout(
    root: GamePosition,
    depth: int,
    previous_f: int = 0,
    half_width: int = DEFAULT_ASPIRATION_HALF_WIDTH,
    table: TranspositionTable | None = None,
    stats: SearchStats | None = None,
    ordering: OrderingContext | None = None,
    budget: NodeBudget | None = None,
) -> int:
    """NegaScout inside a narrow window around `previous_f`; exact after at most
    one widened re-search (downward on fail-low, upward on fail-high)."""
    if half_width < 1:
        raise ValueError(f"half_width must be >= 1, got {half_width}")
    if table is None:
        table = _fresh_table()
    if stats is None:
        stats = SearchStats()
    if ordering is None:
        ordering = OrderingContext()
    table.begin_iteration()
    alpha = max(MINUS_INF, previous_f - half_width)
    beta = min(PLUS_INF, previous_f + half_width)
    g = negascout(root, alpha, beta, depth, table, stats, ordering, budget)
    if g <= alpha:
        stats.researches += 1
        g = negascout(root, MINUS_INF, g + 1, depth, table, stats, ordering, budget)
    elif g >= beta:
        stats.researches += 1
        g = negascout(root, g, PLUS_INF, depth, table, stats, ordering, budget)
    return g


# -- iterative deepening -------------------------------------------------------


@dataclass
class IterationResult:
    """One completed deepening step."""

    depth: int
    value: int
    best_move: int | None
    mt_calls: int
    stats: SearchStats
    proven: bool = True
    wall_ms: float = 0.0


def _root_move(table: TranspositionTable, root: GamePosition, depth: int) -> int | None:
    if root.is_terminal() or depth < 1:
        return None
    _, move = table.probe(root.position_key(), depth)
    return move


def iterative_deepening(
    algorithm: str,
    root: GamePosition,
    max_depth: int,
    depth_step: int = 1,
    table: TranspositionTable | None = None,
    ordering: OrderingContext | None = None,
    budget: NodeBudget | None = None,
    stepsize: int = DEFAULT_STEPSIZE,
    half_width: int = DEFAULT_ASPIRATION_HALF_WIDTH,
    lo: int = MINUS_INF,
    hi: int = PLUS_INF,
) -> list[IterationResult]:
    """Search depths depth_step, 2*depth_step, ... max_depth reusing one table.

    mtd-f and aspiration NegaScout seed each iteration with the previous
    iteration's value (0 on the first); mtd-best also seeds its candidate
    move. Running out of budget ends the sequence cleanly after the last
    completed depth.
    """
    if algorithm not in ALL_ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALL_ALGORITHMS}")
    if max_depth < 1:
        raise ValueError(f"max_depth must be >= 1, got {max_depth}")
    if depth_step not in (1, 2):
        raise ValueError(f"depth_step must be 1 or 2, got {depth_step}")
    if table is None:
        table = _fresh_table()
    if ordering is None:
        ordering = OrderingContext()

    results: list[IterationResult] = []
    prev_value = 0
    prev_move = None
    for depth in range(depth_step, max_depth + 1, depth_step):
        stats = SearchStats()
        t0 = time.perf_counter()
        try:
            if algorithm == "ab":
                table.begin_iteration()
                value = alpha_beta(root, MINUS_INF, PLUS_INF, depth, table, stats, ordering, budget)
                move, proven = _root_move(table, root, depth), True
            elif algorithm == "ns":
                table.begin_iteration()
                value = negascout(root, MINUS_INF, PLUS_INF, depth, table, stats, ordering, budget)
                move, proven = _root_move(table, root, depth), True
            elif algorithm == "asp-ns":
                value = aspiration_negascout(
                    root, depth, prev_value, half_width, table, stats, ordering, budget
                )
                move, proven = _root_move(table, root, depth), True
            elif algorithm == "mtd-best":
                best = mtd_best(
                    root, depth, prev_value, prev_move, table, stats, ordering, budget
                )
                if not best.proven and budget is not None and budget.exhausted:
                    break
                value = best.value_bound if best.value_bound > MINUS_INF else 0
                move, proven = best.move, best.proven
            else:
                kw = dict(table=table, stats=stats, ordering=ordering, budget=budget)
                if algorithm == "sss":
                    out = sss_star(root, depth, **kw)
                elif algorithm == "dual":
                    out = dual_star(root, depth, **kw)
                elif algorithm == "mtd-bi":
                    out = mtd_bi(root, depth, lo, hi, **kw)
                elif algorithm == "mtd-f":
                    out = mtd_f(root, depth, prev_value, **kw)
                else:
                    out = mtd_step(root, depth, stepsize, **kw)
                value, move, proven = out.f, out.best_move, True
        except NodeBudgetExceeded:
            break
        wall_ms = (time.perf_counter() - t0) * 1000.0
        results.append(
            IterationResult(depth, value, move, stats.mt_calls, stats, proven, wall_ms)
        )
        prev_value = value
        if move is not None:
            prev_move = move
    return results
