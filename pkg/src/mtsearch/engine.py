"""Node-level search procedures: the null-window memory test, alpha-beta, NegaScout.

All three are fail-soft negamax searches sharing one transposition-table and
move-ordering discipline, so their node counts are directly comparable. The
null-window test `mt` classifies the minimax value against a single bound and
is the primitive every driver in `drivers` is built from.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ordering import OrderingContext, history_update, order_moves
from .position import GamePosition
from .ttable import TranspositionTable
from .values import (
    BoundPair,
    MINUS_INF,
    PLUS_INF,
    NodeBudgetExceeded,
    SearchError,
    SearchStats,
)


class NodeBudget:
    """Countdown over total nodes (leaf + interior), shared across searches."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        if limit <= 0:
            raise ValueError(f"node budget must be > 0, got {limit}")
        self.limit = limit
        self.used = 0

    @property
    def exhausted(self) -> bool:
        return self.used >= self.limit

    def charge(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise NodeBudgetExceeded(f"node budget of {self.limit} exhausted")


@dataclass(frozen=True)
class MTResult:
    """Outcome of one null-window probe against `bound`.

    fail_direction "low" means the true value is at most g (g < bound);
    "high" means it is at least g (g >= bound). leaf_evals counts the new
    leaf evaluations this probe performed.
    """

    g: int
    fail_direction: str
    leaf_evals: int

    @property
    def fail_high(self) -> bool:
        return self.fail_direction == "high"


class _Search:
    """Per-call bundle of table, stats, ordering and budget (single-threaded)."""

    __slots__ = ("table", "stats", "ordering", "budget")

    def __init__(self, table, stats, ordering, budget):
        self.table = table
        self.stats = stats
        self.ordering = ordering
        self.budget = budget


def mt(
    position: GamePosition,
    bound: int,
    depth: int,
    table: TranspositionTable | None = None,
    stats: SearchStats | None = None,
    ordering: OrderingContext | None = None,
    budget: NodeBudget | None = None,
) -> MTResult:
    """Classify the minimax value of `position` at `depth` against `bound`.

    Probes the null window [bound-1, bound]: the returned g is a sound upper
    bound on the value when g < bound and a sound lower bound when g >= bound.
    Results are stored in the table so repeated probes never re-expand proven
    subtrees. On budget exhaustion the search aborts with partial stats and
    no in-flight node is stored.
    """
    if not MINUS_INF < bound <= PLUS_INF:
        raise ValueError(f"bound {bound} outside ({MINUS_INF}, {PLUS_INF}]")
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if stats is None:
        stats = SearchStats()
    if table is not None:
        table.begin_iteration()
    stats.mt_calls += 1
    before = stats.leaf_evals
    g = _mt(position, bound, depth, 0, _Search(table, stats, ordering, budget))
    direction = "high" if g >= bound else "low"
    return MTResult(g, direction, stats.leaf_evals - before)


def _mt(pos: GamePosition, bound: int, depth: int, ply: int, s: _Search) -> int:
    table = s.table
    stats = s.stats
    key = 0
    tt_move = None
    if table is not None:
        key = pos.position_key()
        stats.tt_probes += 1
        entry, tt_move = table.probe(key, depth)
        if entry is not None:
            stats.tt_hits += 1
            b = entry.bounds
            if b.f_minus >= bound:
                stats.tt_cutoffs += 1
                return b.f_minus
            if b.f_plus < bound:
                stats.tt_cutoffs += 1
                return b.f_plus

    if depth == 0 or pos.is_terminal():
        if s.budget is not None:
            s.budget.charge()
        stats.leaf_evals += 1
        v = pos.evaluate()
        if table is not None:
            table.store(key, depth, BoundPair(v, v), None)
            stats.tt_stores += 1
        return v

    if s.budget is not None:
        s.budget.charge()
    stats.interior_nodes += 1
    ordering = s.ordering
    if ordering is not None:
        ordering.table_move = tt_move
        moves = order_moves(pos, ordering)
    else:
        moves = pos.legal_moves()

    g = MINUS_INF
    best = None
    examined = 0
    child_bound = 1 - bound
    for move in moves:
        v = -_mt(pos.apply(move), child_bound, depth - 1, ply + 1, s)
        examined += 1
        if v > g:
            g = v
            best = move
        if g >= bound:
            break
    if best is None:
        raise SearchError("non-terminal position produced no legal moves")

    if g >= bound:
        stats.record_cut(ply, examined)
        history_update(ordering, best, depth)
        if table is not None:
            table.store(key, depth, BoundPair(g, PLUS_INF), best)
            stats.tt_stores += 1
    else:
        if table is not None:
            table.store(key, depth, BoundPair(MINUS_INF, g), None)
            stats.tt_stores += 1
    return g


def alpha_beta(
    position: GamePosition,
    alpha: int,
    beta: int,
    depth: int,
    table: TranspositionTable | None = None,
    stats: SearchStats | None = None,
    ordering: OrderingContext | None = None,
    budget: NodeBudget | None = None,
) -> int:
    """Fail-soft alpha-beta: exact inside (alpha, beta), a sound bound outside.

    With beta == alpha + 1 this performs exactly the same search as
    mt(position, beta, ...): same expansions, same stores, same result.
    """
    if alpha >= beta:
        raise ValueError(f"require alpha < beta, got [{alpha}, {beta}]")
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if stats is None:
        stats = SearchStats()
    return _alpha_beta(position, alpha, beta, depth, 0, _Search(table, stats, ordering, budget))


def _window_probe(pos, alpha, beta, depth, s):
    """Shared probe/leaf handling for the windowed searches.

    Returns (value, key, tt_move, done). When done is True, `value` is the
    answer for this node (table cutoff or leaf evaluation).
    """
    table = s.table
    stats = s.stats
    key = 0
    tt_move = None
    if table is not None:
        key = pos.position_key()
        stats.tt_probes += 1
        entry, tt_move = table.probe(key, depth)
        if entry is not None:
            stats.tt_hits += 1
            b = entry.bounds
            if b.f_minus >= beta:
                stats.tt_cutoffs += 1
                return b.f_minus, key, tt_move, True
            if b.f_plus <= alpha:
                stats.tt_cutoffs += 1
                return b.f_plus, key, tt_move, True
            if b.f_minus == b.f_plus:
                stats.tt_cutoffs += 1
                return b.f_minus, key, tt_move, True

    if depth == 0 or pos.is_terminal():
        if s.budget is not None:
            s.budget.charge()
        stats.leaf_evals += 1
        v = pos.evaluate()
        if table is not None:
            table.store(key, depth, BoundPair(v, v), None)
            stats.tt_stores += 1
        return v, key, tt_move, True

    if s.budget is not None:
        s.budget.charge()
    stats.interior_nodes += 1
    return 0, key, tt_move, False


def _store_window_result(s, key, depth, ply, alpha, beta, g, best, examined) -> None:
    """Classify a completed window search and store/credit accordingly."""
    stats = s.stats
    if g >= beta:
        stats.record_cut(ply, examined)
        history_update(s.ordering, best, depth)
        if s.table is not None:
            s.table.store(key, depth, BoundPair(g, PLUS_INF), best)
            stats.tt_stores += 1
    elif g > alpha:
        # Exact value proven: store a closed interval and credit the best move.
        history_update(s.ordering, best, depth)
        if s.table is not None:
            s.table.store(key, depth, BoundPair(g, g), best)
            stats.tt_stores += 1
    else:
        if s.table is not None:
            s.table.store(key, depth, BoundPair(MINUS_INF, g), None)
            stats.tt_stores += 1


def _ordered_moves(pos, tt_move, s):
    ordering = s.ordering
    if ordering is not None:
        ordering.table_move = tt_move
        return order_moves(pos, ordering)
    return pos.legal_moves()


def _alpha_beta(pos, alpha, beta, depth, ply, s):
    v, key, tt_move, done = _window_probe(pos, alpha, beta, depth, s)
    if done:
        return v

    moves = _ordered_moves(pos, tt_move, s)
    g = MINUS_INF
    a = alpha
    best = None
    examined = 0
    for move in moves:
        v = -_alpha_beta(pos.apply(move), -beta, -a, depth - 1, ply + 1, s)
        examined += 1
        if v > g:
            g = v
            best = move
        if v > a:
            a = v
        if g >= beta:
            break
    if best is None:
        raise SearchError("non-terminal position produced no legal moves")

    _store_window_result(s, key, depth, ply, alpha, beta, g, best, examined)
    return g


def negascout(
    position: GamePosition,
    alpha: int,
    beta: int,
    depth: int,
    table: TranspositionTable | None = None,
    stats: SearchStats | None = None,
    ordering: OrderingContext | None = None,
    budget: NodeBudget | None = None,
) -> int:
    """Principal-variation search with the alpha_beta value contract.

    The first move is searched with the full window; every sibling gets a
    null-window scout first and is re-searched with a widened window only when
    the scout fails high inside the window. stats.researches counts those
    re-searches.
    """
    if alpha >= beta:
        raise ValueError(f"require alpha < beta, got [{alpha}, {beta}]")
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if stats is None:
        stats = SearchStats()
    return _negascout(position, alpha, beta, depth, 0, _Search(table, stats, ordering, budget))


def _negascout(pos, alpha, beta, depth, ply, s):
    v, key, tt_move, done = _window_probe(pos, alpha, beta, depth, s)
    if done:
        return v

    moves = _ordered_moves(pos, tt_move, s)
    g = MINUS_INF
    a = alpha
    best = None
    examined = 0
    first = True
    for move in moves:
        child = pos.apply(move)
        if first:
            v = -_negascout(child, -beta, -a, depth - 1, ply + 1, s)
            first = False
        else:
            v = -_negascout(child, -(a + 1), -a, depth - 1, ply + 1, s)
            if a < v < beta:
                # Scout proved value >= v inside the window: resolve exactly.
                s.stats.researches += 1
                v = -_negascout(child, -beta, -(v - 1), depth - 1, ply + 1, s)
        examined += 1
        if v > g:
            g = v
            best = move
        if v > a:
            a = v
        if g >= beta:
            break
    if best is None:
        raise SearchError("non-terminal position produced no legal moves")

    _store_window_result(s, key, depth, ply, alpha, beta, g, best, examined)
    return g
