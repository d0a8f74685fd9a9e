"""Move ordering shared by the searches: table move first, then history scores."""

from __future__ import annotations

from dataclasses import dataclass, field

from .position import GamePosition


@dataclass
class OrderingContext:
    """Dynamic move-ordering state owned by a single search.

    `table_move` is transient: the search sets it from the transposition table
    just before asking for the ordering of the current node.
    """

    history: dict[int, int] = field(default_factory=dict)
    use_table_move: bool = True
    use_history: bool = True
    table_move: int | None = None

    @classmethod
    def static(cls) -> "OrderingContext":
        """Context that leaves the game's static move order untouched."""
        return cls(use_table_move=False, use_history=False)


def order_moves(position: GamePosition, context: OrderingContext | None):
    """Permutation of the legal moves: table move first, rest by history score.

    Ties keep the static game order (the position's own move sequence). With
    no context, or with both features disabled, the static order is returned
    unchanged.
    """
    moves = position.legal_moves()
    if context is None:
        return moves
    table_move = context.table_move if context.use_table_move else None
    if context.use_history and context.history:
        history = context.history
        moves = sorted(moves, key=lambda m: -history.get(m, 0))
        if table_move is not None and table_move in moves:
            moves.remove(table_move)
            moves.insert(0, table_move)
        return moves
    if table_move is not None and table_move in moves:
        moves = [m for m in moves if m != table_move]
        moves.insert(0, table_move)
    return moves


def history_update(context: OrderingContext | None, move: int, depth: int) -> None:
    """Credit a move that caused a cutoff or proved best at `depth` plies.

    Scores grow by 2^depth so deep successes dominate; they never decrease
    within one search.
    """
    if context is None or not context.use_history:
        return
    context.history[move] = context.history.get(move, 0) + (1 << depth)
