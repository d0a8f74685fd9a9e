"""Brute-force ground truth: plain negamax with no pruning, no windows, no memory.

Every derived expectation in the test suite is checked against this routine,
so it deliberately shares no code path with the real searches.
"""

from __future__ import annotations

from ..position import GamePosition
from ..values import OracleLimitError

DEFAULT_NODE_CEILING = 5_000_000


class _Counter:
    __slots__ = ("visited", "ceiling")

    def __init__(self, ceiling: int):
        self.visited = 0
        self.ceiling = ceiling


def oracle_minimax(
    position: GamePosition, depth: int, node_ceiling: int = DEFAULT_NODE_CEILING
) -> int:
    """Exact minimax value at fixed depth, visiting every node.

    Raises OracleLimitError when the enumeration would exceed `node_ceiling`
    nodes; the guard keeps accidental w^d blowups from hanging a test run.
    """
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    return _enumerate(position, depth, _Counter(node_ceiling))


def _enumerate(pos: GamePosition, depth: int, c: _Counter) -> int:
    c.visited += 1
    if c.visited > c.ceiling:
        raise OracleLimitError(f"oracle enumeration exceeded {c.ceiling} nodes")
    if depth == 0 or pos.is_terminal():
        return pos.evaluate()
    best = None
    for move in pos.legal_moves():
        v = -_enumerate(pos.apply(move), depth - 1, c)
        if best is None or v > best:
            best = v
    if best is None:
        raise ValueError("non-terminal position produced no legal moves")
    return best


def oracle_best_move(
    position: GamePosition, depth: int, node_ceiling: int = DEFAULT_NODE_CEILING
) -> tuple[int, int]:
    """(move, value) maximizing the oracle value; ties go to static move order."""
    if depth < 1:
        raise ValueError("need depth >= 1 to rank root moves")
    c = _Counter(node_ceiling)
    best_move = None
    best_value = None
    for move in position.legal_moves():
        v = -_enumerate(position.apply(move), depth - 1, c)
        if best_value is None or v > best_value:
            best_move = move
            best_value = v
    if best_move is None:
        raise ValueError("position has no legal moves")
    return best_move, best_value
