"""Tic-tac-toe: a tiny real game with transpositions, solvable exactly."""

from __future__ import annotations

from ..position import GamePosition
from ..ttable import ZobristKeys

WIN_SCORE = 10000

_LINES = (
    (0, 1, 2), (3, 4, 5), (6, 7, 8),
    (0, 3, 6), (1, 4, 7), (2, 5, 8),
    (0, 4, 8), (2, 4, 6),
)

# 9 squares x 2 pieces; feature id = square * 2 + (piece - 1).
_ZOBRIST = ZobristKeys(18, seed=0x71C7AC70E)


class TicTacToeState(GamePosition):
    """Board cells hold 0 (empty), 1 (X) or 2 (O); X moves first."""

    __slots__ = ("cells", "to_move", "_winner", "_key")

    def __init__(self, cells: tuple = (0,) * 9, to_move: int = 1):
        self.cells = cells
        self.to_move = to_move
        self._winner = self._find_winner()
        key = _ZOBRIST.side_key if to_move == 2 else 0
        for sq, piece in enumerate(cells):
            if piece:
                key ^= _ZOBRIST.feature_keys[sq * 2 + piece - 1]
        self._key = key

    def _find_winner(self) -> int:
        cells = self.cells
        for a, b, c in _LINES:
            if cells[a] and cells[a] == cells[b] == cells[c]:
                return cells[a]
        return 0

    def legal_moves(self):
        if self._winner:
            return ()
        return tuple(sq for sq in range(9) if not self.cells[sq])

    def apply(self, move: int) -> "TicTacToeState":
        if self.cells[move]:
            raise ValueError(f"square {move} is occupied")
        cells = list(self.cells)
        cells[move] = self.to_move
        return TicTacToeState(tuple(cells), 3 - self.to_move)

    def is_terminal(self) -> bool:
        return self._winner != 0 or all(self.cells)

    def evaluate(self) -> int:
        if self._winner:
            # Only the previous mover can have completed a line.
            return -WIN_SCORE if self._winner != self.to_move else WIN_SCORE
        if all(self.cells):
            return 0
        me, opp = self.to_move, 3 - self.to_move
        open_mine = open_theirs = 0
        for a, b, c in _LINES:
            line = (self.cells[a], self.cells[b], self.cells[c])
            if opp not in line:
                open_mine += 1
            if me not in line:
                open_theirs += 1
        return 10 * (open_mine - open_theirs)

    def position_key(self) -> int:
        return self._key
