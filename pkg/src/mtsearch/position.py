"""The position abstraction every search operates on (negamax convention)."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Sequence


class GamePosition(ABC):
    """One side-to-move position in some game or tree.

    Implementations are immutable by convention: apply() returns a new child
    position and never mutates the receiver, so independent searches may hold
    copies freely. The move list of a fixed position is a fixed sequence, and
    it is empty exactly when the position is terminal.
    """

    @abstractmethod
    def legal_moves(self) -> Sequence[int]:
        """Moves in the position's fixed static order (empty iff terminal)."""

    @abstractmethod
    def apply(self, move: int) -> "GamePosition":
        """Child position after playing `move`; deterministic."""

    @abstractmethod
    def is_terminal(self) -> bool:
        """True when no move (not even a pass) is possible."""

    @abstractmethod
    def evaluate(self) -> int:
        """Score from the side to move, strictly inside (MINUS_INF, PLUS_INF).

        Consecutive plies flip sign: the same line scored one ply deeper is
        seen from the opponent, so its evaluation is negated.
        """

    @abstractmethod
    def position_key(self) -> int:
        """64-bit hash; equal for transposed positions, includes side to move."""
