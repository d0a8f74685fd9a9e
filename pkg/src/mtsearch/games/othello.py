"""6x6 Othello: medium branching factor, passes, real transpositions.

The small board keeps brute-force cross-checks and deep iterative searches
fast while preserving the full rules: a side with no placement passes (a
single explicit pass move); the game ends when neither side can place.
"""

from __future__ import annotations

from ..position import GamePosition
from ..ttable import ZobristKeys

N = 6
CELLS = N * N
PASS_MOVE = CELLS

BLACK = 0
WHITE = 1

# Evaluation weights (integer evaluation units).
DISC_WEIGHT = 2
MOBILITY_WEIGHT = 8
CORNER_WEIGHT = 40
TERMINAL_BASE = 10000

CORNERS = (0, N - 1, CELLS - N, CELLS - 1)


def _build_rays():
    steps = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))
    rays = []
    for sq in range(CELLS):
        r, c = divmod(sq, N)
        per_square = []
        for dr, dc in steps:
            ray = []
            rr, cc = r + dr, c + dc
            while 0 <= rr < N and 0 <= cc < N:
                ray.append(rr * N + cc)
                rr += dr
                cc += dc
            if len(ray) >= 2:
                # Shorter rays can never bracket an opposing disc.
                per_square.append(tuple(ray))
        rays.append(tuple(per_square))
    return tuple(rays)


_RAYS = _build_rays()

# 36 squares x 2 colors; feature id = square * 2 + color.
_ZOBRIST = ZobristKeys(CELLS * 2, seed=0x0677E110)


def _initial_boards() -> tuple[int, int]:
    mid = N // 2
    nw = (mid - 1) * N + (mid - 1)
    ne = (mid - 1) * N + mid
    sw = mid * N + (mid - 1)
    se = mid * N + mid
    white = (1 << nw) | (1 << se)
    black = (1 << ne) | (1 << sw)
    return black, white


class OthelloState(GamePosition):
    """Bitboard pair (black, white) plus side to move; black plays first."""

    __slots__ = ("boards", "to_move", "_placements", "_opp_placements", "_key")

    def __init__(self, boards: tuple[int, int] | None = None, to_move: int = BLACK):
        if boards is None:
            boards = _initial_boards()
        self.boards = boards
        self.to_move = to_move
        self._placements = self._find_placements(to_move)
        self._opp_placements: tuple | None = None
        key = _ZOBRIST.side_key if to_move == WHITE else 0
        for color in (BLACK, WHITE):
            bb = boards[color]
            while bb:
                sq = (bb & -bb).bit_length() - 1
                key ^= _ZOBRIST.feature_keys[sq * 2 + color]
                bb &= bb - 1
        self._key = key

    def _find_placements(self, color: int) -> tuple:
        own = self.boards[color]
        opp = self.boards[1 - color]
        occupied = own | opp
        moves = []
        for sq in range(CELLS):
            if occupied & (1 << sq):
                continue
            for ray in _RAYS[sq]:
                seen_opp = False
                legal = False
                for cell in ray:
                    bit = 1 << cell
                    if opp & bit:
                        seen_opp = True
                    elif own & bit:
                        legal = seen_opp
                        break
                    else:
                        break
                if legal:
                    moves.append(sq)
                    break
        return tuple(moves)

    def _opponent_placements(self) -> tuple:
        if self._opp_placements is None:
            self._opp_placements = self._find_placements(1 - self.to_move)
        return self._opp_placements

    def legal_moves(self):
        if self._placements:
            return self._placements
        if self._opponent_placements():
            return (PASS_MOVE,)
        return ()

    def apply(self, move: int) -> "OthelloState":
        me = self.to_move
        if move == PASS_MOVE:
            if self._placements:
                raise ValueError("pass is only legal with no placement available")
            return OthelloState(self.boards, 1 - me)
        if move not in self._placements:
            raise ValueError(f"illegal placement {move}")
        own = self.boards[me]
        opp = self.boards[1 - me]
        flips = 0
        for ray in _RAYS[move]:
            line = 0
            for cell in ray:
                bit = 1 << cell
                if opp & bit:
                    line |= bit
                elif own & bit:
                    flips |= line
                    break
                else:
                    break
        own |= flips | (1 << move)
        opp &= ~flips
        boards = (own, opp) if me == BLACK else (opp, own)
        return OthelloState(boards, 1 - me)

    def is_terminal(self) -> bool:
        return not self._placements and not self._opponent_placements()

    def disc_count(self, color: int) -> int:
        return bin(self.boards[color]).count("1")

    def evaluate(self) -> int:
        me = self.to_move
        opp = 1 - me
        margin = self.disc_count(me) - self.disc_count(opp)
        if self.is_terminal():
            if margin > 0:
                return TERMINAL_BASE + margin
            if margin < 0:
                return -TERMINAL_BASE + margin
            return 0
        my_mob = len(self._placements)
        opp_mob = len(self._opponent_placements())
        corners = 0
        my_board = self.boards[me]
        opp_board = self.boards[opp]
        for sq in CORNERS:
            bit = 1 << sq
            if my_board & bit:
                corners += 1
            elif opp_board & bit:
                corners -= 1
        return DISC_WEIGHT * margin + MOBILITY_WEIGHT * (my_mob - opp_mob) + CORNER_WEIGHT * corners

    def position_key(self) -> int:
        return self._key
