"""Search domains: explicit trees, seeded synthetic trees, tic-tac-toe, 6x6 Othello."""

from .explicit import ExplicitTreePosition, from_nested
from .oracle import oracle_best_move, oracle_minimax
from .othello import OthelloState
from .synthetic import SyntheticPosition, SyntheticTreeConfig, leaf_value_range, root, walk_nodes
from .tictactoe import TicTacToeState

GAME_NAMES = ("synthetic", "tictactoe", "othello6")

__all__ = [
    "ExplicitTreePosition",
    "from_nested",
    "oracle_best_move",
    "oracle_minimax",
    "OthelloState",
    "SyntheticPosition",
    "SyntheticTreeConfig",
    "leaf_value_range",
    "root",
    "walk_nodes",
    "TicTacToeState",
    "GAME_NAMES",
]
