"""Minimax game-tree search built on memory-enhanced null-window probes.

The engine provides one primitive, `mt`: a null-window alpha-beta search with
a transposition table that stores upper and lower bounds per position. The
`drivers` module steers repeated probes to the exact minimax value (sss_star,
dual_star, mtd_bi, mtd_f, mtd_step), proves a best move without valuing it
(mtd_best), and offers the classical wide-window baselines for comparison.
"""

from .values import (
    BoundConflictError,
    BoundPair,
    MINUS_INF,
    NodeBudgetExceeded,
    OracleLimitError,
    PLUS_INF,
    PolicyProgressError,
    SearchError,
    SearchLimits,
    SearchStats,
    VerificationError,
    merge_bound,
    negamax_flip,
)
from .position import GamePosition
from .ordering import OrderingContext, history_update, order_moves
from .ttable import TTConfig, TTEntry, TranspositionTable, ZobristKeys, mix, splitmix64
from .engine import MTResult, NodeBudget, alpha_beta, mt, negascout
from .drivers import (
    ALL_ALGORITHMS,
    BestMoveOutcome,
    DriverOutcome,
    DriverPolicy,
    IterationResult,
    MoveProbeRecord,
    ProbeRecord,
    VALUE_ALGORITHMS,
    aspiration_negascout,
    dual_star,
    iterative_deepening,
    mtd,
    mtd_best,
    mtd_bi,
    mtd_f,
    mtd_step,
    sss_star,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_ALGORITHMS",
    "BestMoveOutcome",
    "BoundConflictError",
    "BoundPair",
    "DriverOutcome",
    "DriverPolicy",
    "GamePosition",
    "IterationResult",
    "MINUS_INF",
    "MTResult",
    "MoveProbeRecord",
    "NodeBudget",
    "NodeBudgetExceeded",
    "OracleLimitError",
    "OrderingContext",
    "PLUS_INF",
    "PolicyProgressError",
    "ProbeRecord",
    "SearchError",
    "SearchLimits",
    "SearchStats",
    "TTConfig",
    "TTEntry",
    "TranspositionTable",
    "VALUE_ALGORITHMS",
    "VerificationError",
    "ZobristKeys",
    "alpha_beta",
    "aspiration_negascout",
    "dual_star",
    "history_update",
    "iterative_deepening",
    "merge_bound",
    "mix",
    "mt",
    "mtd",
    "mtd_best",
    "mtd_bi",
    "mtd_f",
    "mtd_step",
    "negamax_flip",
    "negascout",
    "order_moves",
    "splitmix64",
    "sss_star",
]
