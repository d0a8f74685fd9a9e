"""Integer score arithmetic and the bound bookkeeping shared by every search."""

from __future__ import annotations

from dataclasses import dataclass, field

# Sentinels are large finite integers rather than machine extremes so that
# negation and the +/-1 null-window arithmetic can never overflow. All real
# evaluations must lie strictly inside (MINUS_INF, PLUS_INF).
PLUS_INF = 32000
MINUS_INF = -32000


class SearchError(Exception):
    """Base class for search failures."""


class BoundConflictError(SearchError):
    """A bound update crossed over (f_minus > f_plus).

    Signals an unsound search or a corrupted table entry; never raised during
    normal operation.
    """


class PolicyProgressError(SearchError):
    """A driver policy proposed a probe bound that cannot make progress."""


class NodeBudgetExceeded(SearchError):
    """The configured node budget ran out mid-search."""


class OracleLimitError(SearchError):
    """Brute-force enumeration would exceed the configured node ceiling."""


class VerificationError(SearchError):
    """An oracle cross-check failed; the message identifies the offending cell."""


def negamax_flip(v: int) -> int:
    """Negate a score; symmetric sentinels make this total (-PLUS_INF == MINUS_INF)."""
    return -v


@dataclass(frozen=True)
class BoundPair:
    """Interval [f_minus, f_plus] known to contain a node's minimax value.

    f_minus == f_plus means the exact value is proven.
    """

    f_minus: int = MINUS_INF
    f_plus: int = PLUS_INF

    def __post_init__(self) -> None:
        if self.f_minus > self.f_plus:
            raise BoundConflictError(
                f"crossed bounds: f_minus={self.f_minus} > f_plus={self.f_plus}"
            )

    @property
    def is_exact(self) -> bool:
        return self.f_minus == self.f_plus

    @property
    def width(self) -> int:
        return self.f_plus - self.f_minus

    def contains(self, v: int) -> bool:
        return self.f_minus <= v <= self.f_plus

    def intersect(self, other: "BoundPair") -> "BoundPair":
        """Tightest interval consistent with both; raises if they are disjoint."""
        return BoundPair(max(self.f_minus, other.f_minus), min(self.f_plus, other.f_plus))


def merge_bound(b: BoundPair, g: int, bound: int) -> BoundPair:
    """Fold a null-window result into an interval.

    A probe against `bound` that came back with g < bound proves the value is
    at most g (new f_plus); g >= bound proves it is at least g (new f_minus).
    Raises BoundConflictError if the update would cross the pair.
    """
    if not MINUS_INF < bound <= PLUS_INF:
        raise ValueError(f"probe bound {bound} outside ({MINUS_INF}, {PLUS_INF}]")
    if g < bound:
        return BoundPair(b.f_minus, g)
    return BoundPair(g, b.f_plus)


@dataclass(frozen=True)
class SearchLimits:
    """Fixed search horizon in plies plus an optional total node budget."""

    depth: int
    node_budget: int | None = None

    def __post_init__(self) -> None:
        if self.depth < 0:
            raise ValueError(f"depth must be >= 0, got {self.depth}")
        if self.node_budget is not None and self.node_budget <= 0:
            raise ValueError(f"node budget must be > 0, got {self.node_budget}")


@dataclass
class SearchStats:
    """Observational counters; they never influence search decisions.

    leaf_evals is the NBP metric: with a collision-free table each leaf is
    evaluated at most once, so the counter equals unique leaf evaluations.
    """

    leaf_evals: int = 0
    interior_nodes: int = 0
    tt_probes: int = 0
    tt_hits: int = 0
    tt_cutoffs: int = 0
    tt_stores: int = 0
    mt_calls: int = 0
    cut_nodes: int = 0
    cut_node_moves_examined: int = 0
    first_move_cuts: int = 0
    researches: int = 0
    cut_nodes_by_ply: dict[int, int] = field(default_factory=dict)
    first_move_cuts_by_ply: dict[int, int] = field(default_factory=dict)

    @property
    def total_nodes(self) -> int:
        return self.leaf_evals + self.interior_nodes

    def record_cut(self, ply: int, moves_examined: int) -> None:
        self.cut_nodes += 1
        self.cut_node_moves_examined += moves_examined
        self.cut_nodes_by_ply[ply] = self.cut_nodes_by_ply.get(ply, 0) + 1
        if moves_examined == 1:
            self.first_move_cuts += 1
            self.first_move_cuts_by_ply[ply] = self.first_move_cuts_by_ply.get(ply, 0) + 1

    def ordering_rate(self) -> float:
        """Fraction of cut nodes where the first move examined caused the cutoff."""
        if self.cut_nodes == 0:
            return 1.0
        return self.first_move_cuts / self.cut_nodes

    def add(self, other: "SearchStats") -> None:
        """Accumulate another stats block into this one (cumulative reporting)."""
        self.leaf_evals += other.leaf_evals
        self.interior_nodes += other.interior_nodes
        self.tt_probes += other.tt_probes
        self.tt_hits += other.tt_hits
        self.tt_cutoffs += other.tt_cutoffs
        self.tt_stores += other.tt_stores
        self.mt_calls += other.mt_calls
        self.cut_nodes += other.cut_nodes
        self.cut_node_moves_examined += other.cut_node_moves_examined
        self.first_move_cuts += other.first_move_cuts
        self.researches += other.researches
        for ply, n in other.cut_nodes_by_ply.items():
            self.cut_nodes_by_ply[ply] = self.cut_nodes_by_ply.get(ply, 0) + n
        for ply, n in other.first_move_cuts_by_ply.items():
            self.first_move_cuts_by_ply[ply] = self.first_move_cuts_by_ply.get(ply, 0) + n
