"""Seeded synthetic game trees with controllable shape, values and move ordering.

Every property of a tree (child counts, leaf values, move order) is a pure
function of (seed, path), so nodes can be evaluated in any order and two
processes always reconstruct the same tree. Leaf values are correlated along
paths by default: each edge contributes a bounded increment and a node's value
is the running sum, which also gives shallow searches a meaningful heuristic.
Independent mode draws each node's value from a hash of its full path instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..position import GamePosition
from ..ttable import mix, splitmix64

# Purpose tags keep the per-node hash streams independent of each other.
_TAG_BRANCH = 1
_TAG_INC = 2
_TAG_VALUE = 3
_TAG_SHUFFLE = 4
_TAG_LUCK = 5


@dataclass
class SyntheticTreeConfig:
    """Shape and value model of one synthetic tree.

    branching is fixed at `w` unless (w_min, w_max) are both given, in which
    case each node draws its child count from that range. order_pct is the
    percentage of nodes (seeded, per node) whose best child is listed first;
    the remaining nodes use a seeded shuffle. negate flips every value in the
    tree, producing the mirrored twin used by dual-search comparisons.
    """

    seed: int = 0
    w: int = 2
    depth: int = 2
    increment_range: int = 10
    correlated: bool = True
    order_pct: float = 0.0
    w_min: int | None = None
    w_max: int | None = None
    negate: bool = False
    _moves: dict = field(default_factory=dict, repr=False, compare=False)
    _values: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.w < 1:
            raise ValueError(f"branching factor must be >= 1, got {self.w}")
        if self.depth < 0:
            raise ValueError(f"depth must be >= 0, got {self.depth}")
        if self.increment_range < 0:
            raise ValueError("increment_range must be >= 0")
        if not 0.0 <= self.order_pct <= 100.0:
            raise ValueError("order_pct is a percentage in [0, 100]")
        if (self.w_min is None) != (self.w_max is None):
            raise ValueError("w_min and w_max must be given together")
        if self.w_min is not None:
            if self.w_min < 1 or self.w_min > self.w_max:
                raise ValueError(f"need 1 <= w_min <= w_max, got [{self.w_min}, {self.w_max}]")
        self._seed_mix = mix(self.seed, 0xA17)
        self._base = (self.w_max if self.w_max is not None else self.w) + 1

    # -- tree shape ---------------------------------------------------------

    def child_count(self, path: int) -> int:
        if self.w_min is None:
            return self.w
        span = self.w_max - self.w_min + 1
        return self.w_min + mix(self.seed, path, _TAG_BRANCH) % span

    def child_path(self, path: int, move: int) -> int:
        return path * self._base + move + 1

    def moves_for(self, path: int, ply: int) -> tuple:
        """Child indices in search order; cached per node."""
        cached = self._moves.get(path)
        if cached is not None:
            return cached
        k = self.child_count(path)
        order = list(range(k))
        state = mix(self.seed, path, _TAG_SHUFFLE)
        for i in range(k - 1, 0, -1):
            state = splitmix64(state)
            j = state % (i + 1)
            order[i], order[j] = order[j], order[i]
        if self.order_pct > 0.0:
            luck = mix(self.seed, path, _TAG_LUCK) % 1_000_000
            if luck < self.order_pct * 10_000:
                best = max(
                    range(k),
                    key=lambda m: (-self.node_value(self.child_path(path, m), ply + 1), -m),
                )
                order.remove(best)
                order.insert(0, best)
        result = tuple(order)
        self._moves[path] = result
        return result

    # -- values -------------------------------------------------------------

    def edge_increment(self, child_path: int) -> int:
        r = self.increment_range
        if r == 0:
            return 0
        return mix(self.seed, child_path, _TAG_INC) % (2 * r + 1) - r

    def hash_value(self, path: int) -> int:
        r = self.increment_range * max(self.depth, 1)
        if r == 0:
            return 0
        return mix(self.seed, path, _TAG_VALUE) % (2 * r + 1) - r

    def node_value(self, path: int, ply: int) -> int:
        """Side-to-move value of the node's full subtree (memoized negamax).

        Only needed when order_pct > 0 ranks children by true subtree value.
        """
        cached = self._values.get(path)
        if cached is not None:
            return cached
        if ply >= self.depth:
            v = self._root_view_at(path, ply)
            v = v if ply % 2 == 0 else -v
        else:
            v = max(
                -self.node_value(self.child_path(path, m), ply + 1)
                for m in range(self.child_count(path))
            )
        self._values[path] = v
        return v

    def _root_view_at(self, path: int, ply: int) -> int:
        if self.correlated:
            v = 0
            p = path
            for _ in range(ply):
                v += self.edge_increment(p)
                p = (p - 1) // self._base
        else:
            v = self.hash_value(path)
        return -v if self.negate else v


class SyntheticPosition(GamePosition):
    """One node of a synthetic tree; carries its running value sum."""

    __slots__ = ("cfg", "path", "ply", "_cum")

    def __init__(self, cfg: SyntheticTreeConfig, path: int, ply: int, cum: int):
        self.cfg = cfg
        self.path = path
        self.ply = ply
        self._cum = cum

    def legal_moves(self):
        if self.ply >= self.cfg.depth:
            return ()
        return self.cfg.moves_for(self.path, self.ply)

    def apply(self, move: int) -> "SyntheticPosition":
        cfg = self.cfg
        child = cfg.child_path(self.path, move)
        return SyntheticPosition(cfg, child, self.ply + 1, self._cum + cfg.edge_increment(child))

    def is_terminal(self) -> bool:
        return self.ply >= self.cfg.depth

    def evaluate(self) -> int:
        cfg = self.cfg
        v = self._cum if cfg.correlated else cfg.hash_value(self.path)
        if cfg.negate:
            v = -v
        return v if self.ply % 2 == 0 else -v

    def position_key(self) -> int:
        # Paths are injectively encoded, so distinct nodes never share a key.
        return self.cfg._seed_mix ^ self.path


def root(cfg: SyntheticTreeConfig) -> SyntheticPosition:
    return SyntheticPosition(cfg, 0, 0, 0)


def walk_nodes(cfg: SyntheticTreeConfig):
    """Depth-first iteration over every position of the tree."""
    stack = [root(cfg)]
    while stack:
        pos = stack.pop()
        yield pos
        if not pos.is_terminal():
            for m in reversed(pos.legal_moves()):
                stack.append(pos.apply(m))


def leaf_value_range(cfg: SyntheticTreeConfig) -> tuple[int, int]:
    """(min, max) side-to-move evaluation over all nodes of the tree."""
    lo = hi = None
    for pos in walk_nodes(cfg):
        v = pos.evaluate()
        if lo is None or v < lo:
            lo = v
        if hi is None or v > hi:
            hi = v
    return lo, hi
