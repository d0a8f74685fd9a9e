"""Hand-built trees from nested lists, for tests and worked examples.

Leaves are integers giving the value from the root player's point of view
(the root maximizes). Interior nodes are lists of children. Example: the
four-leaf tree [[3, 7], [5, 2]] has minimax value max(min(3,7), min(5,2)) = 3.
"""

from __future__ import annotations

from ..position import GamePosition
from ..ttable import mix


def _parse(spec):
    if isinstance(spec, int):
        return spec
    if isinstance(spec, (list, tuple)):
        if not spec:
            raise ValueError("interior nodes need at least one child")
        return tuple(_parse(c) for c in spec)
    raise TypeError(f"tree spec must be int or list, got {type(spec).__name__}")


def _height(node) -> int:
    if isinstance(node, int):
        return 0
    return 1 + max(_height(c) for c in node)


def _max_fanout(node) -> int:
    if isinstance(node, int):
        return 0
    return max(len(node), max(_max_fanout(c) for c in node))


class ExplicitTreePosition(GamePosition):
    """A node of a nested-list tree; search it to depth >= its height."""

    __slots__ = ("_node", "_ply", "_path", "_base", "_seed")

    def __init__(self, node, ply: int, path: int, base: int, seed: int):
        self._node = node
        self._ply = ply
        self._path = path
        self._base = base
        self._seed = seed

    def legal_moves(self):
        if isinstance(self._node, int):
            return ()
        return range(len(self._node))

    def apply(self, move: int) -> "ExplicitTreePosition":
        child = self._node[move]
        return ExplicitTreePosition(
            child, self._ply + 1, self._path * self._base + move + 1, self._base, self._seed
        )

    def is_terminal(self) -> bool:
        return isinstance(self._node, int)

    def evaluate(self) -> int:
        # Root-view leaf values; odd plies see them negated (negamax).
        v = self._node if isinstance(self._node, int) else 0
        return v if self._ply % 2 == 0 else -v

    def position_key(self) -> int:
        # The path encoding is injective, so keys are collision-free.
        return mix(self._seed) ^ self._path

    @property
    def height(self) -> int:
        return _height(self._node)


def from_nested(spec, seed: int = 0) -> ExplicitTreePosition:
    """Build the root position of a nested-list tree."""
    root = _parse(spec)
    base = max(_max_fanout(root), 1) + 1
    return ExplicitTreePosition(root, 0, 0, base, seed)
