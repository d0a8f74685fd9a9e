"""Transposition table storing bound pairs and best moves.

The memory is what turns a plain null-window test into a multi-pass search
procedure: bounds proven in one pass are reused in the next instead of
re-expanding the same subtrees.
"""

from __future__ import annotations

from dataclasses import dataclass

from .values import BoundPair, BoundConflictError

_MASK64 = (1 << 64) - 1

POLICIES = ("two-tier", "always", "exact")


def splitmix64(x: int) -> int:
    """Deterministic 64-bit mixer used for hashing and seeded randomness."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def mix(*parts: int) -> int:
    """Fold integers into one well-spread 64-bit value (order-sensitive)."""
    h = 0x9E3779B97F4A7C15
    for p in parts:
        h = splitmix64(h ^ splitmix64(p & _MASK64))
    return h


class ZobristKeys:
    """Fixed pseudo-random 64-bit keys for piece/square features plus side to move.

    The XOR structure makes keys incremental-update friendly: applying a move
    XORs in the changed features only.
    """

    def __init__(self, features: int, seed: int):
        state = splitmix64(seed)
        keys = []
        for _ in range(features + 1):
            state = splitmix64(state)
            keys.append(state)
        self.side_key = keys[0]
        self.feature_keys = keys[1:]

    def key_for(self, feature_ids, side_to_move: int) -> int:
        k = self.side_key if side_to_move else 0
        for f in feature_ids:
            k ^= self.feature_keys[f]
        return k


@dataclass
class TTEntry:
    """One stored position: full key, validity depth, bounds, move, age stamp."""

    key: int
    depth: int
    bounds: BoundPair
    best_move: int | None
    age: int


@dataclass(frozen=True)
class TTConfig:
    """Table geometry and replacement behaviour.

    Policies:
      two-tier  fixed 2^size_log2 slots; on a slot conflict keep the deeper
                entry, on equal depth prefer the current age (default).
      always    fixed slots; an incoming entry always replaces a conflicting one.
      exact     dict keyed by the full 64-bit key: no aliasing, no eviction.
                This is the collision-free verification mode.
    """

    size_log2: int = 20
    policy: str = "two-tier"

    def __post_init__(self) -> None:
        if not 8 <= self.size_log2 <= 28:
            raise ValueError(f"size_log2 must be in [8, 28], got {self.size_log2}")
        if self.policy not in POLICIES:
            raise ValueError(f"unknown replacement policy {self.policy!r}")


class TranspositionTable:
    """Hash table from position key to TTEntry, owned by one search at a time."""

    def __init__(self, config: TTConfig | None = None):
        self.config = config if config is not None else TTConfig(policy="exact")
        self.age = 0
        if self.config.policy == "exact":
            self._entries: dict[int, TTEntry] | None = {}
            self._slots: list[TTEntry | None] | None = None
            self._mask = 0
        else:
            self._entries = None
            size = 1 << self.config.size_log2
            self._slots = [None] * size
            self._mask = size - 1

    def begin_iteration(self) -> None:
        """Advance the age stamp; the engine calls this once per search pass."""
        self.age += 1

    def clear(self) -> None:
        self.age = 0
        if self._entries is not None:
            self._entries.clear()
        else:
            self._slots = [None] * (self._mask + 1)

    def _lookup(self, key: int) -> TTEntry | None:
        if self._entries is not None:
            return self._entries.get(key)
        return self._slots[key & self._mask]

    def probe(self, key: int, depth: int) -> tuple[TTEntry | None, int | None]:
        """Return (entry, ordering_move) for `key` at the requested depth.

        The entry is returned only when the stored key matches exactly and its
        depth is sufficient (stored depth >= requested); a usable hit is
        re-stamped with the current age, so live entries stay current. A
        same-key entry that is too shallow still contributes its best move
        for ordering but keeps its old stamp.
        """
        e = self._lookup(key)
        if e is None or e.key != key:
            return None, None
        if e.depth >= depth:
            e.age = self.age
            return e, e.best_move
        return None, e.best_move

    def store(
        self,
        key: int,
        depth: int,
        bounds: BoundPair,
        best_move: int | None = None,
        age: int | None = None,
    ) -> None:
        """Record bounds for `key` valid to `depth`.

        Re-storing the same key at the same depth intersects the new bounds
        with the old ones (both passes proved something, so both hold); a
        crossing intersection raises BoundConflictError. A deeper store
        replaces a shallower one, inheriting the old best move if the new
        store has none; a shallower store only refreshes a missing best move.
        Slot conflicts between different keys go to the replacement policy.
        """
        if age is None:
            age = self.age
        if self._entries is not None:
            old = self._entries.get(key)
            if old is None:
                self._entries[key] = TTEntry(key, depth, bounds, best_move, age)
            else:
                self._update_same_key(old, depth, bounds, best_move, age)
            return
        idx = key & self._mask
        old = self._slots[idx]
        if old is None:
            self._slots[idx] = TTEntry(key, depth, bounds, best_move, age)
        elif old.key == key:
            self._update_same_key(old, depth, bounds, best_move, age)
        else:
            # Different position hashed to this slot: replacement policy decides.
            if self.config.policy == "always" or depth > old.depth or (
                depth == old.depth and age >= old.age
            ):
                self._slots[idx] = TTEntry(key, depth, bounds, best_move, age)

    @staticmethod
    def _update_same_key(
        old: TTEntry, depth: int, bounds: BoundPair, best_move: int | None, age: int
    ) -> None:
        if depth == old.depth:
            try:
                old.bounds = old.bounds.intersect(bounds)
            except BoundConflictError as exc:
                raise BoundConflictError(
                    f"inconsistent re-store for key {old.key:#x} at depth {depth}: {exc}"
                ) from exc
            if best_move is not None:
                old.best_move = best_move
            old.age = age
        elif depth > old.depth:
            old.depth = depth
            old.bounds = bounds
            if best_move is not None:
                old.best_move = best_move
            old.age = age
        else:
            # Keep the deeper information; at most adopt a missing ordering move.
            if old.best_move is None and best_move is not None:
                old.best_move = best_move

    def occupancy(self) -> int:
        """Number of slots holding a live entry: one the current search pass
        stored or reused. Entries left over from superseded passes are garbage
        awaiting overwrite and are not counted."""
        age = self.age
        if self._entries is not None:
            return sum(1 for e in self._entries.values() if e.age == age)
        return sum(1 for e in self._slots if e is not None and e.age == age)

    def entries(self):
        """Iterate over all live entries (any age); verification helper."""
        if self._entries is not None:
            yield from self._entries.values()
        else:
            for e in self._slots:
                if e is not None:
                    yield e

    def __len__(self) -> int:
        if self._entries is not None:
            return len(self._entries)
        return sum(1 for e in self._slots if e is not None)
