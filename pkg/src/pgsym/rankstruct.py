"""Ordered rank-to-set map with an active list.

Stores one node per retained rank: an ordered key index (kept sorted,
queried by bisection), the set handle for that rank (when this
structure owns sets; the coordinate-encoded solver keeps the keys only)
and a FIFO active list with lazy tombstones so removal is O(1).

Lookups resolve upward: a query for an unstored rank answers with the
node of the smallest stored rank above it.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from collections import deque
from typing import Optional

from .domains import RankDomain
from .symbolic import SetBackend, SymSet


class _Node:
    __slots__ = ("rank", "key", "sym", "entry")

    def __init__(self, rank, key, sym):
        self.rank = rank
        self.key = key
        self.sym: Optional[SymSet] = sym
        self.entry: Optional[list] = None  # live slot in the active queue


class RankStructure:
    def __init__(self, domain: RankDomain, backend: Optional[SetBackend] = None):
        self._domain = domain
        self._backend = backend
        self._keys: list = []
        self._nodes: dict = {}
        self._queue: deque = deque()

    # -- ordered map ---------------------------------------------------------

    def _resolve_index(self, rank) -> int:
        """Index of the smallest stored rank at or above ``rank``."""
        key = self._domain.sort_key(rank)
        i = bisect_left(self._keys, key)
        if i == len(self._keys):
            raise KeyError(f"no stored rank at or above {self._domain.render(rank)}")
        return i

    def resolve(self, rank):
        return self._nodes[self._keys[self._resolve_index(rank)]].rank

    def get_set(self, rank) -> SymSet:
        """The stored set for ``rank`` (exact hit or upward resolution)."""
        node = self._nodes[self._keys[self._resolve_index(rank)]]
        if node.sym is None:
            raise RuntimeError("this structure does not own sets")
        return node.sym

    def get_next(self, rank):
        """Smallest stored rank strictly above the resolution of ``rank``."""
        i = self._resolve_index(rank)
        if i + 1 >= len(self._keys):
            return None
        return self._nodes[self._keys[i + 1]].rank

    def get_previous(self, rank):
        """Largest stored rank strictly below the resolution of ``rank``."""
        i = self._resolve_index(rank)
        if i == 0:
            return None
        return self._nodes[self._keys[i - 1]].rank

    def update(self, rank, sym: Optional[SymSet]) -> None:
        """Store ``sym`` at ``rank``, inserting the node if absent."""
        key = self._domain.sort_key(rank)
        node = self._nodes.get(key)
        if node is None:
            node = _Node(rank, key, sym)
            self._nodes[key] = node
            insort(self._keys, key)
        else:
            if node.sym is not None and self._backend is not None:
                self._backend.release(node.sym)
            node.sym = sym

    def remove(self, rank) -> None:
        """Drop the node stored exactly at ``rank`` and its active entry."""
        key = self._domain.sort_key(rank)
        node = self._nodes.pop(key, None)
        if node is None:
            raise KeyError(f"rank {self._domain.render(rank)} is not stored")
        i = bisect_left(self._keys, key)
        del self._keys[i]
        if node.entry is not None:
            node.entry[0] = None
            node.entry = None
        if node.sym is not None and self._backend is not None:
            self._backend.release(node.sym)

    # -- active list -----------------------------------------------------

    def activate(self, rank) -> None:
        """Mark a stored rank active; idempotent while it stays active."""
        key = self._domain.sort_key(rank)
        node = self._nodes.get(key)
        if node is None:
            raise KeyError(f"cannot activate unstored rank {self._domain.render(rank)}")
        if node.entry is None:
            entry = [node]
            node.entry = entry
            self._queue.append(entry)

    def pop_active(self):
        """Return the oldest active rank and deactivate it, or None."""
        while self._queue:
            entry = self._queue.popleft()
            node = entry[0]
            if node is not None:
                node.entry = None
                return node.rank
        return None

    def has_active(self) -> bool:
        return any(entry[0] is not None for entry in self._queue)

    # -- inspection --------------------------------------------------------

    def stored_count(self) -> int:
        return len(self._keys)

    def stored_ranks(self) -> list:
        return [self._nodes[k].rank for k in self._keys]

    def stored_sets(self) -> list:
        return [self._nodes[k].sym for k in self._keys]

    def is_stored(self, rank) -> bool:
        return self._domain.sort_key(rank) in self._nodes

    def release_all(self) -> None:
        if self._backend is not None:
            for key in self._keys:
                node = self._nodes[key]
                if node.sym is not None:
                    self._backend.release(node.sym)
        self._keys.clear()
        self._nodes.clear()
        self._queue.clear()
