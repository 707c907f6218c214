"""Reference set backend: vertex sets as fixed-width Python int bitsets."""

from __future__ import annotations

from typing import Iterator

from .game import ParityGame, Player
from .symbolic import SetBackend, SymSet


class BitsetBackend(SetBackend):
    """Exact explicit backend; bit v set iff vertex v is a member."""

    def __init__(self, game: ParityGame):
        super().__init__(game)
        n = game.n
        self._full = (1 << n) - 1
        self._in_mask = [0] * n
        for v, ws in enumerate(game.succ):
            for w in ws:
                self._in_mask[w] |= 1 << v
        self._universe = self._ambient_set(self._full)
        even = 0
        for v in range(n):
            if game.owner[v] == Player.EVEN:
                even |= 1 << v
        self._players = {
            Player.EVEN: self._ambient_set(even),
            Player.ODD: self._ambient_set(self._full & ~even),
        }
        self._prio_sets: dict[int, SymSet] = {}
        for c in range(game.d):
            bits = 0
            for v in game.vertices_with_priority(c):
                bits |= 1 << v
            self._prio_sets[c] = self._ambient_set(bits)

    @property
    def universe(self) -> SymSet:
        return self._universe

    def player_set(self, z: Player) -> SymSet:
        return self._players[z]

    def priority_set(self, c: int) -> SymSet:
        return self._prio_sets[c]

    def describe(self, ref) -> str:
        return "{" + ",".join(str(v) for v in self._members(ref)) + "}"

    def _union(self, a: int, b: int) -> int:
        return a | b

    def _intersect(self, a: int, b: int) -> int:
        return a & b

    def _difference(self, a: int, b: int) -> int:
        return a & ~b

    def _subseteq(self, a: int, b: int) -> bool:
        return a & ~b == 0

    def _equals(self, a: int, b: int) -> bool:
        return a == b

    def _pre(self, a: int) -> int:
        res = 0
        in_mask = self._in_mask
        bits = a
        while bits:
            low = bits & -bits
            res |= in_mask[low.bit_length() - 1]
            bits ^= low
        return res

    def _members(self, a: int) -> Iterator[int]:
        bits = a
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def _contains(self, a: int, v: int) -> bool:
        return bool(a >> v & 1)

    def _from_vertices(self, vertices) -> int:
        bits = 0
        for v in vertices:
            bits |= 1 << v
        return bits
