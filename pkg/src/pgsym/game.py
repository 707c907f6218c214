"""Parity game data model and seeded random game generation.

A game is a finite directed graph whose vertices are partitioned between
two players (Even and Odd) and labelled with integer priorities.  Vertex
ids are dense (0..n-1) so that sets of vertices can be represented as
bitsets or as boolean functions over the binary encoding of the id.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import Iterable, Optional, Sequence


class Player(IntEnum):
    """One of the two players.  File encoding: 0 = Even, 1 = Odd."""

    EVEN = 0
    ODD = 1

    def opponent(self) -> "Player":
        return Player(1 - self.value)


class GameError(ValueError):
    """A structural invariant of the game is violated."""


@dataclass(frozen=True)
class ParityGame:
    """Immutable parity game over dense vertex ids 0..n-1.

    Fields are normalized: successor lists are sorted and duplicate-free.
    Use :meth:`build` instead of the raw constructor; it normalizes and
    validates.  Instances are safe to share between concurrent solver
    runs.
    """

    owner: tuple[Player, ...]
    priority: tuple[int, ...]
    succ: tuple[tuple[int, ...], ...]
    names: tuple[Optional[str], ...] = field(default=())

    @staticmethod
    def build(
        owners: Sequence[int],
        priorities: Sequence[int],
        successors: Sequence[Iterable[int]],
        names: Optional[Sequence[Optional[str]]] = None,
    ) -> "ParityGame":
        owner = tuple(Player(o) for o in owners)
        priority = tuple(int(p) for p in priorities)
        succ = tuple(tuple(sorted(set(int(w) for w in ws))) for ws in successors)
        if names is None:
            name_tup: tuple[Optional[str], ...] = (None,) * len(owner)
        else:
            name_tup = tuple(names)
        game = ParityGame(owner, priority, succ, name_tup)
        game.validate()
        return game

    def validate(self) -> None:
        n = len(self.owner)
        if n < 1:
            raise GameError("game must have at least one vertex")
        if not (len(self.priority) == len(self.succ) == len(self.names) == n):
            raise GameError("field lengths disagree")
        for v in range(n):
            if self.priority[v] < 0:
                raise GameError(f"vertex {v}: priority {self.priority[v]} < 0")
            if not self.succ[v]:
                raise GameError(f"vertex {v} has no successors")
            for w in self.succ[v]:
                if not 0 <= w < n:
                    raise GameError(f"vertex {v}: successor {w} out of range")

    @property
    def n(self) -> int:
        return len(self.owner)

    @cached_property
    def m(self) -> int:
        return sum(len(ws) for ws in self.succ)

    @cached_property
    def d(self) -> int:
        return max(self.priority) + 1

    @cached_property
    def priorities_used(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.priority)))

    def vertices_with_priority(self, c: int) -> tuple[int, ...]:
        return self._by_priority.get(c, ())

    @cached_property
    def _by_priority(self) -> dict[int, tuple[int, ...]]:
        buckets: dict[int, list[int]] = {}
        for v, c in enumerate(self.priority):
            buckets.setdefault(c, []).append(v)
        return {c: tuple(vs) for c, vs in buckets.items()}

    def vertices_of(self, z: Player) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if self.owner[v] == z)

    @cached_property
    def pred(self) -> tuple[tuple[int, ...], ...]:
        """Predecessor lists, derived once from the successor lists."""
        ins: list[list[int]] = [[] for _ in range(self.n)]
        for v, ws in enumerate(self.succ):
            for w in ws:
                ins[w].append(v)
        return tuple(tuple(ps) for ps in ins)


def random_game(n: int, d: int, edge_density: float, seed: int) -> ParityGame:
    """Generate a random game, deterministic for fixed arguments.

    Owners and priorities are uniform per vertex; each ordered pair
    (including self loops) becomes an edge with probability
    ``edge_density``; vertices left without successors get one forced
    uniformly chosen successor so the out-degree invariant holds.
    """
    if n < 1:
        raise GameError("n must be >= 1")
    if d < 1:
        raise GameError("d must be >= 1")
    if not 0.0 < edge_density <= 1.0:
        raise GameError("edge_density must be in (0, 1]")
    rng = random.Random(seed)
    owners = []
    priorities = []
    for _ in range(n):
        owners.append(rng.randrange(2))
        priorities.append(rng.randrange(d))
    successors: list[list[int]] = []
    for _u in range(n):
        row = [v for v in range(n) if rng.random() < edge_density]
        successors.append(row)
    for u in range(n):
        if not successors[u]:
            successors[u] = [rng.randrange(n)]
    return ParityGame.build(owners, priorities, successors)
