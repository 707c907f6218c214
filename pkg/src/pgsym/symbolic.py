"""Set-based symbolic interface: handles, operation counters, backend base.

A backend exposes a game only through one-step predecessor queries and
the basic set operations (union, intersection, difference, inclusion,
equality).  Every public call increments exactly one counter, and every
allocated set handle counts as one unit of symbolic space until it is
released, so resource bounds can be checked as measured inequalities.

The sets describing the game itself (all vertices, the two ownership
sets, the per-priority sets) are part of the implicit input description:
they are created once per backend and do not count as allocated space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .game import ParityGame, Player


@dataclass
class OpCounters:
    """Symbolic resource accounting for one solver run."""

    pre_ops: int = 0
    union: int = 0
    intersect: int = 0
    difference: int = 0
    subseteq: int = 0
    equals: int = 0
    live_sets_now: int = 0
    live_sets_max: int = 0

    def basic_total(self) -> int:
        return self.union + self.intersect + self.difference + self.subseteq + self.equals

    def as_dict(self) -> dict[str, int]:
        return {
            "pre_ops": self.pre_ops,
            "union": self.union,
            "intersect": self.intersect,
            "difference": self.difference,
            "subseteq": self.subseteq,
            "equals": self.equals,
            "basic_ops": self.basic_total(),
            "live_sets_now": self.live_sets_now,
            "live_sets_max": self.live_sets_max,
        }


class SymSet:
    """Opaque handle to a vertex set owned by one backend instance."""

    __slots__ = ("backend", "ref", "alive")

    def __init__(self, backend: "SetBackend", ref):
        self.backend = backend
        self.ref = ref
        self.alive = True

    def __repr__(self) -> str:  # debugging aid only
        state = "" if self.alive else " (released)"
        return f"<SymSet {self.backend.describe(self.ref)}{state}>"


class BackendError(RuntimeError):
    """Misuse of the set interface (foreign or released handles)."""


class SetBackend:
    """Common counting and handle bookkeeping for set backends.

    Subclasses implement the primitive operations on raw references.
    One instance serves one solver run; its counters are the run's
    resource measurement.
    """

    def __init__(self, game: ParityGame):
        self.game = game
        self.counters = OpCounters()
        self._ambient: list[SymSet] = []

    # -- handle bookkeeping -------------------------------------------------

    def _alloc(self, ref) -> SymSet:
        s = SymSet(self, ref)
        c = self.counters
        c.live_sets_now += 1
        if c.live_sets_now > c.live_sets_max:
            c.live_sets_max = c.live_sets_now
        return s

    def _ambient_set(self, ref) -> SymSet:
        """An input-description set; not charged to symbolic space."""
        s = SymSet(self, ref)
        self._ambient.append(s)
        return s

    def release(self, s: SymSet) -> None:
        if s in self._ambient or not s.alive:
            return
        s.alive = False
        self.counters.live_sets_now -= 1

    def _check(self, *sets: SymSet):
        for s in sets:
            if s.backend is not self:
                raise BackendError("handle belongs to a different backend")
            if not s.alive:
                raise BackendError("handle was released")
        return [s.ref for s in sets]

    # -- counted operations -------------------------------------------------

    def union(self, a: SymSet, b: SymSet) -> SymSet:
        ra, rb = self._check(a, b)
        self.counters.union += 1
        return self._alloc(self._union(ra, rb))

    def intersect(self, a: SymSet, b: SymSet) -> SymSet:
        ra, rb = self._check(a, b)
        self.counters.intersect += 1
        return self._alloc(self._intersect(ra, rb))

    def difference(self, a: SymSet, b: SymSet) -> SymSet:
        ra, rb = self._check(a, b)
        self.counters.difference += 1
        return self._alloc(self._difference(ra, rb))

    def subseteq(self, a: SymSet, b: SymSet) -> bool:
        ra, rb = self._check(a, b)
        self.counters.subseteq += 1
        return self._subseteq(ra, rb)

    def equals(self, a: SymSet, b: SymSet) -> bool:
        ra, rb = self._check(a, b)
        self.counters.equals += 1
        return self._equals(ra, rb)

    def pre(self, s: SymSet) -> SymSet:
        """One-step predecessors: vertices with a successor in ``s``."""
        (r,) = self._check(s)
        self.counters.pre_ops += 1
        return self._alloc(self._pre(r))

    def cpre(self, z: Player, s: SymSet) -> SymSet:
        """Controllable predecessors for player ``z``.

        Derived from two Pre calls and basic operations:
        (Pre(S) & V_z) | (V_zbar \\ Pre(V \\ S)).
        """
        may = self.pre(s)
        own = self.intersect(may, self.player_set(z))
        self.release(may)
        outside = self.difference(self.universe, s)
        escape = self.pre(outside)
        self.release(outside)
        forced = self.difference(self.player_set(z.opponent()), escape)
        self.release(escape)
        result = self.union(own, forced)
        self.release(own)
        self.release(forced)
        return result

    # -- uncounted inspection (reporting and tests, not algorithm steps) ----

    def members(self, s: SymSet) -> frozenset[int]:
        (r,) = self._check(s)
        return frozenset(self._members(r))

    def contains(self, s: SymSet, v: int) -> bool:
        (r,) = self._check(s)
        return self._contains(r, v)

    def size(self, s: SymSet) -> int:
        (r,) = self._check(s)
        return sum(1 for _ in self._members(r))

    def raw_equals(self, a: SymSet, b: SymSet) -> bool:
        ra, rb = self._check(a, b)
        return self._equals(ra, rb)

    def raw_subseteq(self, a: SymSet, b: SymSet) -> bool:
        ra, rb = self._check(a, b)
        return self._subseteq(ra, rb)

    # -- game description sets (implicit input, allocated once) -------------

    @property
    def universe(self) -> SymSet:
        raise NotImplementedError

    def player_set(self, z: Player) -> SymSet:
        raise NotImplementedError

    def priority_set(self, c: int) -> SymSet:
        raise NotImplementedError

    def make_set(self, vertices) -> SymSet:
        """A counted set holding the given vertex ids."""
        return self._alloc(self._from_vertices(sorted(set(vertices))))

    def describe(self, ref) -> str:
        return repr(ref)

    # -- primitives ----------------------------------------------------------

    def _union(self, a, b):
        raise NotImplementedError

    def _intersect(self, a, b):
        raise NotImplementedError

    def _difference(self, a, b):
        raise NotImplementedError

    def _subseteq(self, a, b) -> bool:
        raise NotImplementedError

    def _equals(self, a, b) -> bool:
        raise NotImplementedError

    def _pre(self, a):
        raise NotImplementedError

    def _members(self, a) -> Iterator[int]:
        raise NotImplementedError

    def _contains(self, a, v: int) -> bool:
        raise NotImplementedError

    def _from_vertices(self, vertices):
        raise NotImplementedError
