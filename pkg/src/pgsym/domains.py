"""Rank domains: the contract consumed by the set-based solvers.

A rank domain supplies a finite total order with a least element and an
absorbing greatest element TOP, a per-priority monotone lift function,
and the player whose winning region the TOP-ranked vertices form.  Two
instantiations are provided:

* :class:`SmallProgressMeasure` counts visits to odd priorities, one
  bounded counter per odd priority, most significant first.  TOP marks
  the Odd player's winning region.

* :class:`OrderedProgressMeasure` tracks tuples over the priorities
  plus a blank, ordered with blank lowest, odd priorities descending,
  then even priorities ascending.  TOP marks the Even player's region.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .game import ParityGame, Player


class _TopType:
    __slots__ = ()

    def __repr__(self) -> str:
        return "TOP"


TOP = _TopType()
"""Absorbing greatest rank, shared by all domains."""


def opm_symbol_compare(x: Optional[int], y: Optional[int]) -> int:
    """Total order on priorities plus blank (None).

    Blank is least; odd priorities come next in descending numeric
    order; even priorities are greatest in ascending numeric order.
    Returns -1, 0, or 1.
    """
    if x == y:
        return 0
    if x is None:
        return -1
    if y is None:
        return 1
    xe, ye = x % 2 == 0, y % 2 == 0
    if xe != ye:
        return 1 if xe else -1
    if xe:
        return -1 if x < y else 1
    return -1 if x > y else 1


def opm_symbol_chain(d: int) -> list[Optional[int]]:
    """All symbols for priority count ``d`` in ascending order."""
    odds = [p for p in range(d - 1, -1, -1) if p % 2 == 1]
    evens = [p for p in range(d) if p % 2 == 0]
    return [None] + odds + evens


def opm_compare(r1, r2) -> int:
    """Lexicographic order on equal-length tuples; TOP is greatest."""
    t1, t2 = r1 is TOP, r2 is TOP
    if t1 or t2:
        return (t1 > t2) - (t1 < t2)
    if len(r1) != len(r2):
        raise ValueError("rank tuples differ in length")
    for a, b in zip(r1, r2):
        c = opm_symbol_compare(a, b)
        if c:
            return c
    return 0


class RankDomain:
    """Shared behaviour: ordering via sort keys and a lift memo."""

    z: Player

    def __init__(self):
        self._lift_cache: dict = {}

    # subclasses set: minimum(), top() is TOP, _sort_key, _lift, ...

    def top(self):
        return TOP

    def minimum(self):
        raise NotImplementedError

    def sort_key(self, r):
        raise NotImplementedError

    def compare(self, r1, r2) -> int:
        k1, k2 = self.sort_key(r1), self.sort_key(r2)
        return (k1 > k2) - (k1 < k2)

    def lift(self, r, c: int):
        key = (r, c)
        cached = self._lift_cache.get(key)
        if cached is None:
            cached = self._lift(r, c)
            self._lift_cache[key] = cached
        return cached

    def _lift(self, r, c: int):
        raise NotImplementedError

    def tuple_view(self, r) -> tuple:
        raise NotImplementedError

    def coordinate_alphabets(self) -> list[list]:
        raise NotImplementedError

    def size_estimate(self) -> int:
        raise NotImplementedError

    def render(self, r) -> str:
        raise NotImplementedError


class SmallProgressMeasure(RankDomain):
    """Per-odd-priority counters, highest odd priority most significant.

    The lift for even priority c keeps the counters for odd priorities
    above c and clears the rest; for odd c it produces the least tuple
    strictly above on the counters at or above c, clearing lower ones
    and saturating to TOP on overflow.
    """

    z = Player.ODD

    def __init__(self, game: ParityGame):
        super().__init__()
        d = game.d
        self.odd_priorities = tuple(p for p in range(d - 1, -1, -1) if p % 2 == 1)
        self.limits = tuple(len(game.vertices_with_priority(p)) for p in self.odd_priorities)
        self._min = (0,) * len(self.odd_priorities)

    def minimum(self):
        return self._min

    def sort_key(self, r):
        if r is TOP:
            return (1,)
        return (0, r)

    def _coords_at_or_above(self, c: int) -> int:
        """How many leading coordinates track odd priorities >= c."""
        count = 0
        for p in self.odd_priorities:
            if p >= c:
                count += 1
            else:
                break
        return count

    def _lift(self, r, c: int):
        if r is TOP:
            return TOP
        keep = self._coords_at_or_above(c)
        rest = len(self.odd_priorities) - keep
        if c % 2 == 0:
            return r[:keep] + (0,) * rest
        coords = list(r[:keep])
        i = keep - 1
        while i >= 0:
            if coords[i] < self.limits[i]:
                coords[i] += 1
                return tuple(coords) + (0,) * rest
            coords[i] = 0
            i -= 1
        return TOP

    def tuple_view(self, r) -> tuple:
        if r is TOP:
            raise ValueError("TOP has no coordinates")
        return r

    def coordinate_alphabets(self) -> list[list]:
        return [list(range(limit + 1)) for limit in self.limits]

    def size_estimate(self) -> int:
        total = 1
        for limit in self.limits:
            total *= limit + 1
        return 1 + total

    def render(self, r) -> str:
        if r is TOP:
            return "TOP"
        return "(" + ",".join(str(x) for x in r) + ")"


class OrderedProgressMeasure(RankDomain):
    """Tuples of length ceil(log2 n) + 1 over priorities and blank.

    A tuple certifies partial progress toward a cycle whose dominating
    priority is even.  Position i (0 = most significant) stands for a
    segment of a play; a non-blank entry records the segment's maximum
    priority.  An even entry at position i additionally certifies a
    chain of 2^(k-1-i) positions inside the segment such that every
    stretch between consecutive chain positions has an even maximum, so
    a full all-even tuple pins down more positions than the game has
    vertices and forces an even-dominated cycle.  Lifting rebuilds the
    best such certificate after one more game step of the given
    priority; overflow of a complete tuple saturates to TOP.
    """

    z = Player.EVEN

    def __init__(self, game: ParityGame, k: Optional[int] = None):
        super().__init__()
        n, d = game.n, game.d
        self.d = d
        self.k = k if k is not None else (n - 1).bit_length() + 1
        self._chain = opm_symbol_chain(d)
        self._index = {sym: i for i, sym in enumerate(self._chain)}
        self._min = (None,) * self.k

    def minimum(self):
        return self._min

    def sort_key(self, r):
        if r is TOP:
            return (1,)
        idx = self._index
        return (0, tuple(idx[s] for s in r))

    def _lift(self, r, c: int):
        if r is TOP:
            return TOP
        return _opm_lift_tuple(r, c, self.k, self.sort_key)

    def tuple_view(self, r) -> tuple:
        if r is TOP:
            raise ValueError("TOP has no coordinates")
        return r

    def coordinate_alphabets(self) -> list[list]:
        return [list(self._chain) for _ in range(self.k)]

    def size_estimate(self) -> int:
        return (self.d + 1) ** self.k + 1

    def render(self, r) -> str:
        if r is TOP:
            return "TOP"
        if self.d <= 10:
            return "".join("_" if s is None else str(s) for s in r)
        return ",".join("_" if s is None else str(s) for s in r)


def _opm_lift_tuple(w: tuple, p: int, k: int, sort_key):
    """One update step of the ordered measure for priority ``p``.

    Each non-blank entry stands for a stretch (window) of the play, the
    most significant entry for the oldest stretch and the least
    significant for the most recent one.  An entry's value bounds the
    unclaimed content of its window; an even entry at position i
    additionally certifies 2^(k-1-i) positions with even priorities,
    each of which dominates the play up to the next certified position.
    A full all-even tuple therefore certifies more positions than the
    game has vertices, forcing a cycle whose maximum is even.

    The new game step opens a fresh window in front.  Candidate
    updates, the greatest of which is returned:

    * the step is swallowed as bounded content of the frontmost window
      (possible when its priority does not exceed that window's value);
    * the fresh window merges a run of frontmost windows; certified
      positions of merged even entries are counted as long as each hop
      is dominated (a window is crossed only while its value does not
      exceed the last certified priority), which fixes the position the
      merged entry may claim; merging everything with an even result
      worth 2^k certified positions overflows to TOP;
    * surviving odd entries may float to more significant positions
      (their claim does not depend on the position), while surviving
      even entries keep their position or sink.
    """
    p_even = p % 2 == 0
    big = 1 << 30

    # work on the greatest numerically non-increasing tuple at or below
    # w; the update rules never leave that set, so this only matters for
    # arbitrary tuples fed in from outside and keeps the lift monotone
    # over the whole domain
    bound = big
    for i in range(k):
        v = w[i]
        if v is None:
            continue
        if v <= bound:
            bound = v
            continue
        if v % 2 == 0:
            fill = bound - (bound % 2)
            w = w[:i] + (fill,) * (k - i)
        else:
            fill = bound - (bound % 2)
            w = w[:i] + (None,) + (fill,) * (k - 1 - i)
        break

    def suffix_weight(j: int, bound: int) -> int:
        """Best certified count of a stretch family at positions j.. whose
        value pattern stays at or under w[j..] in the symbol order and
        under ``bound`` numerically.  Even entries certify their full
        positional count, odd entries one less (their front position is
        the damage); taking a smaller symbol at one position frees all
        positions behind it for a full even fill."""
        if j == k:
            return 0
        v = w[j]
        if v is None:
            return suffix_weight(j + 1, bound)
        free_rest = (1 << (k - 1 - j)) - 1
        best = free_rest  # blank out this slot, fill everything behind
        if v <= bound:
            best = max(best, (1 << (k - 1 - j)) - (v & 1)
                       + suffix_weight(j + 1, min(bound, v)))
        if v % 2 == 0:
            if v >= 2:  # a smaller even symbol fits under this one
                best = max(best, (1 << (k - 1 - j)) + free_rest)
            if bound >= 1:  # an odd symbol sits under any even one
                best = max(best, (1 << (k - 1 - j)) - 1 + free_rest)
        elif v + 2 <= bound:  # a numerically larger odd sits lower
            best = max(best, (1 << (k - 1 - j)) - 1 + free_rest)
        return best

    cands = []

    # the step as plain content: entries too weak to dominate it are wiped
    kill = k
    for i in range(k - 1, -1, -1):
        if w[i] is not None and w[i] >= p:
            kill = k - 1 - i
            break
    keep_upto = k - kill  # positions >= keep_upto are wiped
    cands.append(w[:keep_upto] + (None,) * kill)

    if not p_even:
        # damage note: p recorded from a slot downward; a slot is usable
        # when it or the slot above holds an entry to inherit from
        for s in range(k):
            if p > min((x for x in w[:s] if x is not None), default=big):
                continue
            if w[s] is None and (s == 0 or w[s - 1] is None):
                continue
            cands.append(w[:s] + (p,) * (k - s))
    else:
        # fresh certified position: keep a prefix, merge everything below
        for i in range(k):
            bound = min((x for x in w[:i] if x is not None), default=big)
            if p > bound:
                continue
            weight = 1 + suffix_weight(i, bound)
            if i == 0 and weight >= (1 << k):
                return TOP
            ip = max(i, k - weight.bit_length())
            if ip > k - 1:
                continue
            cand = list(w[:i]) + [None] * (k - i)
            cand[ip] = p
            cands.append(tuple(cand))
    return max(cands, key=sort_key)
