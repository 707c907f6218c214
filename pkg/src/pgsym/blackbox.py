"""Set-based symbolic progress-measure solver over a pluggable domain.

The solver only touches the game through the backend's one-step and
basic set operations; all rank bookkeeping lives in the ordered
:class:`~pgsym.rankstruct.RankStructure`.  TOP-ranked vertices at the
fixpoint form the winning region of the domain's tracked player; the
opponent gets the rest.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Optional

from .domains import TOP, RankDomain
from .game import ParityGame, Player
from .rankstruct import RankStructure
from .symbolic import OpCounters, SetBackend

TRACE_SCHEMA = "pgsym.trace/1"


class InvariantViolation(RuntimeError):
    """A checked runtime invariant failed (only under assert mode)."""


@dataclass
class SolveResult:
    w_even: frozenset[int]
    w_odd: frozenset[int]
    counters: OpCounters
    domain_size: int
    iterations: int


def _derived_ranking(structure: RankStructure, backend: SetBackend, n: int) -> list:
    """rho(v) = largest stored rank whose set contains v (uncounted)."""
    ranks = structure.stored_ranks()
    sets = structure.stored_sets()
    out = [None] * n
    for rank, sym in zip(ranks, sets):  # ascending; later wins
        for v in backend.members(sym):
            out[v] = rank
    return out


class _InvariantChecker:
    """Debug-mode checks; uses uncounted raw operations only."""

    def __init__(self, game: ParityGame, domain: RankDomain, backend: SetBackend,
                 structure: RankStructure):
        self.game = game
        self.domain = domain
        self.backend = backend
        self.structure = structure
        from .oracle import OracleGuardError, naive_fixpoint

        try:
            self.reference = naive_fixpoint(game, domain).values
        except OracleGuardError:
            self.reference = None  # game too large; boundary checks still run

    def at_boundary(self) -> None:
        st, be = self.structure, self.backend
        sets = st.stored_sets()
        for above, below in zip(sets[1:], sets):
            if not be.raw_subseteq(above, below):
                raise InvariantViolation("stored sets are not anti-monotone")
            if be.raw_equals(above, below):
                raise InvariantViolation("stored sets are not pairwise distinct")
        if st.stored_count() > self.game.n + 2:
            raise InvariantViolation("more than n + 2 stored ranks")
        if self.reference is not None:
            key = self.domain.sort_key
            rho = _derived_ranking(st, be, self.game.n)
            for v in range(self.game.n):
                if key(rho[v]) > key(self.reference[v]):
                    raise InvariantViolation(
                        f"derived rank of vertex {v} exceeds the least fixpoint")

    def at_termination(self) -> None:
        from .oracle import best_rank

        if self.structure.has_active():
            raise InvariantViolation("active ranks remain at termination")
        rho = _derived_ranking(self.structure, self.backend, self.game.n)
        key = self.domain.sort_key
        for v in range(self.game.n):
            lifted = self.domain.lift(
                best_rank(self.game, self.domain, rho, v), self.game.priority[v])
            if key(lifted) > key(rho[v]):
                raise InvariantViolation(f"final ranking is not a fixpoint at vertex {v}")


def solve_blackbox(
    game: ParityGame,
    domain: RankDomain,
    backend: SetBackend,
    *,
    assert_invariants: bool = False,
    trace: Optional[IO[str]] = None,
) -> SolveResult:
    n = game.n
    be = backend
    structure = RankStructure(domain, be)
    structure.update(domain.minimum(), be.make_set(range(n)))
    structure.update(TOP, be.make_set(()))
    structure.activate(domain.minimum())
    checker = _InvariantChecker(game, domain, be, structure) if assert_invariants else None

    z = domain.z
    iterations = 0
    while True:
        if checker is not None:
            checker.at_boundary()
        rank = structure.pop_active()
        if rank is None:
            break
        iterations += 1
        s_at_rank = structure.get_set(rank)
        pool = be.cpre(z, s_at_rank)
        if trace is not None:
            record = {
                "schema": TRACE_SCHEMA,
                "rank": domain.render(rank),
                "p_size": be.size(pool),
                "stored": structure.stored_count(),
            }
            trace.write(json.dumps(record) + "\n")
        for c in range(game.d):
            rp = domain.lift(rank, c)
            s_rp = structure.get_set(rp)
            moved = be.intersect(pool, be.priority_set(c))
            while not be.subseteq(moved, s_rp):
                grown = be.union(s_rp, moved)
                if rp is TOP:
                    store = True
                else:
                    nxt = structure.get_next(rp)
                    if nxt is None:
                        store = True
                    else:
                        s_next = structure.get_set(nxt)
                        store = be.subseteq(s_next, grown) and not be.equals(grown, s_next)
                temp = None
                if store:
                    structure.update(rp, grown)
                    structure.activate(rp)
                else:
                    temp = grown
                prev = structure.get_previous(rp)
                if prev is None:
                    raise RuntimeError(
                        "descended past the least stored rank; the inner guard "
                        "should have stopped at the bottom set")
                s_prev = structure.get_set(prev)
                merged_prev = be.union(s_prev, moved)
                if be.equals(grown, merged_prev):
                    structure.remove(prev)
                be.release(merged_prev)
                if temp is not None:
                    be.release(temp)
                rp = prev
                s_rp = structure.get_set(rp)
            be.release(moved)
        be.release(pool)

    if checker is not None:
        checker.at_termination()

    won = frozenset(be.members(structure.get_set(TOP)))
    rest = frozenset(range(n)) - won
    structure.release_all()
    if z == Player.EVEN:
        w_even, w_odd = won, rest
    else:
        w_even, w_odd = rest, won
    return SolveResult(
        w_even=w_even,
        w_odd=w_odd,
        counters=be.counters,
        domain_size=domain.size_estimate(),
        iterations=iterations,
    )
