"""Explicit reference solvers used as ground truth in tests.

These work on plain Python data structures, bypass the symbolic
interface and its counters entirely, and are only meant for small
games.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domains import RankDomain
from .game import ParityGame, Player


def attractor(game: ParityGame, z: Player, targets, within=None) -> set[int]:
    """Least superset of ``targets`` closed under z-controllable steps.

    Restricted to the sub-arena ``within`` when given; edges leaving
    ``within`` are ignored (callers pass closed sub-arenas).
    """
    region = set(range(game.n)) if within is None else set(within)
    attr = set(targets) & region
    out_count = {}
    for v in region:
        out_count[v] = sum(1 for w in game.succ[v] if w in region)
    queue = sorted(attr)
    while queue:
        next_queue = []
        for w in queue:
            for v in game.pred[w]:
                if v not in region or v in attr:
                    continue
                if game.owner[v] == z:
                    attr.add(v)
                    next_queue.append(v)
                else:
                    out_count[v] -= 1
                    if out_count[v] == 0:
                        attr.add(v)
                        next_queue.append(v)
        queue = next_queue
    return attr


def zielonka(game: ParityGame) -> tuple[frozenset[int], frozenset[int]]:
    """Winning regions via the classical recursion on the top priority."""

    def solve(region: frozenset[int]) -> tuple[set[int], set[int]]:
        if not region:
            return set(), set()
        top = max(game.priority[v] for v in region)
        z = Player(top % 2)
        targets = {v for v in region if game.priority[v] == top}
        a = attractor(game, z, targets, region)
        w_rec = solve(region - a)
        w_opp = w_rec[z.opponent()]
        if not w_opp:
            result: list[set[int]] = [set(), set()]
            result[z] = set(region)
            return result[0], result[1]
        b = attractor(game, z.opponent(), w_opp, region)
        w_final = solve(region - b)
        result = [set(w_final[0]), set(w_final[1])]
        result[z.opponent()] |= b
        return result[0], result[1]

    w_even, w_odd = solve(frozenset(range(game.n)))
    return frozenset(w_even), frozenset(w_odd)


@dataclass
class ExplicitRanking:
    """Dense least-fixpoint ranking produced by :func:`naive_fixpoint`."""

    game: ParityGame
    domain: RankDomain
    values: tuple

    def top_region(self) -> frozenset[int]:
        top = self.domain.top()
        return frozenset(v for v in range(self.game.n) if self.values[v] is top)

    def winning_regions(self) -> tuple[frozenset[int], frozenset[int]]:
        mine = self.top_region()
        rest = frozenset(range(self.game.n)) - mine
        if self.domain.z == Player.EVEN:
            return mine, rest
        return rest, mine


class OracleGuardError(ValueError):
    """The game or domain is too large for the explicit fixpoint."""


def best_rank(game: ParityGame, domain: RankDomain, values, v: int):
    """Max successor rank on the tracked player's vertices, min otherwise."""
    key = domain.sort_key
    ranks = [values[w] for w in game.succ[v]]
    if game.owner[v] == domain.z:
        return max(ranks, key=key)
    return min(ranks, key=key)


def naive_fixpoint(game: ParityGame, domain: RankDomain,
                   max_n: int = 8, max_domain: int = 10**6) -> ExplicitRanking:
    """Least simultaneous fixpoint of the lift operators, by iteration.

    Round-robin over ascending vertex ids; a vertex only ever moves up
    (the update keeps the old rank when lifting would lower it, which
    leaves the least fixpoint unchanged and guarantees convergence for
    lifts that are monotone but not inflationary).
    """
    if game.n > max_n:
        raise OracleGuardError(f"refusing naive fixpoint for n={game.n} > {max_n}")
    if domain.size_estimate() > max_domain:
        raise OracleGuardError("rank domain too large for naive fixpoint")
    key = domain.sort_key
    values = [domain.minimum()] * game.n
    changed = True
    while changed:
        changed = False
        for v in range(game.n):
            lifted = domain.lift(best_rank(game, domain, values, v), game.priority[v])
            if key(lifted) > key(values[v]):
                values[v] = lifted
                changed = True
    return ExplicitRanking(game, domain, tuple(values))
