"""Prisoner's dilemma between flow participants, and imitation dynamics on graphs.

Transit countries earn nothing from the flows crossing their territory
but can disrupt them, which sets up a symmetric 2x2 dilemma against the
producers and end users: R for mutual cooperation, S for cooperating
against a defector, T for defecting against a cooperator, U for mutual
defection, with T > R > U > S. Defection dominates the one-shot game,
so everybody loses; a side payment sigma added to the transit player's
cooperation payoffs makes cooperation dominant once sigma exceeds
max(T - R, U - S).

Populations placed on a graph update by synchronous imitation: every
player totals its stage payoffs against its neighbors, then adopts the
strategy of the best scorer in its closed neighborhood (ties keep the
current strategy, then go to the lowest player index). On lattices this
lets cooperator clusters survive indefinitely even though defection is
dominant; on the complete graph any mixed population collapses to
all-defect in one step, because a defector always outscores every
cooperator there.

Randomness enters only through the explicit seed of
:func:`random_population`; the dynamics themselves are deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

C = "C"
D = "D"
Strategy = str


@dataclass(frozen=True)
class PayoffMatrix:
    """Row player's payoffs R=(C,C), S=(C,D), T=(D,C), U=(D,D)."""

    R: float
    S: float
    T: float
    U: float

    def is_strict_dilemma(self) -> bool:
        return self.T > self.R > self.U > self.S


def _require_dilemma(m: PayoffMatrix) -> None:
    if not m.is_strict_dilemma():
        raise ValueError(
            f"payoff matrix must satisfy T > R > U > S, got "
            f"R={m.R!r}, S={m.S!r}, T={m.T!r}, U={m.U!r}")


def payoffs(m: PayoffMatrix, a: Strategy, b: Strategy) -> tuple[float, float]:
    """Stage payoffs (player a, player b) of the symmetric game."""
    table = {(C, C): (m.R, m.R), (C, D): (m.S, m.T),
             (D, C): (m.T, m.S), (D, D): (m.U, m.U)}
    return table[(a, b)]


def dominant_strategy(m: PayoffMatrix) -> Strategy | None:
    """Strictly dominant strategy of the symmetric game, if any.

    Works on any payoff values, not just strict dilemmas -- side
    payments produce matrices outside the T > R > U > S ordering.
    """
    if m.T > m.R and m.U > m.S:
        return D
    if m.R > m.T and m.S > m.U:
        return C
    return None


def apply_side_payment(m: PayoffMatrix, sigma: float) -> PayoffMatrix:
    """The transit player's view of the game once it receives sigma for
    cooperating: both cooperate-row payoffs rise by sigma, the defect
    row is untouched. The result usually breaks the dilemma ordering --
    that is the point."""
    if not sigma >= 0.0:
        raise ValueError(f"side payment must be nonnegative, got {sigma!r}")
    return PayoffMatrix(R=m.R + sigma, S=m.S + sigma, T=m.T, U=m.U)


def min_side_payment(m: PayoffMatrix) -> float:
    """Infimum sigma* = max(T - R, U - S): every sigma strictly above it
    makes cooperation strictly dominant for the transit player."""
    _require_dilemma(m)
    return max(m.T - m.R, m.U - m.S)


@dataclass(frozen=True)
class PlayerGraph:
    """Simple undirected graph over players 0..player_count-1."""

    player_count: int
    edges: tuple[tuple[int, int], ...]

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adjacency: list[list[int]] = [[] for _ in range(self.player_count)]
        for a, b in self.edges:
            adjacency[a].append(b)
            adjacency[b].append(a)
        return tuple(tuple(sorted(ns)) for ns in adjacency)


def player_graph(player_count: int, edges) -> PlayerGraph:
    """Build a validated PlayerGraph; rejects self-loops and duplicates."""
    if player_count < 1:
        raise ValueError("player_count must be at least 1")
    normalized: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for a, b in edges:
        a, b = int(a), int(b)
        if a == b:
            raise ValueError(f"self-loop {a}-{b} not allowed")
        if not (0 <= a < player_count and 0 <= b < player_count):
            raise ValueError(f"edge {a}-{b} out of range for {player_count} players")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ValueError(f"duplicate edge {key[0]}-{key[1]}")
        seen.add(key)
        normalized.append(key)
    return PlayerGraph(player_count, tuple(sorted(normalized)))


def complete_graph(n: int) -> PlayerGraph:
    return player_graph(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def cycle_graph(n: int) -> PlayerGraph:
    if n < 3:
        raise ValueError("cycle needs at least 3 players")
    return player_graph(n, [(k, (k + 1) % n) for k in range(n)])


def torus_graph(width: int, height: int) -> PlayerGraph:
    """Width x height lattice with wrap-around and 4-neighborhoods.
    Wrap duplicates at width or height <= 2 collapse to single edges."""
    if width < 1 or height < 1:
        raise ValueError("torus dimensions must be at least 1")
    edges: set[tuple[int, int]] = set()
    for row in range(height):
        for col in range(width):
            p = row * width + col
            for q in (row * width + (col + 1) % width,
                      ((row + 1) % height) * width + col):
                if q != p:
                    edges.add((min(p, q), max(p, q)))
    return player_graph(width * height, sorted(edges))


@dataclass(frozen=True)
class PopulationState:
    """Strategy assignment over a player graph."""

    graph: PlayerGraph
    strategies: tuple[Strategy, ...]

    def __post_init__(self):
        object.__setattr__(self, "strategies", tuple(self.strategies))
        if len(self.strategies) != self.graph.player_count:
            raise ValueError(
                f"expected {self.graph.player_count} strategies, "
                f"got {len(self.strategies)}")
        bad = {s for s in self.strategies if s not in (C, D)}
        if bad:
            raise ValueError(f"strategies must be 'C' or 'D', got {sorted(bad)}")

    def cooperation_fraction(self) -> float:
        return self.strategies.count(C) / self.graph.player_count


def all_cooperate(graph: PlayerGraph) -> PopulationState:
    return PopulationState(graph, (C,) * graph.player_count)


def all_defect(graph: PlayerGraph) -> PopulationState:
    return PopulationState(graph, (D,) * graph.player_count)


def single_defector(graph: PlayerGraph) -> PopulationState:
    """All cooperators except player 0."""
    return PopulationState(graph, (D,) + (C,) * (graph.player_count - 1))


def random_population(graph: PlayerGraph, fraction: float,
                      seed: int) -> PopulationState:
    """Each player cooperates independently with probability ``fraction``;
    fully determined by the seed."""
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction must be in [0, 1], got {fraction!r}")
    rng = random.Random(seed)
    return PopulationState(
        graph, tuple(C if rng.random() < fraction else D
                     for _ in range(graph.player_count)))


def scores(state: PopulationState, m: PayoffMatrix) -> list[float]:
    """Each player's total stage payoff against all of its neighbors."""
    table = {(C, C): m.R, (C, D): m.S, (D, C): m.T, (D, D): m.U}
    strategies = state.strategies
    return [sum(table[(strategies[p], strategies[q])]
                for q in state.graph.neighbors[p])
            for p in range(state.graph.player_count)]


def imitation_step(state: PopulationState, m: PayoffMatrix) -> PopulationState:
    """One synchronous update: adopt the strategy of the best scorer in
    the closed neighborhood; ties keep the current strategy, then go to
    the lowest player index (neighbors are scanned in ascending order,
    so only a strictly better score replaces the running best)."""
    totals = scores(state, m)
    strategies = state.strategies
    updated: list[Strategy] = []
    for p in range(state.graph.player_count):
        best_score = totals[p]
        best_strategy = strategies[p]
        for q in state.graph.neighbors[p]:
            if totals[q] > best_score:
                best_score = totals[q]
                best_strategy = strategies[q]
        updated.append(best_strategy)
    return PopulationState(state.graph, tuple(updated))


def run_spatial(state: PopulationState, m: PayoffMatrix,
                steps: int) -> list[float]:
    """Cooperation fraction before the first update and after each of
    ``steps`` synchronous updates (length steps + 1)."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    fractions = [state.cooperation_fraction()]
    for _ in range(steps):
        state = imitation_step(state, m)
        fractions.append(state.cooperation_fraction())
    return fractions
