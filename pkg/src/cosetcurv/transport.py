"""Exact Wasserstein-1 distance between finitely supported measures.

Masses are rationals. Both measures are scaled to integers by the lcm of
their denominators and the transportation problem is solved as a min-cost
flow by successive shortest paths (Dijkstra with node potentials). The
final potentials are a dual solution; every solve checks reduced-cost
feasibility and complementary slackness against them, so a returned
value is certified optimal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import IncompleteDistanceError

INF = float("inf")


@dataclass(frozen=True)
class Measure:
    """Finitely supported probability measure with exact rational masses."""

    support: tuple[int, ...]
    mass: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.support) != len(self.mass):
            raise ValueError("support and mass lengths differ")
        if len(set(self.support)) != len(self.support):
            raise ValueError("support points must be distinct")
        if any(w <= 0 for w in self.mass):
            raise ValueError("masses must be positive")
        if sum(self.mass) != 1:
            raise ValueError(f"masses sum to {sum(self.mass)}, not 1")

    @classmethod
    def from_dict(cls, masses: Mapping[int, Fraction]) -> "Measure":
        items = sorted((k, Fraction(v)) for k, v in masses.items() if v)
        return cls(tuple(k for k, _ in items), tuple(v for _, v in items))

    @classmethod
    def point(cls, x: int) -> "Measure":
        return cls((x,), (Fraction(1),))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(zip(self.support, self.mass))


@dataclass
class TransportPlan:
    cost: Fraction
    flow: list[list[int]]  # integer units, scale = denominator
    scale: int
    potentials: tuple[list[int], list[int]]


def _scale(mu: Measure, nu: Measure) -> tuple[int, list[int], list[int]]:
    D = 1
    for w in mu.mass + nu.mass:
        D = D * w.denominator // math.gcd(D, w.denominator)
    return D, [int(w * D) for w in mu.mass], [int(w * D) for w in nu.mass]


def min_cost_transport(supply: Sequence[int], demand: Sequence[int], cost: Sequence[Sequence[int]]):
    """Integer transportation problem by successive shortest paths.

    Costs must be non-negative integers and total supply must equal total
    demand. Returns (total cost, flow matrix, (u, v)) where u, v are dual
    prices with u_i + v_j <= c_ij everywhere and equality wherever flow > 0.
    """
    S, T = len(supply), len(demand)
    if sum(supply) != sum(demand):
        raise ValueError("supply and demand totals differ")
    flow = [[0] * T for _ in range(S)]
    rem_s = list(supply)
    rem_t = list(demand)
    # nodes: 0 = super source, 1..S sources, S+1..S+T sinks, S+T+1 super sink
    N = S + T + 2
    sink = N - 1
    pot = [0] * N

    def arcs(u):
        # residual arcs out of u as (v, cost, capacity)
        if u == 0:
            for i in range(S):
                if rem_s[i] > 0:
                    yield i + 1, 0, rem_s[i]
        elif u <= S:
            i = u - 1
            if rem_s[i] < supply[i]:
                yield 0, 0, supply[i] - rem_s[i]
            for j in range(T):
                yield S + 1 + j, cost[i][j], INF
        elif u < sink:
            j = u - S - 1
            for i in range(S):
                if flow[i][j] > 0:
                    yield i + 1, -cost[i][j], flow[i][j]
            if rem_t[j] > 0:
                yield sink, 0, rem_t[j]
        else:
            for j in range(T):
                if rem_t[j] < demand[j]:
                    yield S + 1 + j, 0, demand[j] - rem_t[j]

    while sum(rem_s) > 0:
        dist = [INF] * N
        prev = [-1] * N
        done = [False] * N
        dist[0] = 0
        for _ in range(N):
            u, best = -1, INF
            for v in range(N):
                if not done[v] and dist[v] < best:
                    u, best = v, dist[v]
            if u < 0:
                break
            done[u] = True
            for v, c, cap in arcs(u):
                if cap <= 0:
                    continue
                nd = best + c + pot[u] - pot[v]
                if nd < dist[v]:
                    dist[v] = nd
                    prev[v] = u
        if dist[sink] == INF:
            raise RuntimeError("transport problem became infeasible")
        reach_max = max(d for d in dist if d < INF)
        for v in range(N):
            pot[v] += dist[v] if dist[v] < INF else reach_max
        # bottleneck along the path
        path = []
        v = sink
        while v != 0:
            path.append((prev[v], v))
            v = prev[v]
        delta = INF
        for u, v in path:
            delta = min(delta, _capacity(u, v, S, sink, rem_s, rem_t, supply, demand, flow))
        for u, v in path:
            if u == 0:
                rem_s[v - 1] -= delta
            elif v == 0:
                rem_s[u - 1] += delta
            elif v == sink:
                rem_t[u - S - 1] -= delta
            elif u == sink:
                rem_t[v - S - 1] += delta
            elif u <= S:
                flow[u - 1][v - S - 1] += delta
            else:
                flow[v - 1][u - S - 1] -= delta

    total = sum(flow[i][j] * cost[i][j] for i in range(S) for j in range(T))
    u_dual = [-pot[i + 1] for i in range(S)]
    v_dual = [pot[S + 1 + j] for j in range(T)]
    _certify(supply, demand, cost, flow, u_dual, v_dual, total)
    return total, flow, (u_dual, v_dual)


def _capacity(u, v, S, sink, rem_s, rem_t, supply, demand, flow):
    if u == 0:
        return rem_s[v - 1]
    if v == 0:
        return supply[u - 1] - rem_s[u - 1]
    if v == sink:
        return rem_t[u - S - 1]
    if u == sink:
        return demand[v - S - 1] - rem_t[v - S - 1]
    if u <= S:
        return INF
    return flow[v - 1][u - S - 1]


def _certify(supply, demand, cost, flow, u, v, total):
    S, T = len(supply), len(demand)
    for i in range(S):
        if sum(flow[i]) != supply[i]:
            raise AssertionError(f"row marginal {i} violated")
    for j in range(T):
        if sum(flow[i][j] for i in range(S)) != demand[j]:
            raise AssertionError(f"column marginal {j} violated")
    for i in range(S):
        for j in range(T):
            slack = cost[i][j] - u[i] - v[j]
            if slack < 0 or (flow[i][j] > 0 and slack != 0):
                raise AssertionError(f"dual certificate fails at ({i}, {j})")
    dual = sum(a * b for a, b in zip(supply, u)) + sum(a * b for a, b in zip(demand, v))
    if dual != total:
        raise AssertionError("primal and dual objectives differ")


DistanceOracle = Callable[[int, int], "int | None"]


def transport_plan(mu: Measure, nu: Measure, dist: DistanceOracle) -> TransportPlan:
    cost = []
    for x in mu.support:
        row = []
        for y in nu.support:
            d = dist(x, y)
            if d is None:
                raise IncompleteDistanceError(f"no distance for pair ({x}, {y})")
            row.append(d)
        cost.append(row)
    D, a, b = _scale(mu, nu)
    total, flow, duals = min_cost_transport(a, b, cost)
    return TransportPlan(Fraction(total, D), flow, D, duals)


def w1(mu: Measure, nu: Measure, dist: DistanceOracle) -> Fraction:
    """Exact W1(mu, nu) under an integer-valued metric."""
    return transport_plan(mu, nu, dist).cost
