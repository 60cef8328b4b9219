"""Coarse Ricci curvature of coset leader graphs.

The measure m_x puts mass (#edges x-y)/(n+1) on each neighbour y and
(#loops at x + 1)/(n+1) on x itself. For a generator i with nonzero
label, kappa(x, x+e_i) = 1 - W1(m_x, m_{x+e_i}); it is computed at the
origin only, which is exact because translations are graph automorphisms.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .codes import LinearCode
from .cosetgraph import (
    CosetGraph,
    LocalBall,
    build_coset_graph,
    coset_labels,
    diameter,
)
from .errors import DegenerateCodeError, LoopDirectionError, ResourceLimitError
from .transport import Measure, w1

LocalMeasure = Measure


def local_measure(labels, x: int = 0) -> Measure:
    """m_x for a coset graph given by its generator labels.

    ``labels`` may be a CosetGraph, a LinearCode or a plain label sequence.
    """
    labels = _labels(labels)
    n = len(labels)
    counts = Counter(x ^ g for g in labels)
    counts[x] += 1
    return Measure.from_dict({y: Fraction(k, n + 1) for y, k in counts.items()})


def _labels(obj) -> tuple[int, ...]:
    if isinstance(obj, CosetGraph):
        return obj.generators
    if isinstance(obj, LinearCode):
        return coset_labels(obj)
    return tuple(obj)


def adjacent_distance_oracle(code: LinearCode) -> Callable[[int, int], int | None]:
    """Distances between points of two adjacent unit balls.

    Such points are at most 3 apart (one step, the edge, one step), so a
    ball of radius 2 resolves every pair: anything farther is exactly 3.
    Points outside that regime are refused.
    """
    ball = LocalBall(code, 2)
    steps = {g for g in ball.labels if g}

    def dist(a: int, b: int) -> int | None:
        d = ball.distance(a, b)
        if d is not None:
            return d
        z = a ^ b
        if any((z ^ g) in ball for g in steps):
            return 3
        return None

    return dist


def curvature_direction(code: LinearCode, i: int, x: int = 0, dist=None) -> Fraction:
    """kappa(x, x + e_i) as an exact rational."""
    labels = coset_labels(code)
    g = labels[i]
    if g == 0:
        raise LoopDirectionError(f"column {i} is zero: direction {i} is a loop")
    if dist is None:
        dist = adjacent_distance_oracle(code)
    return 1 - w1(local_measure(labels, x), local_measure(labels, x ^ g), dist)


@dataclass
class CurvatureReport:
    per_direction: list[Fraction | None]  # None marks a loop direction
    kappa_graph: Fraction
    max_jump: Fraction
    bonnet_myers_bound: Fraction | None

    def to_record(self) -> dict:
        return {
            "per_direction": [_q(k) for k in self.per_direction],
            "loop_directions": [i for i, k in enumerate(self.per_direction) if k is None],
            "kappa_graph": _q(self.kappa_graph),
            "max_jump": _q(self.max_jump),
            "bonnet_myers_bound": _q(self.bonnet_myers_bound),
        }


def _q(x: Fraction | None) -> str | None:
    if x is None:
        return None
    return f"{x.numerator}/{x.denominator}"


def max_jump(code: LinearCode) -> Fraction:
    """max_x W1(delta_x, m_x): all mass off x moves exactly one step."""
    zeros = sum(1 for c in code.columns if c == 0)
    return Fraction(code.n - zeros, code.n + 1)


def curvature_graph(code: LinearCode) -> CurvatureReport:
    labels = coset_labels(code)
    if all(g == 0 for g in labels):
        raise DegenerateCodeError("all columns are zero; the coset graph is a single vertex")
    dist = adjacent_distance_oracle(code)
    by_label: dict[int, Fraction] = {}
    per_direction: list[Fraction | None] = []
    for i, g in enumerate(labels):
        if g == 0:
            per_direction.append(None)
            continue
        if g not in by_label:
            by_label[g] = curvature_direction(code, i, dist=dist)
        per_direction.append(by_label[g])
    kappa = min(by_label.values())
    jump = max_jump(code)
    bound = 2 * jump / kappa if kappa > 0 else None
    return CurvatureReport(per_direction, kappa, jump, bound)


@dataclass
class BonnetMyersResult:
    bound: Fraction | None
    diameter: int | None
    passed: bool | None  # None: bound only (graph too large) or no bound

    @property
    def status(self) -> str:
        if self.bound is None:
            return "na"
        if self.passed is None:
            return "bound-only"
        return "pass" if self.passed else "fail"


def bonnet_myers_check(code: LinearCode, dim_cap: int = 24, report: CurvatureReport | None = None):
    """Compare diam(T) with 2 max_x J(x) / kappa(T)."""
    report = report or curvature_graph(code)
    if report.bonnet_myers_bound is None:
        return BonnetMyersResult(None, None, None)
    try:
        T = build_coset_graph(code, dim_cap)
    except ResourceLimitError:
        return BonnetMyersResult(report.bonnet_myers_bound, None, None)
    d = diameter(T)
    return BonnetMyersResult(report.bonnet_myers_bound, d, d <= report.bonnet_myers_bound)
