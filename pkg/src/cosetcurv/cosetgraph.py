"""Coset leader graphs F_2^n / C-perp and their metric structure.

A coset x + C-perp is identified with its syndrome G x, restricted to the
first maximal independent set of rows of G. That gives a bijection
between cosets and F_2^dim, so vertices are the ints 0 .. 2^dim - 1 and
generator i moves a vertex s to s XOR g_i, where g_i is column i of the
restricted generator.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import f2
from .codes import LinearCode
from .errors import PreconditionError, ResourceLimitError

MAX_GRAPH_DIM = 24
MAX_BRUTEFORCE_N = 20
MAX_BALL_RADIUS = 4


def coset_labels(code: LinearCode) -> tuple[int, ...]:
    """Canonical label of e_i + C-perp for every coordinate i."""
    rows = f2.independent_rows(code.generator)
    if not rows:
        return (0,) * code.n
    return tuple(code.generator.submatrix(rows=rows).column_ints())


@dataclass(frozen=True)
class CosetGraph:
    n: int
    dim: int
    generators: tuple[int, ...]

    @property
    def vertex_count(self) -> int:
        return 1 << self.dim

    @cached_property
    def loop_generators(self) -> frozenset[int]:
        return frozenset(i for i, g in enumerate(self.generators) if g == 0)

    @cached_property
    def multiplicity_classes(self) -> list[list[int]]:
        """Generators grouped by equal label, ordered by label."""
        groups: dict[int, list[int]] = defaultdict(list)
        for i, g in enumerate(self.generators):
            groups[g].append(i)
        return [groups[g] for g in sorted(groups)]

    @cached_property
    def _steps(self) -> np.ndarray:
        return np.array(sorted({g for g in self.generators if g}), dtype=np.int64)

    def neighbors(self, s: int) -> Counter:
        """Distinct neighbours of s (loops included) with edge multiplicities."""
        return Counter(s ^ g for g in self.generators)

    def degree(self, s: int) -> int:
        return sum(self.neighbors(s).values())

    def distances_from(self, source: int = 0) -> np.ndarray:
        """BFS distances from ``source`` to every vertex."""
        dist = np.full(self.vertex_count, -1, dtype=np.int32)
        dist[source] = 0
        frontier = np.array([source], dtype=np.int64)
        r = 0
        steps = self._steps
        chunk = max(1, (1 << 22) // max(1, steps.size))
        while frontier.size and steps.size:
            r += 1
            found = []
            for lo in range(0, frontier.size, chunk):
                reach = (frontier[lo : lo + chunk, None] ^ steps[None, :]).ravel()
                reach = np.unique(reach[dist[reach] < 0])
                dist[reach] = r
                found.append(reach)
            frontier = np.concatenate(found)
        return dist

    @cached_property
    def origin_distances(self) -> np.ndarray:
        return self.distances_from(0)


def build_coset_graph(code: LinearCode, dim_cap: int = MAX_GRAPH_DIM) -> CosetGraph:
    if code.dim > min(dim_cap, MAX_GRAPH_DIM):
        raise ResourceLimitError(
            f"coset graph would have 2^{code.dim} vertices; cap is 2^{min(dim_cap, MAX_GRAPH_DIM)}"
        )
    return CosetGraph(n=code.n, dim=code.dim, generators=coset_labels(code))


def diameter(T: CosetGraph) -> int:
    # eccentricity of the origin is the diameter: translations are automorphisms
    return int(T.origin_distances.max())


def sphere_profile(T: CosetGraph, source: int = 0) -> tuple[int, ...]:
    dist = T.origin_distances if source == 0 else T.distances_from(source)
    return tuple(int(c) for c in np.bincount(dist))


def covering_radius_bruteforce(code: LinearCode) -> int:
    """Covering radius of C-perp by enumerating all 2^n words.

    Each word x is sent to its syndrome G x; the covering radius is the
    largest, over syndromes, of the smallest weight with that syndrome.
    """
    n = code.n
    if n > MAX_BRUTEFORCE_N:
        raise ResourceLimitError(f"brute force covering radius needs n <= {MAX_BRUTEFORCE_N}")
    synd = np.zeros(1, dtype=np.int64)
    weight = np.zeros(1, dtype=np.int64)
    # words built coordinate by coordinate; uses raw generator columns, not graph labels
    for c in code.columns:
        synd = np.concatenate([synd, synd ^ c])
        weight = np.concatenate([weight, weight + 1])
    keys, inverse = np.unique(synd, return_inverse=True)
    best = np.full(keys.size, n + 1, dtype=np.int64)
    np.minimum.at(best, inverse, weight)
    return int(best.max())


GREATER = None


class LocalBall:
    """Exact distances between coset labels, up to a fixed radius.

    Built by breadth-first enumeration of sums of distinct column labels,
    so it never touches the 2^dim vertex set.
    """

    def __init__(self, code: LinearCode, radius: int):
        if not 0 <= radius <= MAX_BALL_RADIUS:
            raise PreconditionError(f"radius must be in 0..{MAX_BALL_RADIUS}")
        self.radius = radius
        self.labels = coset_labels(code)
        steps = sorted({g for g in self.labels if g})
        self._dist = {0: 0}
        frontier = [0]
        for r in range(1, radius + 1):
            nxt = []
            for s in frontier:
                for g in steps:
                    t = s ^ g
                    if t not in self._dist:
                        self._dist[t] = r
                        nxt.append(t)
            frontier = nxt

    def __len__(self) -> int:
        return len(self._dist)

    def __contains__(self, label: int) -> bool:
        return label in self._dist

    def distance(self, a: int, b: int) -> int | None:
        """d(a, b) if it is at most the radius, else ``GREATER`` (None)."""
        return self._dist.get(a ^ b, GREATER)

    def points(self) -> list[int]:
        return sorted(self._dist)


def local_ball(code: LinearCode, radius: int) -> LocalBall:
    return LocalBall(code, radius)


def dump_adjacency(T: CosetGraph, max_vertices: int = 256) -> str:
    """Debug listing ``vertex: neighbour x multiplicity ... | loops k``."""
    if T.vertex_count > max_vertices:
        raise ResourceLimitError(f"refusing to dump more than {max_vertices} vertices")
    width = max(1, T.dim)
    fmt = lambda v: format(v, f"0{width}b")  # noqa: E731
    lines = []
    for s in range(T.vertex_count):
        nbrs = T.neighbors(s)
        loops = nbrs.pop(s, 0)
        parts = [f"{fmt(t)}x{k}" for t, k in sorted(nbrs.items())]
        lines.append(f"{fmt(s)}: {' '.join(parts)} | loops {loops}")
    return "\n".join(lines) + "\n"
