"""Coding-side combinatorics: representation families, LTC parameters, contraction.

Indices are 0-based throughout.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import f2
from .codes import LinearCode
from .cosetgraph import MAX_GRAPH_DIM, build_coset_graph, diameter, sphere_profile
from .errors import DegenerateCodeError, PreconditionError, ResourceLimitError

MAX_EXACT_PACKING_N = 16


# ---------------------------------------------------------------- pairs


def disjoint_pair_count(code: LinearCode, i: int) -> int:
    """Maximum number of disjoint pairs {j, l} not containing i with v_j + v_l = v_i.

    For v_i != 0 the pair graph splits into complete bipartite blocks
    between the value classes a and a + v_i, so the matching number is a
    sum of class-size minima (with i removed from its own class). For
    v_i = 0 pairs are equal columns and each class contributes floor(w/2).
    """
    cols = code.columns
    v = cols[i]
    w = Counter(cols)
    w[v] -= 1
    if v == 0:
        return sum(k // 2 for k in w.values())
    total = 0
    for a in list(w):
        b = a ^ v
        if a < b:
            total += min(w[a], w.get(b, 0))
    return total


def disjoint_pairs(code: LinearCode, i: int) -> list[tuple[int, int]]:
    """A maximum family of disjoint pairs realising ``disjoint_pair_count``."""
    cols = code.columns
    v = cols[i]
    classes: dict[int, list[int]] = {}
    for j, c in enumerate(cols):
        if j != i:
            classes.setdefault(c, []).append(j)
    pairs = []
    for a in sorted(classes):
        b = a ^ v
        if v == 0:
            idx = classes[a]
            pairs += [(idx[2 * t], idx[2 * t + 1]) for t in range(len(idx) // 2)]
        elif a < b and b in classes:
            pairs += [tuple(sorted(p)) for p in zip(classes[a], classes[b])]
    return sorted(pairs)


def min_K(code: LinearCode) -> int:
    nonzero = [i for i, c in enumerate(code.columns) if c]
    if not nonzero:
        raise DegenerateCodeError("no nonzero columns")
    seen: dict[int, int] = {}
    for i in nonzero:
        c = code.columns[i]
        if c not in seen:
            seen[c] = disjoint_pair_count(code, i)
    return min(seen.values())


# ---------------------------------------------------------------- q-tuples


@dataclass
class RepFamily:
    coordinate: int
    q: int
    tuples: list[tuple[int, ...]]
    exact: bool = True  # False: greedy packing, size is only a lower bound

    def __len__(self) -> int:
        return len(self.tuples)

    def validate(self, code: LinearCode) -> None:
        """Re-check disjointness, exclusion of the coordinate and the column sums."""
        used: set[int] = set()
        for t in self.tuples:
            if len(t) != self.q or len(set(t)) != self.q:
                raise AssertionError(f"{t} is not a {self.q}-subset")
            if self.coordinate in t:
                raise AssertionError(f"{t} contains the coordinate itself")
            if used & set(t):
                raise AssertionError(f"{t} overlaps an earlier tuple")
            used |= set(t)
            s = 0
            for j in t:
                s ^= code.columns[j]
            if s != code.columns[self.coordinate]:
                raise AssertionError(f"columns of {t} do not sum to column {self.coordinate}")

    def to_record(self) -> dict:
        return {
            "coordinate": self.coordinate,
            "q": self.q,
            "tuples": [sorted(t) for t in self.tuples],
            "lower_bound": not self.exact,
        }


def representing_triples(code: LinearCode, i: int) -> list[tuple[int, int, int]]:
    """All 3-subsets of [n] minus {i} whose columns sum to v_i, in lex order."""
    cols = code.columns
    target = cols[i]
    where: dict[int, list[int]] = {}
    for l, c in enumerate(cols):
        where.setdefault(c, []).append(l)
    out = []
    others = [j for j in range(code.n) if j != i]
    for a, j in enumerate(others):
        for k in others[a + 1 :]:
            for l in where.get(target ^ cols[j] ^ cols[k], ()):
                if l > k and l != i:
                    out.append((j, k, l))
    out.sort()
    return out


def _max_packing(n: int, triples: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Exact maximum set packing by branching on the smallest coverable element."""
    by_elem: dict[int, list[tuple[int, ...]]] = {}
    for t in triples:
        for e in t:
            by_elem.setdefault(e, []).append(t)
    best: list[tuple[int, ...]] = []

    def search(chosen, used, elems):
        nonlocal best
        avail = [e for e in elems if e not in used and any(not (used & set(t)) for t in by_elem[e])]
        if len(chosen) + len(avail) // 3 <= len(best):
            return
        if not avail:
            best = list(chosen)
            return
        e = avail[0]
        for t in by_elem[e]:
            if not (used & set(t)):
                search(chosen + [t], used | set(t), avail[1:])
        search(chosen, used | {e}, avail[1:])

    search([], set(), sorted(by_elem))
    return sorted(best)


def _greedy_packing(triples: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    used: set[int] = set()
    out = []
    for t in triples:  # already lexicographic
        if not used.intersection(t):
            out.append(t)
            used.update(t)
    return out


def q_tuple_families(code: LinearCode, i: int, q: int, exact: bool | None = None) -> RepFamily:
    """A large disjoint family of q-subsets whose columns sum to v_i.

    q = 2 is always exact. For q = 3 the packing is exact by exhaustive
    search when n <= 16 and greedy (flagged as a lower bound) otherwise;
    ``exact`` overrides that choice.
    """
    if q == 2:
        return RepFamily(i, 2, disjoint_pairs(code, i), exact=True)
    if q != 3:
        raise PreconditionError(f"q must be 2 or 3, got {q}")
    triples = representing_triples(code, i)
    if exact is None:
        exact = code.n <= MAX_EXACT_PACKING_N
    if exact:
        return RepFamily(i, 3, _max_packing(code.n, triples), exact=True)
    return RepFamily(i, 3, _greedy_packing(triples), exact=False)


def _exact_cover(elems: list[int], triples: list[tuple[int, ...]]):
    by_elem: dict[int, list[tuple[int, ...]]] = {e: [] for e in elems}
    for t in triples:
        for e in t:
            by_elem[e].append(t)

    def search(remaining: frozenset[int]):
        if not remaining:
            return []
        # most constrained element first
        e = min(remaining, key=lambda x: (sum(1 for t in by_elem[x] if remaining.issuperset(t)), x))
        for t in by_elem[e]:
            if remaining.issuperset(t):
                rest = search(remaining.difference(t))
                if rest is not None:
                    return [t] + rest
        return None

    return search(frozenset(elems))


@dataclass
class PerfectLCCResult:
    is_perfect: bool
    families: dict[int, RepFamily] = field(default_factory=dict)
    failing_coordinate: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.is_perfect


def is_perfect_3lcc(code: LinearCode) -> PerfectLCCResult:
    """Decide whether every [n] minus {i} splits into triples summing to v_i."""
    n = code.n
    if n > MAX_EXACT_PACKING_N:
        raise ResourceLimitError(f"perfect 3-LCC search needs n <= {MAX_EXACT_PACKING_N}")
    if n % 3 != 1:
        return PerfectLCCResult(False, reason=f"n = {n} is not 1 mod 3")
    families = {}
    for i in range(n):
        elems = [j for j in range(n) if j != i]
        cover = _exact_cover(elems, representing_triples(code, i))
        if cover is None:
            return PerfectLCCResult(
                False, families, i, f"no partition of the other coordinates for coordinate {i}"
            )
        families[i] = RepFamily(i, 3, sorted(cover))
    return PerfectLCCResult(True, families)


@dataclass
class SphereGrowthRow:
    r: int
    lhs: int  # floor(r/2)^2 |S_r|
    rhs: int  # n |S_{r-1}|
    min_down_edges: int | None  # min over x in S_r of edges into S_{r-1}
    passed: bool


def sphere_growth_check(code: LinearCode, r_max: int | None = None) -> list[SphereGrowthRow]:
    """Check floor(r/2)^2 |S_r| <= n |S_{r-1}| and the per-vertex edge count behind it."""
    if not is_perfect_3lcc(code):
        raise PreconditionError("sphere growth check needs a perfect 3-LCC")
    T = build_coset_graph(code)
    dist = T.origin_distances
    sizes = sphere_profile(T)
    gens = np.array(T.generators, dtype=np.int64)
    rows = []
    top = len(sizes) - 1 if r_max is None else r_max
    for r in range(2, top + 1):
        need = (r // 2) ** 2
        size_r = sizes[r] if r < len(sizes) else 0
        size_prev = sizes[r - 1] if r - 1 < len(sizes) else 0
        lhs, rhs = need * size_r, code.n * size_prev
        if size_r == 0:
            rows.append(SphereGrowthRow(r, lhs, rhs, None, True))
            continue
        shell = np.flatnonzero(dist == r)
        down = (dist[shell[:, None] ^ gens[None, :]] == r - 1).sum(axis=1)
        low = int(down.min())
        rows.append(SphereGrowthRow(r, lhs, rhs, low, lhs <= rhs and low >= need))
    return rows


# ---------------------------------------------------------------- LTC parameters


def dependency_counts_bruteforce(code: LinearCode) -> list[int]:
    """For each i, the number of pairs {j, k} (both != i) with v_i + v_j + v_k = 0."""
    cols = np.array(code.columns, dtype=np.int64)
    n = cols.size
    pair_sums = cols[:, None] ^ cols[None, :]
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    out = []
    for i in range(n):
        hit = (pair_sums == cols[i]) & upper
        hit[i, :] = False
        hit[:, i] = False
        out.append(int(hit.sum()))
    return out


def dependency_counts_formula(code: LinearCode) -> list[int]:
    """The same counts from column multiplicities alone.

    For v_i != 0: sum over class pairs {a, b} with a + b = v_i (neither
    0 nor v_i) of w_a w_b, plus (w_i - 1) w_0 from a copy of v_i with a
    zero column. For v_i = 0: pairs of equal nonzero columns plus pairs of
    the other zero columns.
    """
    w = Counter(code.columns)
    cache: dict[int, int] = {}
    out = []
    for v in code.columns:
        if v not in cache:
            if v == 0:
                cache[v] = sum(math.comb(k, 2) for a, k in w.items() if a) + math.comb(w[0] - 1, 2)
            else:
                s = sum(w[a] * w[a ^ v] for a in w if a and a != v and a < (a ^ v) and (a ^ v) in w)
                cache[v] = s + (w[v] - 1) * w.get(0, 0)
        out.append(cache[v])
    return out


@dataclass
class LtcProfile:
    sigma: int
    sigma_per_coordinate: list[int]
    p: int
    t: int
    regular: bool

    def to_record(self) -> dict:
        return {"sigma": self.sigma, "p": self.p, "t": self.t, "regular": self.regular}


def ltc_profile(code: LinearCode) -> LtcProfile:
    brute = dependency_counts_bruteforce(code)
    formula = dependency_counts_formula(code)
    if brute != formula:
        raise AssertionError("dependency counts disagree between brute force and multiplicities")
    mult = Counter(code.columns)
    return LtcProfile(
        sigma=min(brute),
        sigma_per_coordinate=brute,
        p=max(mult.values()),
        t=len(mult),
        regular=len(set(mult.values())) == 1,
    )


@dataclass
class DensityPairsCheck:
    K_measured: int
    K_required: int | None
    passed: bool | None  # None when sigma <= p (hypothesis fails)


def verify_density_pairs(code: LinearCode, profile: LtcProfile | None = None) -> DensityPairsCheck:
    """Check that min_K >= ceil(sigma / p) whenever sigma > p."""
    profile = profile or ltc_profile(code)
    K = min_K(code)
    if profile.sigma <= profile.p:
        return DensityPairsCheck(K, None, None)
    need = -(-profile.sigma // profile.p)
    return DensityPairsCheck(K, need, K >= need)


# ---------------------------------------------------------------- contraction


@dataclass
class ContractionResult:
    B: tuple[int, ...]
    C_B: LinearCode
    U: f2.BitMatrix
    dim_C: int
    dim_C_B: int
    dim_U: int
    diam_T: int | None = None
    diam_T_B: int | None = None

    @property
    def identity_holds(self) -> bool:
        return self.dim_C == self.dim_C_B + self.dim_U

    @property
    def diameter_holds(self) -> bool | None:
        if self.diam_T is None or self.diam_T_B is None:
            return None
        return self.diam_T <= self.diam_T_B + self.dim_U


def contract_code(code: LinearCode, B, dim_cap: int = 12) -> ContractionResult:
    """Subcode vanishing on B, and the span U of the B-indexed columns."""
    B = tuple(sorted(set(B)))
    if any(not 0 <= j < code.n for j in B):
        raise PreconditionError("B must be a subset of range(n)")
    G = code.generator
    if G.m == 0:
        zero = LinearCode(f2.BitMatrix.zeros(0, code.n))
        return ContractionResult(B, zero, f2.BitMatrix.zeros(0, len(B)), 0, 0, 0)
    GB = G.submatrix(cols=B) if B else f2.BitMatrix.zeros(G.m, 0)
    kernel = f2.left_kernel(GB) if B else f2.BitMatrix.identity(G.m)
    gen = f2.matmul(kernel, G) if kernel.m else f2.BitMatrix.zeros(0, code.n)
    C_B = LinearCode(gen, name=f"{code}|B")
    res = ContractionResult(B, C_B, GB, code.dim, C_B.dim, f2.rank(GB) if B else 0)
    cap = min(dim_cap, MAX_GRAPH_DIM)
    if code.dim <= cap:
        res.diam_T = diameter(build_coset_graph(code, cap))
        res.diam_T_B = diameter(build_coset_graph(C_B, cap))
    return res


def contraction_pair_check(result: ContractionResult, K: float) -> bool:
    """Every nonzero column of the contracted generator has at least K disjoint pairs."""
    C_B = result.C_B
    return all(disjoint_pair_count(C_B, i) >= K for i, c in enumerate(C_B.columns) if c)


# ---------------------------------------------------------------- random subset


@dataclass
class SubsetSample:
    B: tuple[int, ...]
    B0_size: int
    Y: dict[int, int]
    delta: float
    theta: float
    threshold: float
    size_bound: float
    bullet1: bool
    bullet2: bool

    @property
    def size(self) -> int:
        return len(self.B)


def families_for(code: LinearCode, q: int = 3, exact: bool | None = None) -> dict[int, RepFamily]:
    """Representation families M_i for every nonzero coordinate."""
    return {
        i: q_tuple_families(code, i, q, exact=exact)
        for i, c in enumerate(code.columns)
        if c
    }


def random_subset_B(
    code: LinearCode,
    q: int,
    a: float,
    seed: int,
    families: dict[int, RepFamily] | None = None,
    *,
    strict: bool = True,
) -> SubsetSample:
    """One draw of the two-step random set B.

    Step one keeps each coordinate with probability theta = a n^(-1/(q-1));
    step two adds every nonzero coordinate i whose count Y_i of tuples in
    M_i meeting B_0 in at least q-2 places is below
    (delta/2) a^(q-2) n^(1/(q-1)). ``strict=False`` lifts the range check
    on ``a`` (theta is then capped at 1).
    """
    n = code.n
    if q < 3:
        raise PreconditionError("q must be at least 3")
    a_max = math.log2(n) ** (1 / (q - 1)) if n > 1 else 0.0
    if strict and not 1 <= a <= a_max:
        raise PreconditionError(f"a must lie in [1, {a_max:.6f}], got {a}")
    if families is None:
        families = families_for(code, q)
    N = [i for i, c in enumerate(code.columns) if c]
    delta = min((len(families[i]) for i in N), default=0) / n
    theta = min(1.0, a * n ** (-1 / (q - 1)))
    threshold = delta / 2 * a ** (q - 2) * n ** (1 / (q - 1))
    size_bound = (a + 4 / (delta * a ** (q - 2))) * n ** ((q - 2) / (q - 1)) if delta > 0 else math.inf

    rng = np.random.Generator(np.random.Philox(seed))
    mask = rng.random(n) < theta
    B0 = set(np.flatnonzero(mask).tolist())
    Y = {i: sum(1 for t in families[i].tuples if len(B0.intersection(t)) >= q - 2) for i in N}
    B = B0 | {i for i in N if Y[i] < threshold}

    good = True
    for i in N:
        if i in B:
            continue
        hits = sum(1 for t in families[i].tuples if len(set(t) - B) <= 2)
        good &= hits >= threshold
    return SubsetSample(
        B=tuple(sorted(B)),
        B0_size=len(B0),
        Y=Y,
        delta=delta,
        theta=theta,
        threshold=threshold,
        size_bound=size_bound,
        bullet1=len(B) <= size_bound,
        bullet2=good,
    )


@dataclass
class MonteCarloSummary:
    trials: int
    mean_size: float
    size_bound: float
    bullet1_rate: float
    bullet2_all: bool
    samples: list[SubsetSample]

    def to_record(self) -> dict:
        return {
            "trials": self.trials,
            "mean_B": round(self.mean_size, 9),
            "size_bound": round(self.size_bound, 9),
            "mean_over_bound": round(self.mean_size / self.size_bound, 9),
            "bullet1_rate": round(self.bullet1_rate, 9),
            "bullet2_all": self.bullet2_all,
            "delta": round(self.samples[0].delta, 9) if self.samples else None,
            "threshold": round(self.samples[0].threshold, 9) if self.samples else None,
        }


def monte_carlo_subsets(code, q, a, trials, seed, families=None, *, strict=True) -> MonteCarloSummary:
    """Repeat ``random_subset_B`` with per-trial seeds seed + t."""
    if families is None:
        families = families_for(code, q)
    samples = [random_subset_B(code, q, a, seed + t, families, strict=strict) for t in range(trials)]
    sizes = [s.size for s in samples]
    return MonteCarloSummary(
        trials=trials,
        mean_size=sum(sizes) / trials,
        size_bound=samples[0].size_bound,
        bullet1_rate=sum(s.bullet1 for s in samples) / trials,
        bullet2_all=all(s.bullet2 for s in samples),
        samples=samples,
    )


def pair_threshold(delta: float, a: float, q: int, n: int) -> float:
    return delta / 2 * a ** (q - 2) * n ** (1 / (q - 1))


def delta_lower_bound(code: LinearCode, families: dict[int, RepFamily]) -> Fraction:
    """min_i |M_i| / n over nonzero coordinates, from the families found."""
    sizes = [len(f) for f in families.values()]
    return Fraction(min(sizes, default=0), code.n)
