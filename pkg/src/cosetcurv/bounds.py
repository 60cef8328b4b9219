"""Bound formulas and the report that pairs them with measured quantities.

Only inequalities that hold exactly at every finite n can fail a report.
Asymptotic statements are evaluated with unit hidden constant and carried
as informational entries.
"""

from __future__ import annotations

import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt

from . import local
from .codes import LinearCode, ltc_nominal
from .cosetgraph import (
    MAX_BRUTEFORCE_N,
    build_coset_graph,
    covering_radius_bruteforce,
    diameter,
    sphere_profile,
)
from .curvature import bonnet_myers_check, curvature_graph
from .errors import ResourceLimitError

REAL_DIGITS = 9

# bound id -> anchor text naming the statement the entry evaluates
ANCHORS: dict[str, str] = {
    "pair_diameter": "diam(T) <= n/(K+1) when every nonzero column has K>0 disjoint pair representations",
    "pair_curvature": "kappa(T) >= 2(K+1)/(n+1) from the shared-support transport plan",
    "ball_dimension": "dim C <= log2 sum_{i<=diam(T)} C(n,i) (n-regular abelian Cayley graph)",
    "pair_ball_dimension": "dim C <= log2 sum_{i<=floor(n/(K+1))} C(n,i)",
    "entropy_dimension": "dim C <= (n log2(K+1) + n/ln 2)/(K+1)",
    "bonnet_myers": "diam(G) <= 2 max_x J(x) / kappa(G)",
    "covering_radius": "diam(T) equals the covering radius of the dual code",
    "density_pairs": "sigma > p implies K >= ceil(sigma/p) disjoint pair representations",
    "regular_ltc": "regular code with 3-density sigma has dim C <= 2n/sqrt(sigma)",
    "ltc_tight_identity": "tight LTC family: dim C = k = n/(2 sigma/p) with nominal sigma = km, p = k",
    "pair_q2_diameter": "K = delta n pair representations give diam(T) <= 1/delta",
    "lcc_covering_radius": "q-LCC: covering radius of the dual is O(n^((q-2)/(q-1)))",
    "lcc_dimension": "q-LCC: dim C = O(n^((q-2)/(q-1)) (log n)^(1/(q-1)))",
    "perfect_lcc_dimension": "perfect 3-LCC: dim C = O(sqrt(n))",
    "ltc_dimension": "3-density sigma, max multiplicity p < sigma: dim C = O(log(ceil(sigma/p))/ceil(sigma/p) n)",
}

CERTIFYING = {
    "pair_diameter",
    "pair_curvature",
    "ball_dimension",
    "pair_ball_dimension",
    "entropy_dimension",
    "bonnet_myers",
    "covering_radius",
    "density_pairs",
    "regular_ltc",
    "ltc_tight_identity",
    "pair_q2_diameter",
}


def rational(x: Fraction | int | None) -> str | None:
    if x is None:
        return None
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def real(x: float | None) -> float | None:
    if x is None:
        return None
    return round(float(x), REAL_DIGITS)


def binary_entropy(x: float) -> float:
    if x in (0, 1):
        return 0.0
    return x * math.log2(1 / x) + (1 - x) * math.log2(1 / (1 - x))


# ------------------------------------------------------------------ formulas


def bound_lemma_main(n: int, K: int) -> Fraction:
    """Diameter bound n/(K+1) from K disjoint pair representations."""
    if K < 0:
        raise ValueError("K must be non-negative")
    return Fraction(n, K + 1)


def hamming_ball(n: int, radius: int) -> int:
    return sum(comb(n, i) for i in range(radius + 1))


@dataclass(frozen=True)
class DimensionBound:
    ball_size: int
    log2_ball: float
    closed_form: float | None  # (n log2(K+1) + n/ln 2)/(K+1), when K is given


def bound_dimension(n: int, diameter_bound: int, K: int | None = None) -> DimensionBound:
    if not 0 <= diameter_bound <= n:
        raise ValueError("diameter bound must lie in [0, n]")
    ball = hamming_ball(n, diameter_bound)
    closed = None
    if K is not None:
        closed = (n * math.log2(K + 1) + n / math.log(2)) / (K + 1)
    return DimensionBound(ball, math.log2(ball), closed)


def bound_regular_ltc(n: int, sigma: int) -> Fraction | float:
    """2n/sqrt(sigma); exact when sigma is a perfect square."""
    if sigma < 1:
        raise ValueError("sigma must be >= 1")
    r = isqrt(sigma)
    if r * r == sigma:
        return Fraction(2 * n, r)
    return 2 * n / math.sqrt(sigma)


def bound_asymptotics(
    n: int,
    q: int | None = None,
    sigma: int | None = None,
    p: int | None = None,
    K: int | None = None,
    diameter: int | None = None,
):
    """Unit-constant values of the asymptotic statements, as informational entries.

    q = 2 has an exact finite-n form instead: K = delta n pairs give
    diam(T) <= 1/delta, which is returned as a certifying entry.
    """
    out = []
    if q == 2 and K:
        bound = lcc_q2_diameter(Fraction(K, n))
        ok = None if diameter is None else diameter <= bound
        out.append(BoundEntry("pair_q2_diameter", rational(bound), "diameter", diameter, _verdict(ok)))
    if q is not None and q >= 3:
        out.append(_info("lcc_covering_radius", n ** ((q - 2) / (q - 1))))
        out.append(_info("lcc_dimension", n ** ((q - 2) / (q - 1)) * math.log2(n) ** (1 / (q - 1))))
        if q == 3:
            out.append(_info("perfect_lcc_dimension", math.sqrt(n)))
    if sigma is not None and p is not None and sigma > p:
        r = -(-sigma // p)
        out.append(_info("ltc_dimension", math.log2(r) / r * n))
    return out


def lcc_q2_diameter(delta: Fraction) -> Fraction | None:
    """With K = delta n pairs, n/(K+1) < 1/delta."""
    return None if delta <= 0 else 1 / Fraction(delta)


# ------------------------------------------------------------------ report


@dataclass
class BoundEntry:
    id: str
    value: object
    compares_to: str
    measured: object = None
    status: str = "na"  # pass | fail | na | info | bound-only
    note: str = ""

    @property
    def anchor(self) -> str:
        return ANCHORS[self.id]

    @property
    def certifying(self) -> bool:
        return self.id in CERTIFYING

    def to_record(self) -> dict:
        rec = {
            "id": self.id,
            "anchor": self.anchor,
            "certifying": self.certifying,
            "value": self.value,
            "compares_to": self.compares_to,
            "measured": self.measured,
            "status": self.status,
        }
        if self.note:
            rec["note"] = self.note
        return rec


def _info(bid: str, value: float) -> BoundEntry:
    return BoundEntry(bid, real(value), "dim", status="info", note="asymptotic, informational")


def _verdict(ok: bool | None) -> str:
    if ok is None:
        return "bound-only"
    return "pass" if ok else "fail"


@dataclass
class BoundReport:
    code: dict
    measured: dict
    bounds: list[BoundEntry]
    timing: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(b.status != "fail" for b in self.bounds if b.certifying)

    def to_record(self) -> dict:
        rec = {
            "code": self.code,
            "measured": self.measured,
            "bounds": [b.to_record() for b in self.bounds],
            "timing": self.timing,
        }
        rec.update(self.extras)
        return rec


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.stages: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        t0 = time.perf_counter()
        yield
        if self.enabled:
            self.stages[name] = round(time.perf_counter() - t0, 6)


def analyze(
    code: LinearCode,
    source: dict | None = None,
    *,
    dim_cap: int = 24,
    q: int | None = None,
    timing: bool = False,
) -> BoundReport:
    """Run every measurement the code supports and evaluate the bounds."""
    clock = _Clock(timing)
    n = code.n
    nonzero = any(code.columns)
    measured: dict = {"n": n, "dim": code.dim}

    diam = None
    with clock.stage("coset_graph"):
        try:
            T = build_coset_graph(code, dim_cap)
            diam = diameter(T)
            measured["diameter"] = diam
            measured["sphere_profile"] = list(sphere_profile(T))
        except ResourceLimitError:
            measured["diameter"] = None
            measured["sphere_profile"] = None
    with clock.stage("covering_radius"):
        measured["covering_radius"] = covering_radius_bruteforce(code) if n <= MAX_BRUTEFORCE_N else None

    curv = None
    with clock.stage("curvature"):
        if nonzero:
            curv = curvature_graph(code)
            measured["kappa_graph"] = rational(curv.kappa_graph)
            measured["max_jump"] = rational(curv.max_jump)
        else:
            measured["kappa_graph"] = None
            measured["max_jump"] = None

    with clock.stage("local_structure"):
        K = local.min_K(code) if nonzero else None
        prof = local.ltc_profile(code)
        measured["K"] = K
        measured["sigma"] = prof.sigma
        measured["p"] = prof.p
        measured["t"] = prof.t
        measured["regular"] = prof.regular

    entries: list[BoundEntry] = []
    with clock.stage("bounds"):
        if measured["covering_radius"] is not None and diam is not None:
            entries.append(
                BoundEntry("covering_radius", diam, "covering_radius",
                           measured["covering_radius"], _verdict(diam == measured["covering_radius"]))
            )
        entries += _pair_entries(n, code.dim, K, diam, curv)
        if diam is not None:
            ball = hamming_ball(n, diam)
            entries.append(
                BoundEntry("ball_dimension", real(math.log2(ball)), "dim", code.dim,
                           _verdict(2**code.dim <= ball))
            )
        if curv is not None:
            bm = bonnet_myers_check(code, dim_cap, report=curv)
            entries.append(
                BoundEntry("bonnet_myers", rational(bm.bound), "diameter", bm.diameter, bm.status,
                           note="" if bm.bound is not None else "kappa <= 0, no bound")
            )
        entries += _ltc_entries(code, prof, K, source)
        entries += bound_asymptotics(n, q=q, sigma=prof.sigma, p=prof.p, K=K, diameter=diam)

    code_rec = dict(source or {"name": str(code)})
    code_rec.setdefault("name", str(code))
    return BoundReport(code_rec, measured, entries, clock.stages)


def _pair_entries(n, dim, K, diam, curv) -> list[BoundEntry]:
    if K is None:
        return []
    out = []
    lower = Fraction(2 * (K + 1), n + 1)
    kappa = curv.kappa_graph if curv is not None else None
    out.append(
        BoundEntry("pair_curvature", rational(lower), "kappa_graph", rational(kappa),
                   _verdict(kappa >= lower) if kappa is not None else "na")
    )
    if K == 0:
        note = "not applicable (K=0 hypothesis)"
        for bid in ("pair_diameter", "pair_ball_dimension", "entropy_dimension"):
            out.append(BoundEntry(bid, None, "diameter" if bid == "pair_diameter" else "dim",
                                  status="na", note=note))
        return out
    bound = bound_lemma_main(n, K)
    out.append(
        BoundEntry("pair_diameter", rational(bound), "diameter", diam,
                   _verdict(None if diam is None else diam <= bound))
    )
    dimb = bound_dimension(n, min(n, math.floor(bound)), K)
    out.append(
        BoundEntry("pair_ball_dimension", real(dimb.log2_ball), "dim", dim,
                   _verdict(2**dim <= dimb.ball_size))
    )
    out.append(
        BoundEntry("entropy_dimension", real(dimb.closed_form), "dim", dim,
                   _verdict(dimb.log2_ball <= dimb.closed_form + 1e-9 and dim <= dimb.closed_form))
    )
    return out


def _ltc_entries(code, prof, K, source) -> list[BoundEntry]:
    out = []
    if K is not None:
        if prof.sigma > prof.p:
            need = -(-prof.sigma // prof.p)
            out.append(BoundEntry("density_pairs", need, "K", K, _verdict(K >= need)))
        else:
            out.append(BoundEntry("density_pairs", None, "K", K, "na", note="hypothesis sigma > p fails"))
    if prof.regular and prof.sigma >= 1:
        b = bound_regular_ltc(code.n, prof.sigma)
        value = rational(b) if isinstance(b, Fraction) else real(b)
        out.append(BoundEntry("regular_ltc", value, "dim", code.dim, _verdict(code.dim <= b)))
    else:
        why = "code is not regular" if not prof.regular else "sigma = 0"
        out.append(BoundEntry("regular_ltc", None, "dim", code.dim, "na", note=why))
    recipe = (source or {}).get("construct", "")
    nominal = ltc_nominal(recipe) if recipe else None
    if nominal is not None:
        m, k, n = nominal
        sigma_nom, p_nom = k * m, k
        value = Fraction(n) / (2 * Fraction(sigma_nom, p_nom))
        out.append(
            BoundEntry("ltc_tight_identity", rational(value), "dim", code.dim,
                       _verdict(code.dim == value and prof.p == p_nom),
                       note=f"measured sigma = {prof.sigma}, nominal sigma = {sigma_nom}")
        )
    return out
