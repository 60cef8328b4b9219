"""Binary linear codes and the constructions used throughout the package.

Random generator matrices come from numpy's Philox4x32 generator, a
counter-based bit generator keyed by the seed. Bits are drawn row-major
with ``Generator.integers(0, 2, size=(m, n))``, so a seed fixes the matrix
independently of any other draw in the process.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from . import f2
from .errors import PreconditionError
from .f2 import BitMatrix, BitVector

MAX_RANDOM_ROWS = 24


@dataclass(frozen=True)
class LinearCode:
    """The row space of a generator matrix, with the column data analyses use."""

    generator: BitMatrix
    name: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return self.generator.n

    @property
    def m(self) -> int:
        return self.generator.m

    @cached_property
    def dim(self) -> int:
        return f2.rank(self.generator)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """Column values as ints (first row in the most significant bit)."""
        if self.m == 0:
            return (0,) * self.n
        return tuple(self.generator.column_ints())

    @cached_property
    def column_multiset(self) -> list[tuple[BitVector, int]]:
        return f2.column_multiset(self.generator)

    @property
    def zero_columns(self) -> list[int]:
        return [i for i, c in enumerate(self.columns) if c == 0]

    def __str__(self) -> str:
        return self.name or f"[{self.n}, {self.dim}] code"


def _hadamard_matrix(m: int) -> BitMatrix:
    return BitMatrix.from_columns(list(range(1, 2**m)), m)


def hadamard(m: int) -> LinearCode:
    """Generator with every nonzero vector of F_2^m as a column, in counting order."""
    if not 2 <= m <= 12:
        raise PreconditionError(f"hadamard needs 2 <= m <= 12, got {m}")
    return LinearCode(_hadamard_matrix(m), name=f"hadamard:{m}")


def identity_code(n: int) -> LinearCode:
    """The whole space F_2^n; its coset graph is the n-cube."""
    if n < 1:
        raise PreconditionError("identity code needs n >= 1")
    return LinearCode(BitMatrix.identity(n), name=f"cube:{n}")


def repetition(n: int) -> LinearCode:
    return LinearCode(BitMatrix.from_rows(["1" * n]), name=f"repetition:{n}")


def direct_product(A: LinearCode, B: LinearCode) -> LinearCode:
    """Block-diagonal generator diag(G_A, G_B)."""
    ga, gb = A.generator.array, B.generator.array
    out = np.zeros((ga.shape[0] + gb.shape[0], ga.shape[1] + gb.shape[1]), dtype=np.uint8)
    out[: ga.shape[0], : ga.shape[1]] = ga
    out[ga.shape[0] :, ga.shape[1] :] = gb
    name = f"{A}x{B}" if A.name and B.name else ""
    return LinearCode(BitMatrix(out), name=name)


def hadamard_product(m: int) -> LinearCode:
    c = direct_product(hadamard(m), hadamard(m))
    return LinearCode(c.generator, name=f"product:{m}")


def hadamard_plus_cube(m: int) -> LinearCode:
    """diag(Hadamard generator, I_m).

    Plenty of pair representations on average, none at all for the unit
    columns, and the coset graph is K_{2^m} x Q_m.
    """
    if not 2 <= m <= 10:
        raise PreconditionError(f"hadamard_plus_cube needs 2 <= m <= 10, got {m}")
    g = direct_product(LinearCode(_hadamard_matrix(m)), LinearCode(BitMatrix.identity(m)))
    return LinearCode(g.generator, name=f"counterexample26:{m}")


def _span(basis: BitMatrix) -> list[int]:
    """All elements of the row span, ordered by coefficient vector (counting order)."""
    rows = basis.row_ints()
    out = []
    for coeffs in product((0, 1), repeat=len(rows)):
        v = 0
        for c, r in zip(coeffs, rows):
            if c:
                v ^= r
        out.append(v)
    return out


def ltc_tight_family(m: int, k: int, U_basis: BitMatrix, *, strict: bool = True) -> LinearCode:
    """k x 2km generator showing the density/multiplicity dimension bound is nearly tight.

    With u_1..u_m the elements of U = span(U_basis), the first km columns
    are the blocks I + B_i and the last km columns are the blocks B_i,
    where every column of B_i equals u_i.

    ``strict=False`` skips the minimum-distance requirement on U; the
    construction and the rank are still well defined, but the distinct
    columns e_c + u_i may then collide.
    """
    if m < 1 or m & (m - 1):
        raise PreconditionError(f"m must be a power of 2, got {m}")
    log_m = m.bit_length() - 1
    if k < log_m:
        raise PreconditionError(f"k must be >= log2(m) = {log_m}, got {k}")
    if U_basis.n != k:
        raise PreconditionError(f"U_basis rows have length {U_basis.n}, expected k = {k}")
    if U_basis.m != log_m or f2.rank(U_basis) != log_m:
        raise PreconditionError(
            f"dimension: U_basis must have {log_m} independent rows, "
            f"got {U_basis.m} rows of rank {f2.rank(U_basis)}"
        )
    U = _span(U_basis)
    min_dist = min((bin(u).count("1") for u in U if u), default=k + 1)
    if strict and min_dist < 3:
        raise PreconditionError(f"distance: span(U_basis) has minimum distance {min_dist} < 3")
    cols = [u ^ (1 << (k - 1 - c)) for u in U for c in range(k)]
    cols += [u for u in U for _ in range(k)]
    return LinearCode(BitMatrix.from_columns(cols, k), name=f"ltc:{m}:{k}")


# One shipped subspace per supported (m, k): U = span of these rows.
LTC_WITNESSES: dict[tuple[int, int], tuple[str, ...]] = {
    (2, 2): ("11",),  # distance 2 only; usable with strict=False
    (2, 3): ("111",),
    (4, 5): ("11100", "00111"),
    (4, 6): ("111000", "000111"),
    (8, 6): ("111000", "100110", "010101"),
}


def ltc_witness(m: int, k: int) -> tuple[BitMatrix, bool]:
    """The shipped U_basis for (m, k) and whether it meets the distance-3 requirement."""
    try:
        rows = LTC_WITNESSES[(m, k)]
    except KeyError:
        raise PreconditionError(f"no shipped subspace for (m, k) = ({m}, {k})") from None
    basis = BitMatrix.from_rows(rows)
    dist = min(bin(u).count("1") for u in _span(basis) if u)
    return basis, dist >= 3


def perfect_3lcc_basic() -> LinearCode:
    """G = [e1 e2 e3 e1+e2+e3]: each column is the sum of the other three."""
    return LinearCode(BitMatrix.from_rows(["1001", "0101", "0011"]), name="perfect3lcc")


def random_code(m: int, n: int, seed: int) -> LinearCode:
    if not 1 <= m <= MAX_RANDOM_ROWS:
        raise PreconditionError(f"random_code needs 1 <= m <= {MAX_RANDOM_ROWS}")
    if n < 1:
        raise PreconditionError("random_code needs n >= 1")
    rng = np.random.Generator(np.random.Philox(seed))
    bits = rng.integers(0, 2, size=(m, n), dtype=np.uint8)
    return LinearCode(BitMatrix(bits), name=f"random:{m}:{n}:{seed}")


def parse_code(text: str, name: str = "") -> LinearCode:
    return LinearCode(f2.parse_matrix(text), name=name)


def serialize_code(code: LinearCode) -> str:
    return f2.format_matrix(code.generator)


def read_code(path) -> LinearCode:
    with open(path) as fh:
        return parse_code(fh.read(), name=str(path))


def construct(recipe: str) -> LinearCode:
    """Build a code from a ``name:param[:param...]`` string (the CLI's --construct)."""
    name, _, rest = recipe.partition(":")
    args = [a for a in rest.split(":") if a] if rest else []
    try:
        ints = [int(a) for a in args]
    except ValueError:
        raise PreconditionError(f"non-integer parameter in {recipe!r}") from None

    def need(count):
        if len(ints) != count:
            raise PreconditionError(f"{name} takes {count} parameter(s), got {len(ints)}")

    if name == "hadamard":
        need(1)
        return hadamard(ints[0])
    if name == "product":
        need(1)
        return hadamard_product(ints[0])
    if name in ("cube", "identity"):
        need(1)
        return identity_code(ints[0])
    if name == "repetition":
        need(1)
        return repetition(ints[0])
    if name in ("counterexample26", "hadamard-cube"):
        need(1)
        return hadamard_plus_cube(ints[0])
    if name == "ltc":
        need(2)
        basis, ok = ltc_witness(*ints)
        return ltc_tight_family(ints[0], ints[1], basis, strict=ok)
    if name == "perfect3lcc":
        need(0)
        return perfect_3lcc_basic()
    if name == "random":
        need(3)
        return random_code(*ints)
    raise PreconditionError(f"unknown construction {name!r}")


def ltc_nominal(recipe: str) -> tuple[int, int, int] | None:
    """(m, k, n) for an ``ltc:m:k`` construction string, else None."""
    name, _, rest = recipe.partition(":")
    if name != "ltc":
        return None
    m, k = (int(a) for a in rest.split(":"))
    return m, k, 2 * k * m
