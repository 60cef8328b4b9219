"""Dense linear algebra over GF(2).

Matrices are stored as read-only ``uint8`` numpy arrays. Row and column
values are also exposed as Python ints with the first coordinate in the
most significant bit, so integer order is lexicographic order on bit
strings (0 < 1, first coordinate first).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError

MAX_LENGTH = 4096


def _bits_to_int(bits: Iterable[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def _int_to_bits(value: int, length: int) -> list[int]:
    return [(value >> (length - 1 - k)) & 1 for k in range(length)]


@dataclass(frozen=True)
class BitVector:
    """A binary vector of fixed length, packed into an int."""

    length: int
    value: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("BitVector length must be >= 1")
        if self.value < 0 or self.value >> self.length:
            raise ValueError("value does not fit in length")

    @classmethod
    def from_bits(cls, bits: Sequence[int] | str) -> "BitVector":
        if isinstance(bits, str):
            bits = [int(ch) for ch in bits]
        return cls(len(bits), _bits_to_int(bits))

    @property
    def bits(self) -> list[int]:
        return _int_to_bits(self.value, self.length)

    @property
    def weight(self) -> int:
        return bin(self.value).count("1")

    def __add__(self, other: "BitVector") -> "BitVector":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.value ^ other.value)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


class BitMatrix:
    """Immutable m x n matrix over GF(2).

    Zero-row matrices are allowed (a null space may be trivial); so are
    zero-column ones, which only arise as the empty factor of a product.
    """

    __slots__ = ("_a", "_rank")

    def __init__(self, entries):
        a = np.array(entries, dtype=np.uint8)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError("BitMatrix needs a 2-d array")
        if np.any(a > 1):
            raise ValueError("entries must be 0 or 1")
        if a.shape[1] > MAX_LENGTH:
            raise ValueError(f"block length {a.shape[1]} exceeds {MAX_LENGTH}")
        a.setflags(write=False)
        self._a = a
        self._rank = None

    @classmethod
    def zeros(cls, m: int, n: int) -> "BitMatrix":
        return cls(np.zeros((m, n), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_rows(cls, rows: Sequence[str | Sequence[int]]) -> "BitMatrix":
        return cls([[int(ch) for ch in r] for r in rows])

    @classmethod
    def from_columns(cls, columns: Sequence[int], m: int) -> "BitMatrix":
        """Build from integer column values (first row = most significant bit)."""
        a = np.zeros((m, len(columns)), dtype=np.uint8)
        for j, c in enumerate(columns):
            a[:, j] = _int_to_bits(c, m)
        return cls(a)

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def m(self) -> int:
        return self._a.shape[0]

    @property
    def n(self) -> int:
        return self._a.shape[1]

    def row_ints(self) -> list[int]:
        return [_bits_to_int(r) for r in self._a]

    def column_ints(self) -> list[int]:
        return [_bits_to_int(c) for c in self._a.T]

    def rows_text(self) -> list[str]:
        return ["".join(map(str, r)) for r in self._a]

    def submatrix(self, rows=None, cols=None) -> "BitMatrix":
        a = self._a
        if rows is not None:
            a = a[list(rows), :]
        if cols is not None:
            a = a[:, list(cols)]
        return BitMatrix(a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash((self.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows_text()!r})"


def _echelon(rows: list[int], n: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of int-packed rows of width n.

    Returns (nonzero reduced rows, pivot column indices).
    """
    work = [r for r in rows if r]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        bit = 1 << (n - 1 - col)
        pivot = next((k for k in range(r, len(work)) if work[k] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for k in range(len(work)):
            if k != r and work[k] & bit:
                work[k] ^= work[r]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(M: BitMatrix) -> int:
    if M._rank is None:
        M._rank = len(_echelon(M.row_ints(), M.n)[1])
    return M._rank


def independent_rows(M: BitMatrix) -> list[int]:
    """Indices of the first maximal independent subset of rows, in order."""
    basis: dict[int, int] = {}  # leading bit -> reduced row
    chosen = []
    for idx, row in enumerate(M.row_ints()):
        x = row
        while x:
            lead = x.bit_length() - 1
            if lead not in basis:
                basis[lead] = x
                chosen.append(idx)
                break
            x ^= basis[lead]
    return chosen


def dual_basis(G: BitMatrix) -> BitMatrix:
    """Basis of the null space {y : G y = 0} as rows of a matrix."""
    n = G.n
    reduced, pivots = _echelon(G.row_ints(), n)
    pivot_set = set(pivots)
    out = []
    for free in range(n):
        if free in pivot_set:
            continue
        y = [0] * n
        y[free] = 1
        fbit = 1 << (n - 1 - free)
        for row, pc in zip(reduced, pivots):
            if row & fbit:
                y[pc] = 1
        out.append(y)
    if not out:
        return BitMatrix.zeros(0, n)
    return BitMatrix(out)


def left_kernel(M: BitMatrix) -> BitMatrix:
    """Basis of {x : x M = 0}, i.e. the null space of the transpose."""
    return dual_basis(BitMatrix(M.array.T))


def column_multiset(G: BitMatrix) -> list[tuple[BitVector, int]]:
    """Distinct columns with multiplicities, sorted lexicographically."""
    if G.m == 0:
        return []
    counts = Counter(G.column_ints())
    return [(BitVector(G.m, v), counts[v]) for v in sorted(counts)]


def span_member(rows: BitMatrix, x: BitVector | Sequence[int] | str) -> bool:
    if not isinstance(x, BitVector):
        x = BitVector.from_bits(x)
    if x.length != rows.n:
        raise ValueError(f"vector length {x.length} != matrix width {rows.n}")
    if x.value == 0:
        return True
    reduced, _ = _echelon(rows.row_ints(), rows.n)
    v = x.value
    for r in reduced:
        if v & (1 << (r.bit_length() - 1)):
            v ^= r
    return v == 0


def matmul(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    if A.n != B.m:
        raise ValueError("inner dimensions differ")
    prod = A.array.astype(np.int64) @ B.array.astype(np.int64)
    return BitMatrix((prod & 1).astype(np.uint8))


def parse_matrix(text: str) -> BitMatrix:
    """Parse the one-row-per-line '0'/'1' text format.

    Blank lines and lines starting with '#' are skipped.
    """
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        bad = next((ch for ch in line if ch not in "01"), None)
        if bad is not None:
            raise ParseError(f"illegal character {bad!r}", lineno)
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise ParseError(f"row has length {len(line)}, expected {width}", lineno)
        rows.append([int(ch) for ch in line])
    if not rows:
        raise ParseError("no matrix rows found", max(1, text.count("\n")))
    return BitMatrix(rows)


def format_matrix(M: BitMatrix) -> str:
    return "".join(row + "\n" for row in M.rows_text())
