import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosetcurv import f2
from cosetcurv.errors import ParseError
from cosetcurv.f2 import BitMatrix, BitVector

from oracles import nullspace_bruteforce


def matrices(max_m=5, max_n=7):
    return st.integers(1, max_m).flatmap(
        lambda m: st.integers(1, max_n).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=m, max_size=m
            )
        )
    ).map(BitMatrix)


def test_rank_examples():
    assert f2.rank(BitMatrix.identity(3)) == 3
    assert f2.rank(BitMatrix.zeros(2, 4)) == 0
    hadamard3 = BitMatrix.from_columns(list(range(1, 8)), 3)
    assert f2.rank(hadamard3) == 3


def test_dual_basis_examples():
    assert f2.dual_basis(BitMatrix.from_rows(["11"])).rows_text() == ["11"]
    assert f2.dual_basis(BitMatrix.identity(4)).shape == (0, 4)
    # columns 01, 10, 11; brute force over the 8 vectors leaves only 000 and 111
    G = BitMatrix.from_rows(["011", "101"])
    assert nullspace_bruteforce(G.row_ints(), 3) == [0, 0b111]
    assert f2.dual_basis(G).rows_text() == ["111"]


def test_column_multiset():
    ident = f2.column_multiset(BitMatrix.identity(3))
    assert [(str(v), k) for v, k in ident] == [("001", 1), ("010", 1), ("100", 1)]
    rep = f2.column_multiset(BitMatrix.from_rows(["111", "000", "111"]))
    assert [(str(v), k) for v, k in rep] == [("101", 3)]


def test_span_member():
    assert f2.span_member(BitMatrix.identity(3), "101")
    assert not f2.span_member(BitMatrix.zeros(2, 3), "010")
    assert f2.span_member(BitMatrix.zeros(2, 3), "000")
    assert f2.span_member(BitMatrix.from_rows(["110", "011"]), "101")
    with pytest.raises(ValueError):
        f2.span_member(BitMatrix.identity(3), "10")


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity(G):
    D = f2.dual_basis(G)
    assert f2.rank(G) + D.m == G.n
    assert D.m == 0 or f2.rank(D) == D.m
    # every dual row is orthogonal to every row of G
    assert not np.any((G.array.astype(int) @ D.array.T.astype(int)) % 2)
    assert len(nullspace_bruteforce(G.row_ints(), G.n)) == 2 ** D.m


@settings(max_examples=100, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_rank_invariant_under_row_operations(G, rnd):
    rows = [r.copy() for r in G.array]
    for _ in range(6):
        i, j = rnd.randrange(len(rows)), rnd.randrange(len(rows))
        if i != j:
            rows[i] = rows[i] ^ rows[j]
    rnd.shuffle(rows)
    assert f2.rank(BitMatrix(rows)) == f2.rank(G)


@settings(max_examples=100, deadline=None)
@given(matrices(max_m=4, max_n=6), st.integers(0, 63))
def test_span_member_matches_enumeration(G, x):
    x &= (1 << G.n) - 1
    span = {0}
    for r in G.row_ints():
        span |= {s ^ r for s in span}
    assert f2.span_member(G, BitVector(G.n, x)) == (x in span)


def test_parse_and_format():
    M = f2.parse_matrix("# comment\n10\n\n01\n")
    assert M == BitMatrix.identity(2)
    assert f2.format_matrix(M) == "10\n01\n"


@pytest.mark.parametrize(
    "text, line",
    [("1 0\n", 1), ("10\n011\n", 2), ("", 1), ("# only\n\n", 2), ("10\n1x\n", 2)],
)
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as err:
        f2.parse_matrix(text)
    assert err.value.line == line


def test_bitvector():
    v = BitVector.from_bits("1011")
    assert v.weight == 3 and str(v) == "1011"
    assert str(v + BitVector.from_bits("0011")) == "1000"
    with pytest.raises(ValueError):
        BitVector(0, 0)


def test_independent_rows_picks_first():
    M = BitMatrix.from_rows(["110", "110", "011", "101", "001"])
    assert f2.independent_rows(M) == [0, 2, 4]
