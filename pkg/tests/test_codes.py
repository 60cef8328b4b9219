from fractions import Fraction
from itertools import combinations

import pytest

from cosetcurv import codes, f2
from cosetcurv.codes import (
    LinearCode,
    direct_product,
    hadamard,
    hadamard_plus_cube,
    ltc_tight_family,
    perfect_3lcc_basic,
    random_code,
)
from cosetcurv.errors import ParseError, PreconditionError
from cosetcurv.f2 import BitMatrix

from oracles import rank_distribution_chain, rank_distribution_enumerated


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_hadamard_shape(m):
    c = hadamard(m)
    assert c.n == 2**m - 1 and c.dim == m
    assert len(set(c.columns)) == c.n and 0 not in c.columns


def test_hadamard_m2_columns():
    assert sorted(hadamard(2).columns) == [0b01, 0b10, 0b11]


def test_hadamard_pair_sums_are_columns():
    c = hadamard(4)
    cols = set(c.columns)
    assert all(a ^ b in cols for a, b in combinations(c.columns, 2))


@pytest.mark.parametrize("m", [1, 13])
def test_hadamard_range(m):
    with pytest.raises(PreconditionError):
        hadamard(m)


def test_direct_product():
    c = direct_product(hadamard(2), hadamard(2))
    assert (c.n, c.dim) == (6, 4)
    g = c.generator.array
    assert not g[:2, 3:].any() and not g[2:, :3].any()
    empty = LinearCode(BitMatrix.zeros(0, 0))
    assert direct_product(hadamard(3), empty).generator == hadamard(3).generator


def test_hadamard_plus_cube():
    c = hadamard_plus_cube(2)
    assert (c.n, c.dim) == (5, 4)
    assert c.generator.rows_text() == ["01100", "10100", "00010", "00001"]
    with pytest.raises(PreconditionError):
        hadamard_plus_cube(11)


def _span_weights(rows):
    return sorted(bin(v).count("1") for v in codes._span(BitMatrix.from_rows(rows)))


def test_ltc_witness_distance_by_enumeration():
    # the four elements of span{11100, 00111}: weights 0, 3, 3, 4
    assert _span_weights(["11100", "00111"]) == [0, 3, 3, 4]
    for (m, k), rows in codes.LTC_WITNESSES.items():
        basis, ok = codes.ltc_witness(m, k)
        assert ok == (min(w for w in _span_weights(rows) if w) >= 3)


def test_ltc_tight_family_4_5():
    basis, ok = codes.ltc_witness(4, 5)
    assert ok
    c = ltc_tight_family(4, 5, basis)
    assert (c.n, c.dim, c.m) == (40, 5, 5)
    # rows independent
    assert f2.rank(c.generator) == c.generator.m
    # dim = k = n / 2m
    assert Fraction(c.n, 2 * 4) == c.dim
    # B_i blocks: k copies of u_i; the first block of I + B_1 is I (u_1 = 0)
    assert c.generator.submatrix(cols=range(5)) == BitMatrix.identity(5)
    assert set(c.columns[20:25]) == {0}


def test_ltc_tight_family_2_2_needs_relaxed_distance():
    basis, ok = codes.ltc_witness(2, 2)
    assert not ok
    with pytest.raises(PreconditionError, match="distance"):
        ltc_tight_family(2, 2, basis)
    c = ltc_tight_family(2, 2, basis, strict=False)
    assert (c.n, c.dim) == (8, 2)


@pytest.mark.parametrize(
    "m, k, rows, match",
    [
        (3, 3, ["111"], "power of 2"),
        (4, 1, ["1"], "k must be"),
        (4, 5, ["11100", "11100"], "dimension"),
        (4, 5, ["11100"], "dimension"),
        (4, 5, ["11000", "00110"], "distance"),
    ],
)
def test_ltc_tight_family_preconditions(m, k, rows, match):
    with pytest.raises(PreconditionError, match=match):
        ltc_tight_family(m, k, BitMatrix.from_rows(rows))


def test_perfect_3lcc_basic():
    c = perfect_3lcc_basic()
    assert (c.n, c.dim) == (4, 3)
    assert c.n % 3 == 1
    for i in range(4):
        others = [c.columns[j] for j in range(4) if j != i]
        assert others[0] ^ others[1] ^ others[2] == c.columns[i]


def test_random_code_deterministic():
    a, b = random_code(3, 5, seed=7), random_code(3, 5, seed=7)
    assert a.generator == b.generator
    one = random_code(1, 1, seed=123)
    assert one.generator.shape == (1, 1)
    assert random_code(6, 6, 1).generator != random_code(6, 6, 2).generator


def test_rank_distribution_formula_matches_enumeration():
    assert rank_distribution_enumerated(3, 4) == rank_distribution_chain(3, 4)


def test_random_rank_distribution():
    expected = rank_distribution_chain(4, 8)
    assert expected[4] == Fraction(63247905, 67108864)
    ranks = [random_code(4, 8, seed).dim for seed in range(100)]
    for r in range(5):
        assert abs(ranks.count(r) / 100 - float(expected.get(r, 0))) <= 0.05


def test_parse_serialize_roundtrip():
    assert codes.parse_code("10\n01\n").generator == BitMatrix.identity(2)
    text = codes.serialize_code(hadamard(2))
    assert text == "011\n101\n"
    assert codes.parse_code(text).generator == hadamard(2).generator
    with pytest.raises(ParseError):
        codes.parse_code("1 0\n")


@pytest.mark.parametrize("seed", range(10))
def test_roundtrip_random(seed):
    c = random_code(1 + seed % 5, 3 + seed, seed)
    assert codes.parse_code(codes.serialize_code(c)).generator == c.generator


def test_construct_strings():
    assert codes.construct("hadamard:3").n == 7
    assert codes.construct("product:2").n == 6
    assert codes.construct("cube:4").dim == 4
    assert codes.construct("counterexample26:3").n == 10
    assert codes.construct("ltc:4:5").n == 40
    assert codes.construct("perfect3lcc").n == 4
    for bad in ("nope:1", "hadamard", "hadamard:x", "ltc:4"):
        with pytest.raises(PreconditionError):
            codes.construct(bad)
