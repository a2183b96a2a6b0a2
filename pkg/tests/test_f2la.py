import itertools

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from z2schur.f2la import BitVector, RowBasis, express, intersect, kernel_basis, quotient_dim, to_bitstring

W = 10
vecs = st.lists(st.integers(0, (1 << W) - 1), max_size=12)


def span_bruteforce(rows, width=W):
    out = {0}
    for r in rows:
        out |= {v ^ r for v in out}
    return out


def dot(a, b):
    return (a & b).bit_count() & 1


def test_absorbed_duplicate():
    b = RowBasis(4)
    assert b.add_row(0b0001) is False
    assert b.add_row(0b0001) is True


def test_dependent_rank():
    b = RowBasis(4, [0b01, 0b10, 0b11])
    assert b.rank == 2


def test_kernel_trivial_cases():
    assert kernel_basis([], 5).rank == 5
    assert kernel_basis([1 << i for i in range(4)], 4).rank == 0


def test_intersect_example():
    a = RowBasis(3, [0b001, 0b010])
    b = RowBasis(3, [0b010, 0b100])
    assert intersect([a, b]) == RowBasis(3, [0b010])


def test_random_rank_nullity():
    rng = np.random.default_rng(7)
    for r in range(0, 21, 4):
        left = rng.integers(0, 2, size=(20, r))
        right = rng.integers(0, 2, size=(r, 30))
        mat = (left @ right) % 2
        rows = [int("".join(map(str, row[::-1])), 2) for row in mat]
        rb = RowBasis(30, rows)
        ker = kernel_basis(rb, 30)
        assert ker.rank == 30 - rb.rank
        assert all(dot(x, row) == 0 for x in ker.rows for row in rows)


@given(vecs)
def test_span_matches_bruteforce(rows):
    rb = RowBasis(W, rows)
    span = span_bruteforce(rows)
    assert 1 << rb.rank == len(span)
    assert all((v in rb) == (v in span) for v in range(1 << W))


@given(vecs)
def test_rref_is_canonical(rows):
    a = RowBasis(W, rows)
    b = RowBasis(W, list(reversed(rows)) + [x ^ y for x, y in zip(rows, rows[1:])])
    assert a == b
    assert a.rows == b.rows


@given(vecs)
def test_kernel_is_annihilator(rows):
    ker = kernel_basis(rows, W)
    brute = [x for x in range(1 << W) if all(dot(x, r) == 0 for r in rows)]
    assert 1 << ker.rank == len(brute)
    assert all(x in ker for x in brute)


@settings(max_examples=50)
@given(st.lists(vecs, min_size=1, max_size=3))
def test_intersect_bruteforce(spaces):
    bases = [RowBasis(W, s) for s in spaces]
    got = intersect(bases)
    sets = [span_bruteforce(s) for s in spaces]
    common = set.intersection(*sets)
    assert 1 << got.rank == len(common)
    assert all(v in got for v in common)


@given(vecs, st.integers(0, (1 << W) - 1))
def test_express(rows, v):
    c = express(rows, v, W)
    if v in span_bruteforce(rows):
        acc = 0
        for j, r in enumerate(rows):
            if (c >> j) & 1:
                acc ^= r
        assert acc == v
    else:
        assert c is None


def test_quotient_and_bits():
    assert quotient_dim(5, RowBasis(5, [1, 2])) == 3
    assert to_bitstring(0b101, 4) == "1010"  # bit i at position i


def test_bitvector_xor():
    for a, b in itertools.product(range(8), repeat=2):
        assert (BitVector(3, a) ^ BitVector(3, b)).bits == a ^ b
