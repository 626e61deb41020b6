import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qtorb.zlattice import (
    IntegerMatrix,
    LatticeError,
    hnf,
    kernel_basis,
    quotient_group,
    saturation,
    snf,
)

import oracles

M = IntegerMatrix.from_rows


def matrices(max_dim=6, lo=-9, hi=9):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def test_snf_identity():
    d = snf(IntegerMatrix.identity(2))
    assert d.diagonal == [1, 1]
    assert d.U @ IntegerMatrix.identity(2) @ d.V == d.D


@pytest.mark.parametrize("rows, diag", [
    ([[2, 4], [6, 8]], [2, 4]),
    ([[1, 1], [1, -1]], [1, 2]),
    ([[0, 0], [0, 0]], [0, 0]),
    ([[6]], [6]),
    ([[2, 0, 0], [0, 3, 0]], [1, 6]),
])
def test_snf_examples(rows, diag):
    A = M(rows)
    d = snf(A)
    assert d.diagonal == diag
    assert d.U @ A @ d.V == d.D
    # cross-check the stated oracle: d1 * ... * dk = gcd of k x k minors
    prod = 1
    for k, dk in enumerate(diag, start=1):
        prod *= dk
        assert prod == oracles.gcd_of_minors(rows, k)


def test_snf_degenerate_shapes():
    for A in (IntegerMatrix.zeros(0, 3), IntegerMatrix.zeros(3, 0), M([[0, 0, 0]])):
        d = snf(A)
        assert d.U @ A @ d.V == d.D


@settings(max_examples=250, deadline=None)
@given(matrices())
def test_snf_properties(rows):
    A = M(rows)
    d = snf(A)
    assert d.U @ A @ d.V == d.D
    assert abs(d.U.det()) == 1 and abs(d.V.det()) == 1
    for i in range(d.D.rows):
        for j in range(d.D.cols):
            if i != j:
                assert d.D[i, j] == 0
    diag = d.diagonal
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    r = oracles.rational_rank(rows)
    prod = 1
    for k in range(1, r + 1):
        prod *= diag[k - 1]
        assert prod == oracles.gcd_of_minors(rows, k)
    assert d.rank == r


def test_hnf_examples():
    H, U = hnf(IntegerMatrix.identity(3))
    assert H == IntegerMatrix.identity(3)
    H, U = hnf(M([[2, 0], [0, 2], [2, 2]]))
    assert H.to_rows() == [[2, 0], [0, 2], [0, 0]]
    H, U = hnf(M([[1, 1], [1, -1], [-1, 0]]))
    assert H.to_rows() == [[1, 0], [0, 1], [0, 0]]


def _is_hnf(H):
    lead = -1
    zero_seen = False
    for i in range(H.rows):
        row = H.row(i)
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            zero_seen = True
            continue
        assert not zero_seen, "zero rows must come last"
        p = nz[0]
        assert p > lead
        assert row[p] > 0
        for k in range(i):
            assert 0 <= H[k, p] < row[p]
        lead = p


@settings(max_examples=250, deadline=None)
@given(matrices())
def test_hnf_properties(rows):
    A = M(rows)
    H, U = hnf(A)
    assert U @ A == H
    assert abs(U.det()) == 1
    _is_hnf(H)
    # same lattice: every row of A is an integer combination of H's nonzero rows
    basis = [list(H.row(i)) for i in range(H.rows) if any(H.row(i))]
    for r in rows:
        assert oracles.in_lattice(basis, r)


def test_hnf_is_canonical(rng):
    A = M([[3, 1, 4], [1, 5, 9], [2, 6, 5]])
    H0, _ = hnf(A)
    for _ in range(10):
        from conftest import random_unimodular
        W = M(random_unimodular(3, rng))
        H1, _ = hnf(W @ A)
        assert H1 == H0


@pytest.mark.parametrize("rows, expected", [
    ([[1, 0, -1], [0, 1, -1]], [(1, 1, 1)]),
    ([[1, 1, -1], [1, -1, 0]], [(1, 1, 2)]),
])
def test_kernel_examples(rows, expected):
    K = kernel_basis(M(rows))
    assert K.columns() == expected


def test_kernel_of_identity_is_empty():
    assert kernel_basis(IntegerMatrix.identity(4)).cols == 0


@settings(max_examples=200, deadline=None)
@given(matrices(max_dim=4, lo=-4, hi=4))
def test_kernel_properties(rows):
    A = M(rows)
    K = kernel_basis(A)
    assert K.rows == A.cols
    assert (A @ K) == IntegerMatrix.zeros(A.rows, K.cols)
    assert K.cols == A.cols - oracles.rational_rank(rows)
    if K.cols == 0:
        return
    # saturated: integer kernel vectors in a small box are integer combinations of K
    basis = K.columns()
    for x in itertools.product(range(-2, 3), repeat=A.cols):
        if all(sum(a * b for a, b in zip(r, x)) == 0 for r in rows):
            assert oracles.in_lattice(basis, x)


def test_saturation_examples():
    assert saturation([(2, 0)], 2).columns() == [(1, 0)]
    assert saturation([(1, 1), (1, -1)], 2) == IntegerMatrix.identity(2)
    assert saturation([], 2).cols == 0
    assert saturation([(2, 4, 6), (0, 0, 3)], 3).columns() == [(1, 2, 0), (0, 0, 1)]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=0, max_size=3))
def test_saturation_properties(gens):
    S = saturation(gens, 3)
    r = oracles.rational_rank(gens) if gens else 0
    assert S.cols == r
    again = saturation(S.columns(), 3)
    assert again == S
    # the generators lie in the saturation, and every integer point of the
    # rational span in a small box does too
    basis = S.columns()
    for g in gens:
        assert oracles.in_lattice(basis, g)
    if 0 < r < 3:
        for x in itertools.product(range(-3, 4), repeat=3):
            if oracles.rational_rank(gens + [list(x)]) == r:
                assert oracles.in_lattice(basis, x)


def test_quotient_examples():
    g = quotient_group(IntegerMatrix.identity(2), IntegerMatrix.from_columns([(1, 1), (1, -1)]))
    assert g.invariant_factors == (2,)
    assert g.coset_reps[0] == (0, 0)
    assert len(g.coset_reps) == 2
    g = quotient_group(IntegerMatrix.identity(2), M([[2, 0], [0, 2]]))
    assert g.invariant_factors == (2, 2) and g.order == 4
    g = quotient_group(IntegerMatrix.identity(2), M([[2, 1], [1, 1]]))
    assert g.is_trivial and g.order == 1 and g.coset_reps == ((0, 0),)


def test_quotient_infinite_raises():
    with pytest.raises(LatticeError):
        quotient_group(IntegerMatrix.identity(2), IntegerMatrix.from_columns([(1, 1)]))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2), min_size=2, max_size=2))
def test_quotient_order_is_det(cols):
    d = oracles.det([[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]])
    if d == 0:
        return
    sub = IntegerMatrix.from_columns(cols)
    g = quotient_group(IntegerMatrix.identity(2), sub)
    assert g.order == abs(d)
    assert len(g.coset_reps) == g.order
    assert g.coset_reps[0] == (0, 0)
    # pairwise distinct modulo the sublattice
    for a, b in itertools.combinations(g.coset_reps, 2):
        assert not oracles.in_lattice(cols, [x - y for x, y in zip(a, b)])


def test_quotient_inside_sublattice_ambient():
    # ambient 2Z x Z, sub generated by (4, 0), (0, 3)
    g = quotient_group(M([[2, 0], [0, 1]]), M([[4, 0], [0, 3]]))
    assert g.invariant_factors == (6,)
    for rep in g.coset_reps:
        assert rep[0] % 2 == 0
