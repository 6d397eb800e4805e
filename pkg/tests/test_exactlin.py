from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fistab import _fallback, exactlin
from fistab.exactlin import (
    FieldSpec,
    cokernel_projection,
    is_zero,
    nullspace_basis,
    rank,
    rref,
    solve,
)
from oracles import naive_rank

Q = FieldSpec.rationals()
F2 = FieldSpec.prime(2)
FP = FieldSpec.prime()


def test_field_rejects_composite_and_huge():
    with pytest.raises(ValueError):
        FieldSpec.prime(15)
    with pytest.raises(ValueError):
        FieldSpec.prime(2147483647)  # prime, but too large for exact products


def test_rank_examples():
    assert rank(FP.eye(2), FP) == 2
    assert rank(FP.zeros(0, 4), FP) == 0
    assert rank(Q.matrix([[1, 2], [2, 4]]), Q) == 1


def test_nullspace_examples():
    assert nullspace_basis(FP.eye(3), FP).shape == (3, 0)
    assert nullspace_basis(FP.zeros(2, 3), FP).shape == (3, 3)
    ns = nullspace_basis(F2.matrix([[1, 1]]), F2)
    assert ns.shape == (2, 1) and list(ns[:, 0]) == [1, 1]


def test_cokernel_examples():
    assert cokernel_projection(FP.eye(2), FP).shape == (0, 2)
    q = cokernel_projection(FP.zeros(2, 1), FP)
    assert rank(q, FP) == 2 and q.shape == (2, 2)
    m = FP.matrix([[1], [0]])
    q = cokernel_projection(m, FP)
    assert q.shape == (1, 2) and is_zero(FP.mul(q, m)) and rank(q, FP) == 1


def test_solve_examples():
    b = FP.matrix([[3, 1], [4, 1], [5, 9]])
    assert np.array_equal(solve(FP.eye(3), b, FP), b)
    assert solve(FP.zeros(2, 2), FP.matrix([[1], [0]]), FP) is None
    assert solve(Q.matrix([[2]]), Q.matrix([[1]]), Q)[0, 0] == Fraction(1, 2)
    with pytest.raises(ValueError):
        solve(FP.eye(2), FP.zeros(3, 1), FP)


def test_canonical_forms():
    assert FP.canonical(-1) == 32002
    assert Q.canonical(Fraction(-4, 6)) == "-2/3"
    assert Q.canonical(Fraction(4, 2)) == 2


def _mat(draw, field, max_r=7, max_c=7):
    r = draw(st.integers(0, max_r))
    c = draw(st.integers(0, max_c))
    vals = draw(st.lists(st.integers(-3, 3), min_size=r * c, max_size=r * c))
    # a random low-rank factor makes rank deficiency common
    return field.matrix(vals, r, c) if r * c else field.zeros(r, c)


matrices_fp = st.composite(lambda draw: _mat(draw, FP))()
matrices_f3 = st.composite(lambda draw: _mat(draw, FieldSpec.prime(3)))()
matrices_q = st.composite(lambda draw: _mat(draw, Q, 5, 5))()


@given(matrices_fp)
def test_rank_matches_naive_oracle_fp(m):
    assert rank(m, FP) == naive_rank(m.tolist(), FP.p)


@given(matrices_f3)
def test_rank_matches_naive_oracle_small_prime(m):
    assert rank(m, FieldSpec.prime(3)) == naive_rank(m.tolist(), 3)


@given(matrices_q)
def test_rank_matches_naive_oracle_rationals(m):
    assert rank(m, Q) == naive_rank(m.tolist())


@given(st.sampled_from([FP, FieldSpec.prime(3), Q]).flatmap(
    lambda f: st.tuples(st.just(f), st.composite(lambda draw: _mat(draw, f, 6, 6))())))
def test_rank_nullity_and_cokernel(args):
    field, m = args
    k = rank(m, field)
    ns = nullspace_basis(m, field)
    assert ns.shape[1] == m.shape[1] - k
    assert is_zero(field.mul(m, ns))
    assert rank(ns, field) == ns.shape[1]
    q = cokernel_projection(m, field)
    assert q.shape[0] == m.shape[0] - k
    assert is_zero(field.mul(q, m))
    assert rank(q, field) == q.shape[0]


@given(matrices_fp, st.integers(0, 3), st.randoms(use_true_random=False))
def test_solve_round_trip(a, k, rnd):
    x0 = FP.matrix([[rnd.randint(0, 5) for _ in range(k)] for _ in range(a.shape[1])], a.shape[1], k)
    b = FP.mul(a, x0)
    x = solve(a, b, FP)
    assert x is not None and np.array_equal(FP.mul(a, x), b)


@given(matrices_fp)
def test_exact_recomputation(m):
    r1, p1 = rref(m, FP)
    r2, p2 = rref(m, FP)
    assert p1 == p2 and np.array_equal(r1, r2)


@pytest.mark.skipif(exactlin.KERNEL != "cython", reason="compiled kernel not built")
@given(st.integers(1, 40), st.integers(1, 40), st.sampled_from([2, 3, 7, 32003]), st.integers(0, 2**32 - 1))
def test_compiled_kernel_agrees_with_fallback(r, c, p, seed):
    from fistab import _kernels

    rng = np.random.default_rng(seed)
    m = rng.integers(0, p, size=(r, c)).astype(np.int64)
    if r > 2:
        m[-1] = (m[0] + m[1]) % p
    a, b = m.copy(), m.copy()
    pa = list(_kernels.rref_modp(a, p, True))
    pb = list(_fallback.rref_modp(b, p, True))
    assert pa == pb and np.array_equal(a, b)


def test_large_products_stay_exact():
    # k (p-1)^2 must stay below 2^53 for the float path; check against Python ints
    k = 300
    rng = np.random.default_rng(1)
    a = rng.integers(0, FP.p, size=(3, k)).astype(np.int64)
    b = rng.integers(0, FP.p, size=(k, 2)).astype(np.int64)
    got = FP.mul(a, b)
    want = [[sum(int(a[i, t]) * int(b[t, j]) for t in range(k)) % FP.p for j in range(2)] for i in range(3)]
    assert got.tolist() == want


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4), st.data())
def test_rational_product_matches_naive(r, k, c, data):
    ent = st.fractions(min_value=-5, max_value=5, max_denominator=7)
    a = [[data.draw(ent) for _ in range(k)] for _ in range(r)]
    b = [[data.draw(ent) for _ in range(c)] for _ in range(k)]
    got = Q.mul(Q.matrix(a, r, k) if r * k else Q.zeros(r, k), Q.matrix(b, k, c) if k * c else Q.zeros(k, c))
    want = [[sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(c)] for i in range(r)]
    assert got.shape == (r, c) and got.tolist() == want


def test_rational_product_with_huge_entries():
    a = Q.matrix([[Fraction(10**30, 7), 1]])
    b = Q.matrix([[Fraction(3, 10**20)], [Fraction(-1, 2)]])
    assert Q.mul(a, b)[0, 0] == Fraction(3 * 10**10, 7) - Fraction(1, 2)
