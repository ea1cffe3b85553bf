from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from acmpoints.linalg import GF, QQ, PrimeField, Subspace, field_from_name, in_span, is_prime, kernel_basis, rank, rref
from oracles import mat_vec, naive_rank

small = st.integers(-6, 6)


def matrices(max_rows=6, max_cols=6, elems=small):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(elems, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_is_prime_matches_trial_division():
    def slow(n):
        return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))

    assert [n for n in range(500) if is_prime(n)] == [n for n in range(500) if slow(n)]
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)


def test_field_parsing():
    assert field_from_name("QQ") is QQ
    assert field_from_name("GF(7)") == GF(7) == field_from_name("7")
    with pytest.raises(ValueError):
        field_from_name("GF(9)")
    with pytest.raises(ValueError):
        field_from_name("reals")


def test_prime_field_converts_fractions():
    f = GF(7)
    assert f(Fraction(1, 3)) == 5
    assert f("2/3") == 3
    assert f(-1) == 6


def test_rank_against_oracle_on_100_random_matrices():
    rng = random.Random(11)
    for _ in range(100):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        # low-rank products exercise dependent rows
        k = rng.randint(1, min(r, c))
        a = [[rng.randint(-4, 4) for _ in range(k)] for _ in range(r)]
        b = [[rng.randint(-4, 4) for _ in range(c)] for _ in range(k)]
        m = [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(c)] for i in range(r)]
        assert rank(m) == naive_rank(m)
        assert rank(m, GF(101)) == naive_rank(m, 101)
        ker = kernel_basis(m, QQ)
        assert len(ker) == c - naive_rank(m)
        assert all(not any(mat_vec(m, v)) for v in ker)
        assert naive_rank(ker) == len(ker) if ker else True


@given(matrices(elems=st.fractions(min_value=-3, max_value=3, max_denominator=4)))
def test_rank_with_fractions(m):
    assert rank(m) == naive_rank(m)


@given(matrices())
def test_kernel_mod_p(m):
    p = 13
    ker = kernel_basis(m, GF(p))
    assert len(ker) == len(m[0]) - naive_rank(m, p)
    assert all(not any(mat_vec(m, v, p)) for v in ker)


@given(matrices())
def test_rref_shape(m):
    red, piv = rref(m)
    assert len(piv) == naive_rank(m) == len(red)
    for row, c in zip(red, piv):
        assert row[c] == 1
        assert all(r2[c] == 0 for r2 in red if r2 is not row)


@given(matrices(), st.sampled_from([QQ, GF(5), GF(65521)]))
def test_subspace_dim_and_membership(m, field):
    p = getattr(field, "p", None)
    s = Subspace(len(m[0]), field, m)
    assert s.dim == naive_rank(m, p)
    for row in m:
        assert s.contains(row)
    assert naive_rank(s.basis, p) == s.dim


@given(matrices(), matrices())
def test_subspace_sum_and_intersection(a, b):
    n = min(len(a[0]), len(b[0]))
    a = [r[:n] for r in a]
    b = [r[:n] for r in b]
    sa, sb = Subspace(n, QQ, a), Subspace(n, QQ, b)
    total = naive_rank(a + b)
    assert (sa + sb).dim == total
    assert sa.intersection_dim(sb) == naive_rank(a) + naive_rank(b) - total


@given(matrices(), st.lists(st.integers(1, 5), min_size=6, max_size=6))
def test_preimage_under_diagonal(m, diag):
    n = len(m[0])
    d = diag[:n]
    s = Subspace(n, QQ, m)
    pre = s.preimage_under_diagonal(d)
    assert pre.dim == s.dim
    for v in pre.basis:
        assert s.contains([a * b for a, b in zip(v, d)])


def test_in_span():
    basis = [[1, 0, 1], [0, 1, 1]]
    assert in_span([2, 3, 5], basis)
    assert not in_span([0, 0, 1], basis)
    assert in_span([0, 0, 0], [])
    assert not in_span([1, 0, 0], [])


def test_full_subspace_and_rejects_non_prime():
    s = Subspace.full(4)
    assert s.is_full and s.contains([3, 1, 4, 1])
    assert not s.add([1, 2, 3, 4])
    with pytest.raises(ValueError):
        PrimeField(15)
