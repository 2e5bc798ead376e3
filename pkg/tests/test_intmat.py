from itertools import product

import numpy as np
import sympy as sp
from hypothesis import given, settings, strategies as st

from repknot.intmat import (bareiss_det, invariant_factors, kernel_mod, matmul,
                            rank_mod_p, smith_normal_form)

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(lambda m: st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def square(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


@given(square())
@settings(max_examples=80, deadline=None)
def test_bareiss_matches_sympy(M):
    assert bareiss_det(M) == sp.Matrix(M).det()


def test_empty_determinant():
    assert bareiss_det([]) == 1


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_smith_form(M):
    D, U, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(sp.Matrix(U).det()) == 1 and abs(sp.Matrix(V).det()) == 1
    m, n = len(M), len(M[0])
    diag = [D[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j:
                assert D[i][j] == 0
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)
    assert sum(1 for d in diag if d) == sp.Matrix(M).rank()


def test_invariant_factors_example():
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


@given(matrices(3, 3), st.integers(2, 7))
@settings(max_examples=60, deadline=None)
def test_kernel_mod_brute_force(M, n):
    cols = len(M[0])
    brute = sorted(x for x in product(range(n), repeat=cols)
                   if all(sum(a * b for a, b in zip(row, x)) % n == 0 for row in M))
    assert kernel_mod(M, n) == brute


@given(matrices(), st.sampled_from([2, 3, 5]))
@settings(max_examples=60, deadline=None)
def test_rank_mod_p(M, p):
    from sympy import GF
    from sympy.polys.matrices import DomainMatrix
    dm = DomainMatrix([[GF(p)(x) for x in row] for row in M], (len(M), len(M[0])), GF(p))
    assert rank_mod_p(M, p) == dm.rank()
