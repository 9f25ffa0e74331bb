from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sfkit import snf


def det(M):
    n = len(M)
    if n == 0:
        return 1
    A = [[Fraction(x) for x in row] for row in M]
    sign = 1
    for j in range(n):
        piv = next((i for i in range(j, n) if A[i][j] != 0), None)
        if piv is None:
            return 0
        if piv != j:
            A[j], A[piv] = A[piv], A[j]
            sign = -sign
        for i in range(j + 1, n):
            f = A[i][j] / A[j][j]
            A[i] = [x - f * y for x, y in zip(A[i], A[j])]
    out = Fraction(sign)
    for i in range(n):
        out *= A[i][i]
    return out


small_matrix = st.lists(
    st.lists(st.integers(-6, 6), min_size=1, max_size=4),
    min_size=1,
    max_size=4,
).filter(lambda m: len({len(r) for r in m}) == 1)


@settings(max_examples=60, deadline=None)
@given(small_matrix)
def test_snf_factorization(M):
    res = snf.smith_normal_form(M)
    assert snf.mat_mul(snf.mat_mul(res.U, M), res.V) == res.D
    assert abs(det(res.U)) == 1
    assert abs(det(res.V)) == 1
    # divisibility chain
    for a, b in zip(res.diag, res.diag[1:]):
        assert b % a == 0
    # off-diagonal zero
    for i, row in enumerate(res.D):
        for j, v in enumerate(row):
            if i != j:
                assert v == 0


@settings(max_examples=60, deadline=None)
@given(small_matrix, st.lists(st.integers(-4, 4), min_size=1, max_size=4))
def test_solve_integer_sound(M, x):
    cols = len(M[0])
    x = (x * cols)[:cols]
    b = snf.mat_vec(M, x)
    sol = snf.solve_integer(M, b)
    assert sol is not None
    assert snf.mat_vec(M, sol) == b


@settings(max_examples=60, deadline=None)
@given(small_matrix)
def test_kernel_basis_in_kernel(M):
    for v in snf.kernel_basis(M):
        assert all(c == 0 for c in snf.mat_vec(M, v))


def test_solve_integer_unsolvable():
    assert snf.solve_integer([[2]], [1]) is None
    assert snf.solve_integer([[2, 0], [0, 3]], [1, 1]) is None
    assert snf.solve_integer([[1, 1]], [5]) is not None


def test_kernel_rank():
    # rank-1 matrix on 3 columns has kernel rank 2
    basis = snf.kernel_basis([[1, 2, 3]])
    assert len(basis) == 2


def test_cokernel_groups():
    g = snf.cokernel([[2, 0], [0, 3]], 2)
    assert sorted(g.moduli) in ([2, 3], [6])  # Z/2 + Z/3 = Z/6 in SNF
    assert g.describe() == "Z/6"
    g2 = snf.cokernel([], 2)
    assert g2.describe() == "Z + Z"
    g3 = snf.cokernel([[1, 0], [0, 1]], 2)
    assert g3.is_trivial


def test_cokernel_projection_kills_relations():
    rel = [3, 6]
    g = snf.cokernel([rel], 2)
    assert g.project(rel) == g.zero()
    assert g.project([6, 12]) == g.zero()


def test_rank_over_field():
    assert snf.rank_over_field([[2, 4], [1, 2]]) == 1
    assert snf.rank_over_field([[2, 4], [1, 2]], p=3) == 1
    assert snf.rank_over_field([[2, 0], [0, 2]], p=2) == 0
    assert snf.rank_over_field([[1, 0], [0, 1]]) == 2
