import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sl2act.rational_linalg import (RatMatrix, det, format_rational, hstack, image_basis, kernel_basis,
                                    matrix_from_json, matrix_to_json, parse_rational, rank, rref,
                                    solve_linear, to_rational, vstack)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=6):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = [[draw(small) for _ in range(c)] for _ in range(r)]
    return RatMatrix(rows, rows=r, cols=c)


def leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inv % 2 else 1)
        for i, p in enumerate(perm):
            term *= rows[i][p]
        total += term
    return total


def minor_rank(M):
    """Largest size of a nonzero minor; independent of elimination."""
    for k in range(min(M.rows, M.cols), 0, -1):
        for rs in itertools.combinations(range(M.rows), k):
            for cs in itertools.combinations(range(M.cols), k):
                if leibniz_det([[M[i, j] for j in cs] for i in rs]):
                    return k
    return 0


def test_rref_identity():
    R, piv = rref(RatMatrix.identity(2))
    assert R == RatMatrix.identity(2)
    assert piv == [0, 1]


def test_rref_rank_one():
    R, piv = rref(RatMatrix([[2, 4], [1, 2]]))
    assert R == RatMatrix([[1, 2], [0, 0]])
    assert piv == [0]


@pytest.mark.parametrize("seed", range(8))
def test_rank_matches_minor_oracle(seed):
    rng = random.Random(seed)
    rank_target = rng.randint(0, 5)
    # build a 5x7 matrix of prescribed rank as a product, then compare
    A = RatMatrix([[rng.randint(-3, 3) for _ in range(rank_target)] for _ in range(5)], rows=5, cols=rank_target)
    B = RatMatrix([[rng.randint(-3, 3) for _ in range(7)] for _ in range(rank_target)], rows=rank_target, cols=7)
    M = A @ B
    assert rank(M) == minor_rank(M)
    assert rank(rref(M)[0]) == rank(M)


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rref_is_idempotent(M):
    R, piv = rref(M)
    R2, piv2 = rref(R)
    assert R2 == R and piv2 == piv


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(M):
    K = kernel_basis(M)
    assert rank(M) + len(K) == M.cols
    assert rank(M) <= min(M.rows, M.cols)
    for v in K:
        assert all(x == 0 for x in M.apply(v))
    if K:
        assert rank(RatMatrix(K)) == len(K)


@given(matrices(max_rows=4, max_cols=4))
@settings(max_examples=60, deadline=None)
def test_image_basis_spans_columns(M):
    basis = image_basis(M)
    assert len(basis) == rank(M)
    for j in range(M.cols):
        if basis:
            B = RatMatrix(list(zip(*basis)), rows=M.rows, cols=len(basis))
            assert solve_linear(B, list(M.col(j))) is not None


@given(matrices(max_rows=4, max_cols=4), st.data())
@settings(max_examples=60, deadline=None)
def test_solve_linear_solutions_are_exact(A, data):
    b = [data.draw(small) for _ in range(A.rows)]
    x = solve_linear(A, b)
    if x is not None:
        assert A.apply(x) == b
    else:
        # b outside the image: appending it raises the rank
        aug = hstack([A, RatMatrix.column(b)], rows=A.rows)
        assert rank(aug) == rank(A) + 1


def test_kernel_examples():
    assert len(kernel_basis(RatMatrix.zeros(2, 2))) == 2
    assert kernel_basis(RatMatrix.identity(4)) == []
    (v,) = kernel_basis(RatMatrix([[1, 1]]))
    assert v[0] == -v[1] != 0


def test_solve_examples():
    assert solve_linear(RatMatrix.identity(3), [1, Fraction(2, 3), -4]) == [1, Fraction(2, 3), -4]
    assert solve_linear(RatMatrix([[1, 0], [0, 0]]), [0, 1]) is None
    assert solve_linear(RatMatrix([[2]]), [1]) == [Fraction(1, 2)]


@given(st.integers(1, 4), st.data())
@settings(max_examples=40, deadline=None)
def test_det_is_multiplicative_and_matches_leibniz(n, data):
    A = RatMatrix([[data.draw(small) for _ in range(n)] for _ in range(n)])
    B = RatMatrix([[data.draw(small) for _ in range(n)] for _ in range(n)])
    assert det(A) == leibniz_det(A.tolist())
    assert det(A @ B) == det(A) * det(B)


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_entries_stay_in_lowest_terms(M):
    R, _ = rref(M)
    for row in R:
        for x in row:
            assert isinstance(x, Fraction) and x.denominator > 0
            assert Fraction(x.numerator, x.denominator) == x


@given(matrices())
@settings(max_examples=40, deadline=None)
def test_json_round_trip(M):
    assert matrix_from_json(matrix_to_json(M), M.cols) == M
    assert M.transpose().transpose() == M


def test_rational_strings():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-4, 2)) == "-2"
    assert parse_rational("-3/6") == Fraction(-1, 2)
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_stacking_shapes():
    A = RatMatrix([[1, 2]])
    assert vstack([A, A]).shape == (2, 2)
    assert hstack([A, A]).shape == (1, 4)
    assert (A @ RatMatrix.zeros(2, 0)).shape == (1, 0)
