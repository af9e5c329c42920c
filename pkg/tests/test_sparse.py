import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from kgraph.sparse import SparseIntMatrix, flatten, product, rank

small = st.integers(-3, 3)


@st.composite
def matrices(draw, n=None, m=None):
    n = n or draw(st.integers(1, 4))
    m = m or draw(st.integers(1, 4))
    return SparseIntMatrix.from_dense([[draw(small) for _ in range(m)] for _ in range(n)])


@given(st.lists(st.dictionaries(st.integers(0, 6), st.integers(-4, 4), max_size=5), max_size=8))
def test_rank_matches_sympy(vectors):
    rows = [[v.get(c, 0) for c in range(7)] for v in vectors]
    expected = sympy.Matrix(rows).rank() if rows else 0
    assert rank(vectors) == expected


def test_rank_examples():
    assert rank([]) == 0
    assert rank([{0: 2, 1: 4}, {0: 1, 1: 2}]) == 1
    assert rank([{0: 1}, {1: 1}, {0: 1, 1: 1}]) == 2
    assert rank([{5: 0}]) == 0


def test_rank_stays_exact_on_large_entries():
    big = 10**30
    assert rank([{0: big, 1: big + 1}, {0: big + 1, 1: big + 2}]) == 2
    assert rank([{0: big, 1: 2 * big}, {0: 3, 1: 6}]) == 1


@given(matrices(), st.data())
def test_matmul_and_transpose_match_dense(a, data):
    b = data.draw(matrices(n=a.shape[1]))
    A, B = sympy.Matrix(a.to_dense()), sympy.Matrix(b.to_dense())
    assert (a @ b).to_dense() == (A * B).tolist()
    assert a.T.to_dense() == A.T.tolist()
    assert (a @ b).T == b.T @ a.T


@given(matrices(n=3, m=3), matrices(n=3, m=3))
def test_addition_and_negation(a, b):
    assert (a + b) - b == a
    assert a - a == SparseIntMatrix.zeros(3)
    assert -a + a == SparseIntMatrix.zeros(3)
    assert 2 * a == a + a and a * 0 == SparseIntMatrix.zeros(3)


def test_construction_drops_zeros_and_sums_duplicates():
    m = SparseIntMatrix((2, 2), [((0, 0), 1), ((0, 0), -1), ((1, 1), 2)])
    assert m.entries() == {(1, 1): 2}
    assert m.nnz == 1 and not m.is_zero()
    with pytest.raises(IndexError):
        SparseIntMatrix((2, 2), {(2, 0): 1})


def test_helpers():
    m = SparseIntMatrix.from_dense([[1, 2], [0, 3]])
    assert m.without_entry(0, 1).to_dense() == [[1, 0], [0, 3]]
    assert m.without_entry(1, 0) == m
    assert m.restrict_columns([1]).to_dense() == [[0, 2], [0, 3]]
    assert flatten(m) == {(0, 0): 1, (0, 1): 2, (1, 1): 3}
    assert m[1, 1] == 3 and m[1, 0] == 0
    assert product([], 2) == SparseIntMatrix.identity(2)
    assert product([m, m], 2) == m @ m
    assert m.digest() == SparseIntMatrix.from_dense([[1, 2], [0, 3]]).digest()
    assert m.digest() != m.T.digest()
    with pytest.raises(ValueError):
        m @ SparseIntMatrix.zeros(3)
    with pytest.raises(ValueError):
        m + SparseIntMatrix.zeros(3)
