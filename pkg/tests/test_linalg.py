from hypothesis import given, settings
from hypothesis import strategies as st

from gbg.linalg import exact_rank, sparse_product_is_zero
from oracles import dense_rank


def test_rank_examples():
    assert exact_rank([]) == 0
    assert exact_rank([{0: 1}, {0: 2}]) == 1
    assert exact_rank([{0: 1, 1: -1}, {1: 1, 2: -1}, {0: 1, 2: -1}]) == 2
    assert exact_rank([{0: 2, 1: 4}, {0: 3, 1: 5}]) == 2


def test_zero_columns_do_not_count():
    assert exact_rank([{}, {3: 0}, {1: 7}]) == 1


def test_sparse_product():
    left = [{0: 1}, {0: 1}]
    assert sparse_product_is_zero(left, [{0: 1, 1: -1}])
    assert not sparse_product_is_zero(left, [{0: 1, 1: 1}])


columns = st.lists(st.dictionaries(st.integers(0, 5), st.integers(-4, 4), max_size=6), max_size=7)


@settings(max_examples=200, deadline=None)
@given(columns)
def test_rank_matches_dense_fraction_elimination(cols):
    assert exact_rank(cols) == dense_rank(cols, 6)


@settings(max_examples=100, deadline=None)
@given(columns, st.integers(-3, 3).filter(bool))
def test_rank_is_scale_invariant(cols, k):
    assert exact_rank([{r: k * v for r, v in c.items()} for c in cols]) == exact_rank(cols)
