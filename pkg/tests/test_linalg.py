from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from cyclokzb.linalg import in_row_span, rank, rref, solve_pivots

F = Fraction


def test_rref_known_matrix():
    rows = [[F(1), F(2), F(3)], [F(2), F(4), F(7)], [F(0), F(1), F(0)]]
    reduced, pivots = rref(rows)
    assert pivots == [0, 1, 2]
    assert reduced == [
        [F(1), F(0), F(0)],
        [F(0), F(1), F(0)],
        [F(0), F(0), F(1)],
    ]
    # input untouched
    assert rows[0] == [F(1), F(2), F(3)]


def test_rank_deficient():
    rows = [[F(1), F(2)], [F(2), F(4)], [F(3), F(6)]]
    assert rank(rows) == 1


def test_col_order_changes_pivots():
    rows = [[F(1), F(1), F(0)]]
    _, p1 = rref(rows, [0, 1, 2])
    _, p2 = rref(rows, [1, 0, 2])
    assert p1 == [0]
    assert p2 == [1]


def test_solve_pivots_simple():
    # x0 + 2 x1 - x2 = 0
    rows = [[F(1), F(2), F(-1)]]
    expr, free = solve_pivots(rows, [0, 1, 2])
    assert free == [1, 2]
    assert expr == {0: {1: F(-2), 2: F(1)}}


def test_solve_pivots_two_pivots():
    # x0 = x2, x1 = -x2 on the nose
    rows = [[F(1), F(0), F(-1)], [F(0), F(1), F(1)]]
    expr, free = solve_pivots(rows, [0, 1, 2])
    assert free == [2]
    assert expr == {0: {2: F(1)}, 1: {2: F(-1)}}


def test_in_row_span():
    rows = [[F(1), F(0), F(1)], [F(0), F(1), F(1)]]
    assert in_row_span(rows, [F(2), F(3), F(5)])
    assert not in_row_span(rows, [F(0), F(0), F(1)])


small_frac = st.fractions(
    min_value=-3, max_value=3, max_denominator=4
)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_frac, min_size=4, max_size=4), min_size=1, max_size=5))
def test_solutions_satisfy_system(rows):
    expr, free = solve_pivots(rows, [0, 1, 2, 3])
    for fc in free:
        x = [F(0)] * 4
        x[fc] = F(1)
        for pc, e in expr.items():
            x[pc] = e.get(fc, F(0))
        for row in rows:
            assert sum(a * b for a, b in zip(row, x)) == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_frac, min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_stable_under_duplication(rows):
    assert rank(rows + [rows[0]]) == rank(rows)
