from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from sfkit import linprog


def test_feasible_simple():
    # x >= 1, -x >= -3  ->  1 <= x <= 3
    pt = linprog.feasible_point([([1], 1), ([-1], -3)], 1)
    assert pt is not None and 1 <= pt[0] <= 3


def test_infeasible():
    assert linprog.feasible_point([([1], 1), ([-1], 0)], 1) is None


def test_feasible_cone_slice():
    # x, y >= 0, x + y = 1, x - y = 0 -> (1/2, 1/2)
    ineqs = [
        ([1, 0], 0),
        ([0, 1], 0),
        ([1, 1], 1),
        ([-1, -1], -1),
        ([1, -1], 0),
        ([-1, 1], 0),
    ]
    pt = linprog.feasible_point(ineqs, 2)
    assert pt == [Fraction(1, 2), Fraction(1, 2)]


def test_linear_range_bounded():
    # unit square: 0 <= x, y <= 1: range of x + y is [0, 2]
    ineqs = [([1, 0], 0), ([0, 1], 0), ([-1, 0], -1), ([0, -1], -1)]
    assert linprog.linear_range(ineqs, 2, [1, 1]) == (0, 2)


def test_linear_range_unbounded():
    lo, hi = linprog.linear_range([([1], 0)], 1, [1])
    assert lo == 0 and hi is None


def test_linear_range_empty():
    assert linprog.linear_range([([1], 1), ([-1], 0)], 1, [1]) is None


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.tuples(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.integers(-3, 3)),
        min_size=1,
        max_size=5,
    )
)
def test_feasible_point_satisfies_system(ineqs):
    pt = linprog.feasible_point(ineqs, 2)
    if pt is not None:
        for coeffs, rhs in ineqs:
            assert sum(Fraction(c) * x for c, x in zip(coeffs, pt)) >= rhs


def test_integer_scale():
    assert linprog.integer_scale([Fraction(1, 2), Fraction(1, 3)]) == [3, 2]
