import itertools
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regbounds.delta_norm import (
    delta,
    delta_ball_volume,
    delta_ball_volume_mc,
    delta_exact,
    delta_float,
    j_matrix,
    j_matrix_identity_check,
    j_minor_square_sum,
    schinzel_bound,
)
from regbounds.errors import InputError

vectors = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=30), min_size=n, max_size=n)
)


def test_examples():
    assert delta([1, -1]) == 1
    assert delta([3, 0, -1]) == 3
    assert delta([1, 1, 1]) == 3
    assert delta_exact([Fraction(1, 2), Fraction(-1, 3)]) == Fraction(1, 2)
    with pytest.raises(InputError):
        delta([])


@given(vectors)
@settings(max_examples=200, deadline=None)
def test_closed_forms_agree(x):
    half = (abs(sum(x)) + sum(abs(v) for v in x)) / 2
    assert delta_exact(x) == half
    assert abs(delta(x) - mpmath.mpf(half.numerator) / half.denominator) <= mpmath.mpf(2) ** -100 * max(1, half)


@given(vectors, vectors, st.fractions(min_value=-5, max_value=5, max_denominator=7))
@settings(max_examples=200, deadline=None)
def test_norm_axioms(x, y, c):
    n = min(len(x), len(y))
    x, y = x[:n], y[:n]
    assert delta_exact([a + b for a, b in zip(x, y)]) <= delta_exact(x) + delta_exact(y)
    assert delta_exact([c * a for a in x]) == abs(c) * delta_exact(x)
    assert (delta_exact(x) == 0) == all(a == 0 for a in x)
    # sandwich between the sup norm and the l1 norm
    assert max(abs(a) for a in x) <= delta_exact(x) <= sum(abs(a) for a in x)


def test_delta_float_matches_rows():
    X = [[1.0, -2.0, 0.5], [0.0, 0.0, 0.0], [3.0, 1.0, -0.25]]
    assert list(delta_float(X)) == [2.0, 0.0, 4.0]


def test_volume_exact_values():
    assert [delta_ball_volume(n) for n in range(1, 6)] == [
        Fraction(2), Fraction(3), Fraction(10, 3), Fraction(35, 12), Fraction(21, 10)
    ]
    for n in range(1, 9):
        assert delta_ball_volume(n) == Fraction(math.factorial(2 * n), math.factorial(n) ** 3)


def test_volume_mc_small_run_is_deterministic():
    a = delta_ball_volume_mc(2, 20000, seed=5)
    b = delta_ball_volume_mc(2, 20000, seed=5)
    assert a == b
    assert abs(a.estimate - 3) <= 4 * a.stderr
    one = delta_ball_volume_mc(1, 1000, seed=5)
    assert one.estimate == 2 and one.stderr == 0


def test_j_matrix_norm_identity():
    # delta(x) = ||J x||_1 for the (N+1) x N matrix J
    J = j_matrix(3)
    for x in itertools.product(range(-2, 3), repeat=3):
        Jx = [sum(J[i][k] * x[k] for k in range(3)) for i in range(4)]
        assert sum(abs(v) for v in Jx) == delta_exact(x)


def test_j_identity_values():
    for n in range(1, 9):
        assert j_minor_square_sum(n) == Fraction(n + 1, 4 ** n)
        assert j_matrix_identity_check(n)


def test_schinzel_equality_cases():
    for A in ([[1, 1], [-1, 1]], [[1, -1], [1, 1]], [[2, 0], [0, 3]]):
        res = schinzel_bound(A)
        assert res.holds and abs(res.det) == res.bound


@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
@settings(max_examples=300, deadline=None)
def test_schinzel_random(A):
    res = schinzel_bound(A)
    assert res.holds
    assert isinstance(res.det, int)


def test_schinzel_decimal_input():
    res = schinzel_bound([["1.5", "0"], ["0", "-2.25"]])
    assert res.holds
    assert abs(abs(res.det) - res.bound) < mpmath.mpf(10) ** -30
    with pytest.raises(InputError):
        schinzel_bound([[1, 2]])
