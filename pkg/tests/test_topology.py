import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from coverfit import (
    InputError,
    bounds_report,
    facet_bound,
    index_bounds,
    largest_power_two,
    partial_sum_check,
    poincare_pso4,
    poincare_so,
    poly_multiply,
)
from coverfit.topology import BettiSequence, facet_bound_is_from_exact_index


def naive_convolution(a, b):
    """Independent oracle: schoolbook double loop in pure Python ints."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def sympy_product_coeffs(factors):
    """Second independent oracle: expand via sympy and read coefficients."""
    t = sympy.Symbol("t")
    expr = sympy.prod([sum(c * t**i for i, c in enumerate(f)) for f in factors])
    poly = sympy.Poly(sympy.expand(expr), t)
    return [int(c) for c in reversed(poly.all_coeffs())]


@pytest.mark.parametrize(
    "two_n,expected",
    [(2, 2), (4, 4), (6, 2), (8, 8), (10, 2), (12, 4), (16, 16), (20, 4)],
)
def test_largest_power_two(two_n, expected):
    assert largest_power_two(two_n) == expected


@pytest.mark.parametrize("bad", [1, 3, 0, -2, 7])
def test_largest_power_two_rejects(bad):
    with pytest.raises(InputError):
        largest_power_two(bad)


@settings(deadline=None)
@given(st.integers(1, 10**6))
def test_largest_power_two_properties(n):
    two_n = 2 * n
    s = largest_power_two(two_n)
    assert two_n % s == 0
    assert s & (s - 1) == 0
    assert (two_n // s) % 2 == 1


def test_index_bounds_so4():
    ib = index_bounds(4)
    assert (ib.s, ib.lower, ib.upper, ib.exact) == (4, 3, 3, 3)


def test_index_bounds_so6():
    ib = index_bounds(6)
    assert (ib.s, ib.lower, ib.upper, ib.exact) == (2, 1, 5, None)


def test_index_bounds_so8():
    ib = index_bounds(8)
    assert (ib.s, ib.lower, ib.upper, ib.exact) == (8, 7, 7, 7)


def test_poincare_so2():
    assert poincare_so(2).coefficients == (1, 1)


def test_poincare_so4_frozen_value():
    # (1+t)(1+t^2)(1+t^3) expanded by hand
    assert poincare_so(4).coefficients == (1, 1, 1, 2, 1, 1, 1)


@pytest.mark.parametrize("two_n", [2, 4, 6, 8])
def test_poincare_so_against_oracles(two_n):
    factors = []
    for i in range(1, two_n):
        f = [0] * (i + 1)
        f[0] = f[i] = 1
        factors.append(f)
    expect = [1]
    for f in factors:
        expect = naive_convolution(expect, f)
    got = list(poincare_so(two_n).coefficients)
    assert got == expect
    assert got == sympy_product_coeffs(factors)


@pytest.mark.parametrize("two_n", [2, 4, 6, 8])
def test_poincare_so_structure(two_n):
    seq = poincare_so(two_n)
    n = two_n // 2
    assert len(seq) == n * (2 * n - 1) + 1  # dim SO(2n) + 1
    assert seq.is_palindromic()
    assert seq.total() == 2 ** (two_n - 1)


def test_poincare_so_out_of_range():
    with pytest.raises(InputError):
        poincare_so(10)
    with pytest.raises(InputError):
        poincare_so(3)


def test_poincare_pso4():
    seq = poincare_pso4()
    assert seq.coefficients == (1, 2, 3, 4, 3, 2, 1)
    assert seq.total() == 16
    assert seq.is_palindromic()
    assert list(seq.coefficients) == naive_convolution([1, 1, 1, 1], [1, 1, 1, 1])


def test_partial_sum_check_pso4_vs_so4():
    report = partial_sum_check(poincare_pso4(), poincare_so(4), upto=3)
    assert [e.equal for e in report] == [True, True, True, False]
    assert (report[3].orbit_betti, report[3].partial_sum) == (4, 5)


def test_partial_sum_check_trivial():
    a = BettiSequence((1, 0, 0), "a")
    report = partial_sum_check(a, a, upto=0)
    assert report[0].equal


def test_partial_sum_check_errors():
    a = BettiSequence((1, 1), "a")
    b = BettiSequence((1, 1, 1), "b")
    with pytest.raises(InputError):
        partial_sum_check(a, b, upto=1)
    with pytest.raises(InputError):
        partial_sum_check(a, a, upto=5)


@pytest.mark.parametrize(
    "dim,expected,from_exact",
    [(2, 6, True), (4, 14, True), (6, 14, False), (8, 30, True)],
)
def test_facet_bound(dim, expected, from_exact):
    assert facet_bound(dim) == expected
    assert facet_bound_is_from_exact_index(dim) == from_exact


def test_facet_bound_rejects_odd():
    with pytest.raises(InputError):
        facet_bound(3)


def test_facet_bound_consistent_with_index():
    assert facet_bound(4) == 2 * 4 + 2 * index_bounds(4).exact


def test_poly_multiply_basics():
    assert poly_multiply([1, 1], [1, 1]) == [1, 2, 1]
    assert poly_multiply([3, 0, 2], [1]) == [3, 0, 2]
    assert poly_multiply([], [1, 2]) == []


def test_poly_multiply_against_naive_oracle():
    rng = np.random.default_rng(0)
    for _ in range(100):
        a = [int(c) for c in rng.integers(-50, 51, rng.integers(1, 12))]
        b = [int(c) for c in rng.integers(-50, 51, rng.integers(1, 12))]
        assert poly_multiply(a, b) == naive_convolution(a, b)


def test_poly_multiply_exact_big_ints():
    a = [10**30, 1]
    assert poly_multiply(a, a) == [10**60, 2 * 10**30, 1]


@settings(deadline=None, max_examples=60)
@given(
    st.lists(st.integers(-9, 9), min_size=1, max_size=6),
    st.lists(st.integers(-9, 9), min_size=1, max_size=6),
    st.lists(st.integers(-9, 9), min_size=1, max_size=6),
)
def test_poly_multiply_commutative_associative(a, b, c):
    assert poly_multiply(a, b) == poly_multiply(b, a)
    assert poly_multiply(poly_multiply(a, b), c) == poly_multiply(a, poly_multiply(b, c))


def test_bounds_report_dim4():
    report = bounds_report(4)
    assert report["dim"] == 4
    assert report["s"] == 4
    assert report["ind_lower"] == 3
    assert report["ind_upper"] == 3
    assert report["ind_exact"] == 3
    assert report["facet_bound"] == 14
    assert report["betti_so"] == [1, 1, 1, 2, 1, 1, 1]
    assert report["betti_pso"] == [1, 2, 3, 4, 3, 2, 1]
    eq = [e["equal"] for e in report["partial_sum_report"]]
    assert eq == [True, True, True, False]


def test_bounds_report_dim6_has_no_exact():
    report = bounds_report(6)
    assert "ind_exact" not in report
    assert "betti_pso" not in report
    assert report["facet_bound"] == 14
    assert report["facet_bound_from_exact_index"] is False
