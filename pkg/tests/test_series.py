from fractions import Fraction as F

import pytest

from hhodge.cyclo import Cyclotomic, root_of_unity
from hhodge.series import (
    RationalPolynomial,
    TruncSeries,
    bernoulli_numbers,
    bernoulli_polynomial,
    delta_bernoulli,
    f_r_at_one_series,
    f_r_eval_at_root,
    frk_series,
    frk_shifted_series,
    if_bivariate,
    iif_series,
)


def test_bernoulli_polynomial_displays():
    assert bernoulli_polynomial(1) == RationalPolynomial([F(-1, 2), 1])
    assert bernoulli_polynomial(2) == RationalPolynomial([F(1, 6), -1, 1])
    assert bernoulli_polynomial(3) == RationalPolynomial([0, F(1, 2), F(-3, 2), 1])


@pytest.mark.parametrize("n", range(1, 11))
def test_bernoulli_difference_equation(n):
    B = bernoulli_polynomial(n)
    for z in (F(0), F(1, 2), F(-2, 3), F(5), F(7, 4)):
        assert B(z + 1) - B(z) == n * z ** (n - 1)


def test_odd_bernoulli_numbers_vanish():
    B = bernoulli_numbers(11)
    assert all(B[n] == 0 for n in range(3, 12, 2))


def test_delta_bernoulli_examples():
    assert delta_bernoulli(1, F(3, 7)) == F(3, 7)
    assert delta_bernoulli(2, F(1, 2)) == F(-1, 8)
    assert delta_bernoulli(2, F(1, 3)) == F(-1, 9) == delta_bernoulli(2, F(2, 3))


@pytest.mark.parametrize("n", range(1, 11))
def test_delta_bernoulli_reflection(n):
    for r in range(1, 9):
        for k in range(r):
            x = F(k, r)
            lhs = delta_bernoulli(n, 1 - x) + (-1) ** (n + 1) * delta_bernoulli(n, x)
            assert lhs == (1 if n == 1 else 0)


@pytest.mark.parametrize("r", range(1, 13))
def test_bernoulli_sum(r):
    for s in range(0, 11):
        B = bernoulli_polynomial(s)
        assert sum(B(F(k, r)) for k in range(r)) == B(0) * F(r) ** (1 - s)


def test_frk_series_displayed_coefficients():
    for r in range(1, 9):
        for k in range(r):
            s = frk_series(r, k, 3)
            kk, rr = F(k), F(r)
            assert s.coefficient(0) == kk / rr
            assert s.coefficient(1) == kk**2 / (2 * rr**2) - kk / (2 * rr)
            assert s.coefficient(2) == (kk**3 / (3 * rr**3) - kk**2 / (2 * rr**2) + kk / (6 * rr)) / 2
            assert s.coefficient(3) == (kk**4 / (4 * rr**4) - kk**3 / (2 * rr**3) + kk**2 / (4 * rr**2)) / 6


def test_frk_series_2_1_quadratic_vanishes():
    assert frk_series(2, 1, 4).coefficient(2) == 0


@pytest.mark.parametrize("r", range(2, 9))
def test_complementarity(r):
    # F_{r,k}(x) + F*_{r,r-k}(x) = 1 at the t-series level: flip the sign of t
    for k in range(1, r):
        a = frk_series(r, k, 6)
        b = frk_series(r, r - k, 6)
        flipped = TruncSeries(("t",), 6, {e: c * (-1) ** e[0] for e, c in b.coeffs.items()})
        total = a + flipped
        assert total.coeffs == {(0,): F(1)}


def test_f_r_at_one_displayed_coefficients():
    for r in range(1, 9):
        s = f_r_at_one_series(r, 2)
        assert s.coefficient(0) == F(r - 1, 2)
        assert s.coefficient(1) == -F(r * r - 1, 12)
        assert s.coefficient(2) == F(r * r - 1, 24)


@pytest.mark.parametrize("r", range(1, 9))
def test_f_r_at_one_is_sum_of_frk(r):
    total = TruncSeries(("x-1",), 4)
    for k in range(r):
        total = total + frk_shifted_series(r, k, 4)
    assert total == f_r_at_one_series(r, 4)


def _compose_t_series_with_r_log(series_t: TruncSeries, r: int, order: int) -> TruncSeries:
    # substitute t = r log(1+u) into a t-series, truncating at the given order
    log_coeffs = {(i,): F(r) * F((-1) ** (i + 1), i) for i in range(1, order + 1)}
    log_series = TruncSeries(("x-1",), order, log_coeffs)
    out = TruncSeries(("x-1",), order)
    power = TruncSeries(("x-1",), order, {(0,): F(1)})
    for j in range(order + 1):
        c = series_t.coefficient(j)
        if c:
            out = out + power.scale(c)
        power = power * log_series
    return out


@pytest.mark.parametrize("r", range(1, 7))
def test_frk_t_series_substitution_matches_shifted(r):
    # F_{r,k} as a series in t with t = r log x agrees with the (x-1) expansion
    for k in range(r):
        composed = _compose_t_series_with_r_log(frk_series(r, k, 4), r, 4)
        assert composed == frk_shifted_series(r, k, 4)


@pytest.mark.parametrize("r", range(1, 7))
def test_f_r_at_one_substitution_cross_check(r):
    total_t = TruncSeries(("t",), 4)
    for k in range(r):
        total_t = total_t + frk_series(r, k, 4)
    assert _compose_t_series_with_r_log(total_t, r, 4) == f_r_at_one_series(r, 4)


def _compose_with_inverse_shift(series_u: TruncSeries, order: int) -> TruncSeries:
    # substitute u -> 1/(1+u) - 1 = -u + u^2 - u^3 + ..., i.e. x -> x^{-1}
    inv = TruncSeries(
        ("x-1",), order, {(i,): F((-1) ** i) for i in range(1, order + 1)}
    )
    out = TruncSeries(("x-1",), order)
    power = TruncSeries(("x-1",), order, {(0,): F(1)})
    for j in range(order + 1):
        c = series_u.coefficient(j)
        if c:
            out = out + power.scale(c)
        power = power * inv
    return out


@pytest.mark.parametrize("r", range(2, 7))
def test_dual_function_laurent_identity(r):
    # F*_r(x, y) = H_r(1/y) - 1 - y^{-r} F_r(x, y), Laurent coefficient in y:
    # F_{r,j}(1/x) = [j >= 1] - F_{r,r-j}(x) for j = 1..r-1, and 0 at j = 0
    for j in range(r):
        lhs = _compose_with_inverse_shift(frk_shifted_series(r, j, 4), 4)
        rhs = TruncSeries(("x-1",), 4, {(0,): F(1)}) if j else TruncSeries(("x-1",), 4)
        if j:
            rhs = rhs - frk_shifted_series(r, r - j, 4)
        assert lhs == rhs, (r, j)


def test_iif_zero_and_constant():
    for r in range(2, 9):
        assert iif_series(r, 0, 3).is_zero()
        for k in range(1, r):
            assert iif_series(r, k, 3).coefficient(0, 0) == F(k * (k - r), 2 * r)
    assert iif_series(2, 1, 2).coefficient(0, 0) == F(-1, 4)


def _iif_multiply_back_oracle(r, k, order):
    """The closed form: IIF * (x+x- - 1) must equal the displayed numerator."""
    V = ("x+-1", "x--1")
    den = TruncSeries(V, order + 1, {(1, 0): 1, (0, 1): 1, (1, 1): 1})
    num = {}
    for (j,), c in frk_shifted_series(r, k, order + 1).coeffs.items():
        num[(j, 0)] = num.get((j, 0), 0) + c
    if k == 0:
        num[(0, 0)] = num.get((0, 0), 0) + 1
    else:
        for (j,), c in frk_shifted_series(r, r - k, order + 1).coeffs.items():
            num[(0, j)] = num.get((0, j), 0) + c
    num[(0, 0)] = num.get((0, 0), 0) - 1
    return den, TruncSeries(V, order + 1, num)


@pytest.mark.parametrize("r", range(2, 9))
def test_iif_matches_closed_form(r):
    for k in range(r):
        q = iif_series(r, k, 5)
        den, num = _iif_multiply_back_oracle(r, k, 4)
        prod = TruncSeries(den.variables, 5, q.coeffs) * den
        for key in set(prod.coeffs) | set(num.coeffs):
            if sum(key) <= 4:
                assert prod.coefficient(*key) == num.coefficient(*key), (r, k, key)


@pytest.mark.parametrize("r", range(2, 9))
def test_iif_linear_coefficients(r):
    # first-order terms of the closed form; the minus-side coefficient is
    # k(k-r)(r-2k-3)/12r and the plus side is its k -> r-k mirror
    for k in range(1, r):
        s = iif_series(r, k, 1)
        kk, rr = F(k), F(r)
        assert s.coefficient(0, 1) == kk * (kk - rr) * (rr - 2 * kk - 3) / (12 * rr)
        km = rr - kk
        assert s.coefficient(1, 0) == km * (km - rr) * (rr - 2 * km - 3) / (12 * rr)


@pytest.mark.parametrize("r", range(2, 9))
def test_if_at_one_displayed_expansion(r):
    total = TruncSeries(("x+-1", "x--1"), 2)
    for k in range(r):
        total = total + iif_series(r, k, 2)
    assert total.coefficient(0, 0) == F(1 - r * r, 12)
    assert total.coefficient(1, 0) == F(r * r - 1, 24) == total.coefficient(0, 1)
    assert total.coefficient(2, 0) == F(r**4 - 20 * r * r + 19, 720) == total.coefficient(0, 2)
    assert total.coefficient(1, 1) == -F((r + 1) * (r - 1) * (r * r + 11), 720)


def test_if_bivariate_laurent_range():
    parts = if_bivariate(3, 2)
    assert set(parts) == {-2, -1, 0, 1, 2}
    assert parts[0].is_zero()


def _geometric_oracle(r, l, order):
    # expansion of 1/(x zeta - 1) about x = 1 by the geometric series
    zeta = root_of_unity(F(l, r))
    lead = (zeta - 1).inverse()
    ratio = zeta * lead * (-1)
    coeffs, term = {}, lead
    for j in range(order + 1):
        coeffs[(j,)] = term
        term = term * ratio
    return TruncSeries(("x-1",), order, coeffs)


@pytest.mark.parametrize("r", range(2, 9))
def test_f_r_eval_at_root(r):
    for l in range(1, r):
        assert f_r_eval_at_root(r, l, 4) == _geometric_oracle(r, l, 4)


def test_f_r_eval_at_root_r2_explicit():
    # F_2(x, -1) = -1/(x + 1)
    s = f_r_eval_at_root(2, 1, 4)
    assert [s.coefficient(j) for j in range(5)] == [
        F(-1, 2), F(1, 4), F(-1, 8), F(1, 16), F(-1, 32)
    ]


def test_f_r_eval_constant_term():
    for r in range(2, 7):
        for l in range(1, r):
            zeta = root_of_unity(F(l, r))
            c0 = f_r_eval_at_root(r, l, 0).coefficient(0)
            if not isinstance(c0, Cyclotomic):
                c0 = Cyclotomic.rational(c0)
            assert c0 == (zeta - 1).inverse()


def test_truncation_is_enforced():
    s = frk_series(3, 1, 2)
    assert all(sum(e) <= 2 for e in s.coeffs)
    with pytest.raises(ValueError):
        TruncSeries(("a", "b", "c"), 2)
