import math

import pytest
from hypothesis import given, strategies as st

from shuffle_lab import arith
from shuffle_lab.arith import INFINITY, binomial, h_gcd, moebius, necklace_phi, p_adic_valuation


@pytest.mark.parametrize("n,p,expected", [(12, 2, 2), (7, 7, 1), (5, 3, 0), (-54, 3, 3)])
def test_p_adic_valuation(n, p, expected):
    assert p_adic_valuation(n, p) == expected


def test_p_adic_valuation_errors():
    with pytest.raises(ValueError):
        p_adic_valuation(0, 2)
    with pytest.raises(ValueError):
        p_adic_valuation(8, 4)


def test_binomial_values():
    assert binomial(4, 2) == 6
    assert binomial(4, -1) == 0 and binomial(4, 5) == 0
    # Pascal recurrence, built independently
    row = [1]
    for _ in range(9):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    assert [binomial(9, k) for k in range(1, 9)] == row[1:9] == [9, 36, 84, 126, 126, 84, 36, 9]


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_binomial_prime_power_valuation(p, k):
    for j in range(k + 1):
        assert p_adic_valuation(binomial(p**k, p**j), p) == k - j


def test_moebius():
    assert [moebius(d) for d in (1, 2, 6, 12, 30, 7)] == [1, -1, 1, 0, -1, -1]


def test_moebius_sums_to_zero_over_divisors():
    for n in range(2, 200):
        assert sum(moebius(d) for d in arith.divisors(n)) == 0


@pytest.mark.parametrize("s,m,expected", [(1, 5, 5), (2, 2, 1), (3, 2, 2), (4, 2, 3), (6, 2, 9), (4, 3, 18)])
def test_necklace_phi(s, m, expected):
    assert necklace_phi(s, m) == expected


def test_necklace_phi_infinity():
    assert necklace_phi(3, INFINITY) == INFINITY


@given(st.integers(1, 12), st.integers(1, 6))
def test_necklace_identity(s, m):
    # Σ_{d|s} d·φ_d(m) = m^s, the primitive-necklace decomposition of all words
    assert sum(d * necklace_phi(d, m) for d in arith.divisors(s)) == m**s


@pytest.mark.parametrize("s,expected", [(2, 2), (4, 2), (6, 1), (9, 3), (8, 2), (25, 5)])
def test_h_gcd(s, expected):
    assert h_gcd(s) == expected == math.gcd(*[math.comb(s, i) for i in range(1, s)])


def test_h_gcd_prime_power_criterion():
    for p in (2, 3, 5, 7):
        for s in range(2, 201):
            assert (h_gcd(s) % p == 0) == arith.is_p_power(s, p)


def test_prime_power_decompose():
    assert arith.prime_power_decompose(27) == (3, 3)
    assert arith.prime_power_decompose(2) == (2, 1)
    for bad in (1, 6, 12):
        with pytest.raises(ValueError):
            arith.prime_power_decompose(bad)


def test_floor_log():
    assert [arith.floor_log(t, 3) for t in (1, 2, 3, 8, 9, 26, 27)] == [0, 0, 1, 1, 2, 2, 3]
