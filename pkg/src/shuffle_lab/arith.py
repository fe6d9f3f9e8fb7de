"""Exact integer helpers: valuations, binomials, Moebius, necklace counts."""

from __future__ import annotations

import math
from functools import reduce

#: Stand-in for an infinite alphabet size in :func:`necklace_phi`.
INFINITY = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def p_adic_valuation(n: int, p: int) -> int:
    """Largest ``e`` with ``p**e`` dividing ``n``."""
    _require_prime(p)
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def prime_power_decompose(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k`` and ``k >= 1``; raise otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power > 1")
    p = 2
    while q % p:
        p += 1
    k = p_adic_valuation(q, p)
    if p**k != q:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def is_p_power(m: int, p: int) -> bool:
    """True iff ``m == p**j`` for some ``j >= 0``."""
    if m < 1:
        return False
    while m % p == 0:
        m //= p
    return m == 1


def floor_log(t: int, p: int) -> int:
    """``floor(log_p t)`` computed in integers."""
    if t < 1:
        raise ValueError("t must be positive")
    e = 0
    while p ** (e + 1) <= t:
        e += 1
    return e


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def moebius(d: int) -> int:
    if d < 1:
        raise ValueError("moebius is defined for d >= 1")
    fac = factorize(d)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def necklace_phi(s: int, m):
    """Witt's necklace function: the number of Lyndon words of length ``s``
    over ``m`` letters. ``m`` may be :data:`INFINITY`."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if m == INFINITY:
        return INFINITY
    total = sum(moebius(d) * m ** (s // d) for d in divisors(s))
    if total % s:
        raise ArithmeticError(f"Moebius sum {total} not divisible by {s}")
    return total // s


def h_gcd(s: int) -> int:
    """gcd of the interior binomial coefficients C(s, 1), ..., C(s, s-1)."""
    if s < 2:
        raise ValueError("h_gcd needs s >= 2")
    return reduce(math.gcd, (math.comb(s, i) for i in range(1, s)))
