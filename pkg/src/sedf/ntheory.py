"""Small integer helpers (trial division is plenty at desk scale)."""

from __future__ import annotations

from functools import reduce
from math import gcd, isqrt


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for p in range(3, isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, d) with n = p**d, or None."""
    if n < 2:
        return None
    f = factorize(n)
    if len(f) != 1:
        return None
    (p, d), = f.items()
    return p, d


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), xs, 1)


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def euler_phi(n: int) -> int:
    out = n
    for p in factorize(n) if n > 1 else ():
        out -= out // p
    return out
