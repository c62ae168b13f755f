"""Integer helpers: factorizations, prime parts, primality."""

from __future__ import annotations

from math import gcd, prod


class PrimePowerFactorization(dict):
    """``{prime: exponent}`` for a positive integer; ``value`` rebuilds it."""

    @property
    def value(self) -> int:
        return prod(p**e for p, e in self.items())

    @property
    def primes(self) -> list[int]:
        return sorted(self)

    def part(self, primes) -> int:
        """Product of the full p-parts over ``primes``."""
        return prod(p ** self.get(p, 0) for p in primes)


def factorize(n: int) -> PrimePowerFactorization:
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out = PrimePowerFactorization()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
