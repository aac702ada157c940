"""Exact integer and character arithmetic.

Kronecker symbols, the odd quadratic character of an imaginary quadratic
field, Kloosterman sums S(m,n;c) = sum over units v mod c of
e^(2*pi*i*(m*v + n*vbar)/c), Gauss sums and the standard multiplicative
functions.  Everything here is exact integer work except for the final
complex accumulation of exponential sums, which is done in doubles with
the angle reduced mod c in integer arithmetic first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import NotFundamental, NotInvertible

_TWO_PI = 2.0 * math.pi

# Deterministic Miller-Rabin witnesses, valid for n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for the integer sizes used here (< 2**64)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly larger than n."""
    k = n + 1
    if k <= 2:
        return 2
    if k % 2 == 0:
        k += 1
    while not is_prime(k):
        k += 2
    return k


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization [(p, a), ...] by trial division up to sqrt(n).

    All moduli in this artifact stay far below 2**40, so nothing fancier
    is needed.
    """
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: list[tuple[int, int]] = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            a = 0
            while n % d == 0:
                n //= d
                a += 1
            out.append((d, a))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


class MultiplicativeValues(NamedTuple):
    tau: int
    phi: int
    mobius: int


def multiplicative_functions(n: int) -> MultiplicativeValues:
    """Divisor count tau(n), Euler totient phi(n) and Moebius mu(n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    tau = 1
    phi = 1
    mobius = 1
    for p, a in factorize(n):
        tau *= a + 1
        phi *= (p - 1) * p ** (a - 1)
        mobius = 0 if a > 1 else -mobius
    return MultiplicativeValues(tau, phi, mobius)


def divisor_count(n: int) -> int:
    return multiplicative_functions(n).tau


def euler_phi(n: int) -> int:
    return multiplicative_functions(n).phi


def mod_inverse(v: int, c: int) -> int:
    """Inverse of v modulo c, in [0, c).  mod_inverse(1, 1) == 0."""
    if c < 1:
        raise ValueError("modulus must be >= 1")
    try:
        return pow(v, -1, c)
    except ValueError as exc:
        raise NotInvertible(f"{v} is not invertible mod {c}") from exc


def kronecker(delta: int, n: int) -> int:
    """Kronecker symbol (delta | n), defined for all integers.

    Standard extension of the Jacobi symbol: multiplicative in n, with
    (delta | 2) read off delta mod 8 and (delta | -1) the sign character.
    """
    a = delta
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v % 2 == 0:
        k = 1
    else:
        k = 1 if a % 8 in (1, 7) else -1
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    # Jacobi loop on odd positive n.
    a %= n
    while a != 0:
        v = 0
        while a % 2 == 0:
            a //= 2
            v += 1
        if v % 2 == 1 and n % 8 in (3, 5):
            k = -k
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a, n = n % a, a
    return k if n == 1 else 0


def is_fundamental_negative(D: int) -> bool:
    """True when -D is a fundamental imaginary quadratic discriminant.

    Either D = 3 mod 4 and squarefree, or D = 4m with m squarefree and
    m = 1 or 2 mod 4.
    """
    if D < 3:
        return False
    if D % 4 == 3:
        return multiplicative_functions(D).mobius != 0
    if D % 4 == 0:
        m = D // 4
        if m % 4 not in (1, 2):
            return False
        return multiplicative_functions(m).mobius != 0
    return False


@dataclass(frozen=True)
class KloostermanParams:
    """Arguments of S(m, n; c); the modulus must be positive."""

    m: int
    n: int
    c: int

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ValueError("modulus must be >= 1")
        if self.m < 0 or self.n < 0:
            raise ValueError("m and n must be nonnegative")

    def evaluate(self, fast: bool = False) -> float:
        fn = kloosterman_fast if fast else kloosterman_direct
        return fn(self.m, self.n, self.c)


@dataclass(frozen=True)
class QuadraticCharacter:
    """Odd quadratic Dirichlet character of conductor D, with -D fundamental.

    The full period is stored as a table of signed bytes so evaluation
    inside hot series loops is a single indexed load.
    """

    D: int
    table: np.ndarray = field(repr=False, compare=False)

    def __call__(self, n: int) -> int:
        return int(self.table[n % self.D])

    def values(self, n: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at an integer array."""
        return self.table[np.mod(n, self.D)]


def make_character(D: int) -> QuadraticCharacter:
    """Character n -> kronecker(-D, n) of an imaginary quadratic field."""
    if not is_fundamental_negative(D):
        raise NotFundamental(f"-{D} is not a fundamental discriminant")
    table = np.array([kronecker(-D, n) for n in range(D)], dtype=np.int8)
    return QuadraticCharacter(D, table)


def fundamental_discriminants(lo: int, hi: int) -> list[int]:
    """All D in [lo, hi] with -D fundamental."""
    return [D for D in range(lo, hi + 1) if is_fundamental_negative(D)]


@lru_cache(maxsize=4096)
def _units_and_inverses(c: int) -> tuple[np.ndarray, np.ndarray]:
    units = [v for v in range(1, c) if math.gcd(v, c) == 1]
    invs = [pow(v, -1, c) for v in units]
    return np.asarray(units, dtype=np.int64), np.asarray(invs, dtype=np.int64)


def kloosterman_direct(m: int, n: int, c: int) -> float:
    """S(m,n;c) by direct enumeration over the units mod c.

    The sum is real (v -> -v conjugates the terms); the imaginary part of
    the accumulation is discarded.  S(m,n;1) = 1 by the empty-modulus
    convention: the trivial group contributes the single term 1.
    """
    if c < 1:
        raise ValueError("modulus must be >= 1")
    if c == 1:
        return 1.0
    units, invs = _units_and_inverses(c)
    angles = np.mod(m * units + n * invs, c) * (_TWO_PI / c)
    return float(np.cos(angles).sum())


def kloosterman_direct_complex(m: int, n: int, c: int) -> complex:
    """Full complex accumulation of S(m,n;c); used to test realness."""
    if c < 1:
        raise ValueError("modulus must be >= 1")
    if c == 1:
        return 1.0 + 0.0j
    units, invs = _units_and_inverses(c)
    angles = np.mod(m * units + n * invs, c) * (_TWO_PI / c)
    return complex(np.cos(angles).sum(), np.sin(angles).sum())


def _kloosterman_prime_power(m: int, n: int, q: int) -> float:
    """Direct enumeration of S(m,n;q) for q a prime power (helper for the
    factored evaluation)."""
    return kloosterman_direct(m % q, n % q, q)


def kloosterman_fast(m: int, n: int, c: int) -> float:
    """S(m,n;c) via the Chinese-remainder factorization of the sum.

    For coprime q*r = c one has S(m,n;qr) = S(rbar*m, rbar*n; q) *
    S(qbar*m, qbar*n; r) with rbar the inverse of r mod q and vice versa.
    Each prime-power factor falls back to direct enumeration.
    """
    if c < 1:
        raise ValueError("modulus must be >= 1")
    if c == 1:
        return 1.0
    out = 1.0
    for p, a in factorize(c):
        q = p**a
        r = c // q
        rbar = pow(r, -1, q)
        out *= _kloosterman_prime_power(rbar * m % q, rbar * n % q, q)
    return out


def gauss_sum(chi: QuadraticCharacter) -> complex:
    """G(chi) = sum_{n mod D} chi(n) e^(2*pi*i*n/D); |G(chi)| = sqrt(D)."""
    D = chi.D
    n = np.arange(D)
    angles = n * (_TWO_PI / D)
    vals = chi.table.astype(np.float64)
    return complex((vals * np.cos(angles)).sum(), (vals * np.sin(angles)).sum())
