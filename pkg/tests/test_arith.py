"""Exact arithmetic: Kronecker symbols, characters, Kloosterman and Gauss
sums, multiplicative functions."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import qcbounds as q
from qcbounds.arith import kloosterman_direct_complex
from qcbounds.errors import NotFundamental, NotInvertible


def legendre_euler(a: int, p: int) -> int:
    """Independent oracle: Euler criterion for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    v = pow(a, (p - 1) // 2, p)
    return 1 if v == 1 else -1


class TestKronecker:
    def test_spec_examples(self):
        assert q.kronecker(-3, 2) == -1
        assert q.kronecker(-3, 3) == 0
        assert q.kronecker(-4, 3) == -1

    def test_against_euler_criterion(self):
        for D in (3, 4, 7, 8, 11, 15, 20, 24, 163):
            for p in (3, 5, 7, 11, 13, 17, 19, 23, 101):
                if (2 * D) % p == 0:
                    continue
                assert q.kronecker(-D, p) == legendre_euler(-D, p)

    @given(st.integers(1, 10**6), st.integers(1, 10**6))
    @settings(max_examples=100, deadline=None)
    def test_multiplicative_in_n(self, a, b):
        delta = -15
        assert q.kronecker(delta, a * b) == q.kronecker(delta, a) * q.kronecker(delta, b)

    def test_period(self):
        for D in (3, 4, 7, 8):
            vals = [q.kronecker(-D, n) for n in range(3 * D)]
            assert vals[:D] == vals[D : 2 * D] == vals[2 * D :]


class TestCharacter:
    def test_tables(self):
        assert list(q.make_character(3).table) == [0, 1, -1]
        assert list(q.make_character(4).table) == [0, 1, 0, -1]

    def test_not_fundamental(self):
        for D in (1, 2, 5, 6, 9, 12, 16, 25, 28):
            with pytest.raises(NotFundamental):
                q.make_character(D)

    @pytest.mark.parametrize("D", [3, 4, 7, 8, 11, 15, 20, 24, 40, 163])
    def test_invariants(self, D):
        chi = q.make_character(D)
        # zero exactly on non-units
        for n in range(D):
            assert (chi(n) == 0) == (math.gcd(n, D) > 1)
        # complete multiplicativity
        rng = np.random.default_rng(D)
        for _ in range(50):
            a, b = map(int, rng.integers(0, 4 * D, 2))
            assert chi(a * b % D) == chi(a) * chi(b)
        # odd
        assert chi(D - 1) == -1
        # primitivity: no proper divisor D0 gives a character of period D0
        # agreeing on units (some pair a = b mod D0 of units must differ)
        for d0 in range(1, D):
            if D % d0 != 0:
                continue
            units = [a for a in range(D) if math.gcd(a, D) == 1]
            agree = all(
                chi(a) == chi(b)
                for a in units
                for b in units
                if (a - b) % d0 == 0
            )
            assert not agree, f"chi_{D} has period {d0}"

    def test_fundamental_list(self):
        assert q.fundamental_discriminants(3, 24) == [3, 4, 7, 8, 11, 15, 19, 20, 23, 24]


class TestKloosterman:
    def test_spec_examples(self):
        assert q.kloosterman_direct(1, 1, 2) == pytest.approx(1.0, abs=1e-12)
        assert q.kloosterman_direct(1, 1, 3) == pytest.approx(-1.0, abs=1e-12)
        assert q.kloosterman_direct(1, 1, 5) == pytest.approx((3 - math.sqrt(5)) / 2, abs=1e-9)
        assert q.kloosterman_direct(0, 0, 12) == pytest.approx(4.0, abs=1e-12)

    def test_trivial_modulus_convention(self):
        assert q.kloosterman_direct(5, 9, 1) == 1.0
        assert q.kloosterman_fast(1, 1, 1) == 1.0

    def test_ramanujan_values(self):
        # S(1,0;c) is the Ramanujan sum c_c(1) = mobius(c)
        for c in (1, 2, 3, 4, 6, 10, 12, 30, 36):
            mu = q.multiplicative_functions(c).mobius
            assert q.kloosterman_fast(1, 0, c) == pytest.approx(mu, abs=1e-9)
        # S(0,0;c) = phi(c)
        for c in (1, 5, 12, 100):
            assert q.kloosterman_direct(0, 0, c) == pytest.approx(q.euler_phi(c), abs=1e-9)

    @given(st.integers(0, 40), st.integers(0, 40), st.integers(1, 200))
    @settings(max_examples=150, deadline=None)
    def test_symmetry_periodicity_realness(self, m, n, c):
        s = kloosterman_direct_complex(m, n, c)
        assert abs(s.imag) < 1e-9
        assert q.kloosterman_direct(m, n, c) == pytest.approx(
            q.kloosterman_direct(n, m, c), abs=1e-9
        )
        assert q.kloosterman_direct(m, n, c) == pytest.approx(
            q.kloosterman_direct(m % c, n % c, c), abs=1e-9
        )

    @given(st.integers(1, 12), st.integers(1, 12), st.integers(1, 400))
    @settings(max_examples=200, deadline=None)
    def test_fast_equals_direct(self, m, n, c):
        assert q.kloosterman_fast(m, n, c) == pytest.approx(
            q.kloosterman_direct(m, n, c), abs=1e-9
        )


class TestGaussSum:
    def test_small_values(self):
        g3 = q.gauss_sum(q.make_character(3))
        assert g3 == pytest.approx(1j * math.sqrt(3), abs=1e-12)
        g4 = q.gauss_sum(q.make_character(4))
        assert g4 == pytest.approx(2j, abs=1e-12)

    def test_modulus_sqrt_d(self):
        for D in q.fundamental_discriminants(3, 500):
            g = q.gauss_sum(q.make_character(D))
            assert abs(g) ** 2 == pytest.approx(D, rel=1e-8)


class TestMultiplicative:
    def test_examples(self):
        assert q.multiplicative_functions(12) == (6, 4, 0)
        assert q.multiplicative_functions(1) == (1, 1, 1)
        assert q.multiplicative_functions(30) == (8, 8, -1)

    def test_against_brute_force(self):
        for n in range(1, 200):
            divs = [d for d in range(1, n + 1) if n % d == 0]
            assert q.divisor_count(n) == len(divs)
            assert q.euler_phi(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


class TestModInverse:
    def test_examples(self):
        assert q.mod_inverse(3, 7) == 5
        assert q.mod_inverse(1, 1) == 0
        with pytest.raises(NotInvertible):
            q.mod_inverse(2, 4)

    @given(st.integers(1, 10**6), st.integers(2, 10**6))
    @settings(max_examples=100, deadline=None)
    def test_inverse_property(self, v, c):
        if math.gcd(v, c) != 1:
            with pytest.raises(NotInvertible):
                q.mod_inverse(v, c)
        else:
            r = q.mod_inverse(v, c)
            assert 0 <= r < c and v * r % c == 1


class TestPrimes:
    def test_is_prime(self):
        for p in (2, 3, 5, 7, 11, 13, 97, 271, 7919, 10**9 + 7):
            assert q.is_prime(p)
        for n in (0, 1, 4, 91, 561, 1105, 25326001):
            assert not q.is_prime(n)

    def test_next_prime(self):
        assert q.next_prime(266) == 269
        assert q.next_prime(269) == 271
        assert q.next_prime(1) == 2


class TestKloostermanParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            q.KloostermanParams(1, 1, 0)
        with pytest.raises(ValueError):
            q.KloostermanParams(-1, 1, 5)

    def test_evaluate_routes(self):
        params = q.KloostermanParams(1, 1, 6)
        assert params.evaluate() == pytest.approx(params.evaluate(fast=True), abs=1e-9)
