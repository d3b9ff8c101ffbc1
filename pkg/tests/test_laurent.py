from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallbases.laurent import (
    LaurentPoly,
    RationalV,
    bar,
    expand_at_infinity,
    gauss_binom,
    in_lattice,
    poly_gcd,
    quantum_factorial,
    quantum_int,
)


def L(d):
    return LaurentPoly(d)


V = LaurentPoly.v_power


class TestBasics:
    def test_zero_coeffs_dropped(self):
        p = L({2: 1, 0: 0, -1: 3})
        assert set(p.coeffs) == {2, -1}

    def test_add_mul_commute(self):
        p = L({1: 1, -2: 3})
        q = L({0: Fraction(1, 2), 3: -1})
        assert p + q == q + p
        assert p * q == q * p

    def test_mul_identity(self):
        p = L({5: 2, -5: 2})
        assert p * LaurentPoly.one() == p

    def test_pow(self):
        assert V(1) ** 3 == V(3)
        assert (V(1) + V(-1)) ** 2 == L({2: 1, 0: 2, -2: 1})

    def test_str_canonical_form(self):
        assert str(L({2: 1, -1: -1})) == "1*v^2 + -1*v^-1"
        assert str(LaurentPoly.zero()) == "0"

    def test_divexact(self):
        p = L({2: 1, 0: -1})  # v^2 - 1
        q = L({1: 1, 0: -1})  # v - 1
        assert p.divexact(q) == L({1: 1, 0: 1})
        with pytest.raises(ValueError):
            p.divexact(L({1: 1, 0: 1, -1: 1}))

    def test_subs_v_squared(self):
        p = L({2: 1, 0: -2})  # v^2 - 2 vanishes at q = 2
        assert p.subs_v_squared(2) == (0, 0)
        p = L({3: 1, 1: 1, 0: 5})
        c0, c1 = p.subs_v_squared(3)
        assert (c0, c1) == (5, 4)  # v^3 + v = (3 + 1) v at q = 3


class TestBar:
    def test_bar_on_v(self):
        assert bar(V(1)) == V(-1)

    def test_bar_symmetric_fixed(self):
        p = V(1) + V(-1)
        assert bar(p) == p

    def test_bar_termwise(self):
        assert bar(L({2: 3, -1: -1})) == L({-2: 3, 1: -1})


coeff_st = st.integers(min_value=-6, max_value=6)
poly_st = st.dictionaries(st.integers(min_value=-5, max_value=5), coeff_st, max_size=5).map(LaurentPoly)


class TestBarIsRingInvolution:
    @given(poly_st, poly_st)
    @settings(max_examples=60, deadline=None)
    def test_multiplicative(self, f, g):
        assert bar(f * g) == bar(f) * bar(g)

    @given(poly_st, poly_st)
    @settings(max_examples=60, deadline=None)
    def test_additive(self, f, g):
        assert bar(f + g) == bar(f) + bar(g)

    @given(poly_st)
    @settings(max_examples=60, deadline=None)
    def test_involution(self, f):
        assert bar(bar(f)) == f


class TestQuantumIntegers:
    def test_quantum_int_values(self):
        assert quantum_int(0) == LaurentPoly.zero()
        assert quantum_int(1) == LaurentPoly.one()
        assert quantum_int(2, 1) == V(1) + V(-1)
        assert quantum_int(3, 1) == L({2: 1, 0: 1, -2: 1})
        assert quantum_int(2, 2) == L({2: 1, -2: 1})

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            quantum_int(-1)
        with pytest.raises(ValueError):
            quantum_factorial(-2)

    def test_factorial(self):
        assert quantum_factorial(2, 1) == V(1) + V(-1)
        assert quantum_factorial(3, 1) == quantum_int(3) * quantum_int(2)

    def test_binom_small(self):
        assert gauss_binom(2, 1, 1) == V(1) + V(-1)
        # frozen from expanding [4]!/([2]![2]!) symbolically
        assert gauss_binom(4, 2, 1) == L({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})

    def test_binom_out_of_range(self):
        with pytest.raises(ValueError):
            gauss_binom(2, 3, 1)
        with pytest.raises(ValueError):
            gauss_binom(2, -1, 1)

    @pytest.mark.parametrize("n", range(13))
    def test_binom_is_exact_ratio(self, n):
        # the division [n]!/([k]![n-k]!) leaves no remainder up to n = 12
        for k in range(n + 1):
            b = gauss_binom(n, k, 1)
            assert b * quantum_factorial(k) * quantum_factorial(n - k) == quantum_factorial(n)
            assert b.is_bar_symmetric()
            assert all(c.denominator == 1 and c > 0 for c in b.coeffs.values())


class TestRationalV:
    def test_normalization_unique(self):
        a = RationalV(L({1: 2}), L({2: 2, 0: -2}))
        b = RationalV(L({1: 1}), L({2: 1, 0: -1}))
        assert a == b

    def test_zero_den_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RationalV(LaurentPoly.one(), LaurentPoly.zero())

    def test_arithmetic(self):
        half = RationalV(LaurentPoly.one(), V(1) + 1)
        other = RationalV(V(1), V(1) + 1)
        assert half + other == RationalV(LaurentPoly.one())
        assert half * (V(1) + 1) == RationalV(LaurentPoly.one())

    def test_gcd(self):
        assert poly_gcd(L({2: 1, 0: -1}), L({1: 1, 0: -1})) == L({1: 1, 0: -1})


class TestExpansion:
    def test_geometric_series(self):
        # 1/(1 - v^-2) = 1 + v^-2 + v^-4 + v^-6 + ...
        r = RationalV(LaurentPoly.one(), LaurentPoly.one() - V(-2))
        s = expand_at_infinity(r, 6)
        assert s.terms == [(0, 1), (-2, 1), (-4, 1), (-6, 1)]

    def test_v_over_v_minus_1(self):
        r = RationalV(V(1), V(1) - 1)
        s = expand_at_infinity(r, 4)
        assert s.terms == [(0, 1), (-1, 1), (-2, 1), (-3, 1), (-4, 1)]

    def test_exact_laurent(self):
        r = RationalV(L({2: 1, 0: 1}), V(2))
        s = expand_at_infinity(r, 3)
        assert s.terms == [(0, 1), (-2, 1)]

    def test_top_exponent_reported(self):
        r = RationalV(L({3: 1, 0: 5}), V(1) + 1)
        assert expand_at_infinity(r, 4).top_exponent() == 2
        assert r.top_exponent() == 2

    @given(
        st.dictionaries(st.integers(min_value=-3, max_value=3), coeff_st, min_size=1, max_size=4).map(LaurentPoly),
        st.dictionaries(st.integers(min_value=-3, max_value=3), coeff_st, min_size=1, max_size=4).map(LaurentPoly),
    )
    @settings(max_examples=40, deadline=None)
    def test_orders_consistent(self, num, den):
        # expansions to order m and m + 5 agree on the shared exponents
        if den.is_zero() or num.is_zero():
            return
        r = RationalV(num, den)
        s1 = expand_at_infinity(r, 4)
        s2 = expand_at_infinity(r, 9)
        for e, c in s1.terms:
            assert s2.coefficient(e) == c


class TestLattice:
    def test_simple_members(self):
        r = RationalV(LaurentPoly.one(), LaurentPoly.one() - V(-2))
        assert in_lattice(r, strict=False)
        assert not in_lattice(r, strict=True)

    def test_positive_power_fails(self):
        assert not in_lattice(RationalV(V(1) + 1), strict=False)

    def test_strict_member(self):
        r = RationalV(V(-1), LaurentPoly.one() - V(-1))
        assert in_lattice(r, strict=True)

    def test_zero_in_lattice(self):
        assert in_lattice(RationalV(LaurentPoly.zero()), strict=True)
