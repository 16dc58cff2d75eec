"""Truncated divided-power lattices and the ring structures carried by
the arithmetic Moore quotients.

The quotient certificates are cross-checked against closed forms: the
divided-power quotient is free of rank 1 with generator image 1/m_N,
inverting p gives (Z, p^-N), and the p-power-torsion quotient is
Z/p^(N+1).  Structure constants are the Q-parts of binomial
coefficients, checked against math.comb.
"""

from fractions import Fraction
from math import comb

import pytest

from spectra import (
    FgAbGroup,
    IntMatrix,
    PolyModule,
    TruncatedDpRing,
    dp_quotient,
    dp_relation_matrix,
    kernel_basis,
    s_inv_p_quotient,
    s_mod_p_inf_quotient,
)
from spectra.functors import dp_constants
from spectra.moore_rings import division_matrix, mu_t, truncated_division

PRIMES = (2, 3, 5)


def q_part(n, primes):
    out = 1
    for p in primes:
        while n % p == 0:
            out *= p
            n //= p
    return out


class TestDpRelation:
    def test_frozen_small(self):
        assert dp_relation_matrix(frozenset({2}), 1) == IntMatrix([[1], [-1]])
        got = dp_relation_matrix(frozenset({2}), 3)
        assert got == IntMatrix(
            [[1, 0, 0], [-1, 1, 0], [0, -2, 1], [0, 0, -1]]
        )

    def test_column_structure(self):
        # column r is e_r - ((r+1)-th ratio) * e_{r+1}
        m, _ = dp_constants(frozenset({2, 3}), 12)
        rel = dp_relation_matrix(frozenset({2, 3}), 11)
        for r in range(11):
            col = rel.column(r)
            assert col[r] == 1
            assert col[r + 1] == -(m[r + 1] // m[r])
            assert all(x == 0 for i, x in enumerate(col) if i not in (r, r + 1))

    def test_needs_positive_degree(self):
        with pytest.raises(ValueError):
            dp_relation_matrix(frozenset({2}), 0)


class TestDpQuotient:
    def test_frozen(self):
        cert = dp_quotient(frozenset({2}), 4)
        assert cert.ok
        assert cert.group == FgAbGroup.free(1)
        assert cert.image == Fraction(1, 8)

    def test_image_is_q_part_of_factorial(self):
        fact = 1
        for n in range(1, 13):
            fact *= n
            for primes in [{2}, {3}, {2, 5}, {2, 3, 5}]:
                cert = dp_quotient(frozenset(primes), n)
                assert cert.ok
                assert cert.image == Fraction(1, q_part(fact, primes))

    def test_consecutive_images_form_a_chain(self):
        prev = Fraction(1)
        for n in range(1, 30):
            img = dp_quotient(frozenset({2, 3}), n).image
            # 1/m_N divides 1/m_{N-1}: denominators grow by integer steps
            assert (prev / img).denominator == 1
            prev = img


class TestMooreQuotients:
    def test_inverted_p_frozen(self):
        cert = s_inv_p_quotient(2, 1)
        assert cert.ok
        assert cert.group == FgAbGroup.free(1)
        assert cert.image == Fraction(1, 2)

    def test_inverted_p_closed_form(self):
        for p in PRIMES:
            for n in range(0, 15):
                cert = s_inv_p_quotient(p, n)
                assert cert.ok
                assert cert.group == FgAbGroup.free(1)
                assert cert.image == Fraction(1, p**n)

    def test_mod_p_inf_frozen(self):
        assert s_mod_p_inf_quotient(2, 1).group == FgAbGroup.cyclic(4)
        assert s_mod_p_inf_quotient(2, 3).group == FgAbGroup.cyclic(16)
        assert s_mod_p_inf_quotient(3, 0).group == FgAbGroup.cyclic(3)

    def test_mod_p_inf_closed_form(self):
        for p in PRIMES:
            for n in range(0, 12):
                cert = s_mod_p_inf_quotient(p, n)
                assert cert.ok
                assert cert.group == FgAbGroup.cyclic(p ** (n + 1))


class TestPolyOperators:
    def test_division_then_multiplication(self):
        f = PolyModule.from_coeffs([0, 2, 0, 5], 5)
        assert mu_t(truncated_division(f)).coeffs == f.coeffs

    def test_multiplication_then_division(self):
        f = PolyModule.from_coeffs([7, 2, 3], 5)
        assert truncated_division(mu_t(f)).coeffs == f.coeffs

    def test_division_kills_only_constants(self):
        const = PolyModule.from_coeffs([9], 4)
        assert truncated_division(const).is_zero()
        for bound in range(1, 9):
            k = kernel_basis(division_matrix(bound))
            assert k.shape == (bound + 1, 1)
            col = k.column(0)
            assert abs(col[0]) == 1 and all(x == 0 for x in col[1:])

    def test_multiplication_overflow_raises(self):
        top = PolyModule.from_coeffs([0, 0, 1], 2)
        with pytest.raises(ValueError):
            mu_t(top)

    def test_module_arithmetic(self):
        a = PolyModule.from_coeffs([1, 2], 3)
        b = PolyModule.from_coeffs([0, 1, 1], 3)
        assert (a + b).coeffs == (1, 3, 1, 0)
        assert a.scale(-2).coeffs == (-2, -4, 0, 0)
        assert PolyModule.zero(3).is_zero()
        assert b.degree() == 2


class TestTruncatedRing:
    def test_structure_constants_are_binomial_parts(self):
        for primes in [{2}, {3}, {2, 3, 5}]:
            ring = TruncatedDpRing(frozenset(primes), 10)
            for r in range(11):
                for s in range(11 - r):
                    assert ring.structure_constant(r, s) == q_part(
                        comb(r + s, r), primes
                    )

    def test_frozen_products(self):
        ring = TruncatedDpRing(frozenset({2}), 6)
        assert ring.multiply_basis(1, 1) == (2, 2)
        assert ring.multiply_basis(2, 3) == (2, 5)
        assert ring.multiply_basis(0, 4) == (1, 4)

    def test_polynomial_product(self):
        ring = TruncatedDpRing(frozenset({2}), 6)
        got = ring.multiply((1, 1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0, 0))
        assert got == (0, 1, 2, 0, 0, 0, 0)

    def test_associative_and_commutative(self):
        ring = TruncatedDpRing(frozenset({2, 3}), 9)
        for r in range(10):
            for s in range(10 - r):
                assert ring.structure_constant(r, s) == ring.structure_constant(s, r)
                for u in range(10 - r - s):
                    assert ring.is_associative_triple(r, s, u)

    def test_truncation_enforced(self):
        ring = TruncatedDpRing(frozenset({2}), 3)
        with pytest.raises(ValueError):
            ring.multiply_basis(2, 2)


def test_quotients_connect_to_ring_constants():
    # the dp generator image is the product of the ratios killed by the
    # relation columns, i.e. the structure constants accumulate to m_N
    m, _ = dp_constants(frozenset({2, 3}), 9)
    cert = dp_quotient(frozenset({2, 3}), 8)
    assert cert.image == Fraction(1, m[8])
