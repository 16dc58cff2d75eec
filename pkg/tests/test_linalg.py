"""Exact integer linear algebra: normal form, transforms, kernels,
solving over the four base rings.  Cokernel invariants are checked
against a brute-force enumeration that never touches the normal form
code (see spectra.verify.brute_cokernel).
"""

import random

from fractions import Fraction

import pytest

from spectra import (
    IntMatrix,
    ZZ,
    cokernel_factors,
    determinant,
    is_prime,
    kernel_basis,
    matrix_rank,
    ring_inverted,
    ring_local_at,
    ring_mod,
    smith_normal_form,
)
from spectra.linalg import prime_part, solve, valuation
from spectra.verify import _q_det, _q_rank, brute_cokernel


def rand_matrix(rng, rows, cols, bound):
    return IntMatrix(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)],
        shape=(rows, cols),
    )


class TestSmithForm:
    def test_frozen_diagonal(self):
        f = smith_normal_form(IntMatrix([[2, 0], [0, 6]]))
        assert f.invariant_factors == (2, 6)
        assert f.torsion_factors == (2, 6)
        assert f.rank == 2

    def test_non_divisible_diagonal_is_fixed(self):
        # diag(4, 6) is not in normal form; invariants are (2, 12)
        f = smith_normal_form(IntMatrix([[4, 0], [0, 6]]))
        assert f.invariant_factors == (2, 12)

    def test_transforms_multiply_out(self):
        rng = random.Random(100)
        for _ in range(60):
            a = rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), 9)
            f = smith_normal_form(a)
            assert f.u @ a @ f.v == f.d
            assert f.u @ f.u_inv == IntMatrix.identity(a.shape[0])
            assert f.v @ f.v_inv == IntMatrix.identity(a.shape[1])
            assert abs(_q_det(f.u)) == 1
            assert abs(_q_det(f.v)) == 1

    def test_divisor_chain(self):
        rng = random.Random(101)
        for _ in range(60):
            a = rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), 9)
            fs = smith_normal_form(a).invariant_factors
            assert all(d > 0 for d in fs)
            assert all(fs[i + 1] % fs[i] == 0 for i in range(len(fs) - 1))
            assert len(fs) == _q_rank(a)

    def test_zero_and_empty(self):
        assert smith_normal_form(IntMatrix([[0]])).invariant_factors == ()
        assert smith_normal_form(IntMatrix.zero(0, 3)).rank == 0
        assert smith_normal_form(IntMatrix.zero(3, 0)).rank == 0


class TestCokernelOracle:
    """Invariant factors against an enumeration of Z^n / im(A)."""

    def test_frozen(self):
        assert brute_cokernel(IntMatrix([[2, 0], [0, 6]])) == (2, 6)
        assert brute_cokernel(IntMatrix([[4]])) == (4,)
        assert brute_cokernel(IntMatrix.identity(2)) == ()
        assert brute_cokernel(IntMatrix([[2, 2], [0, 2]])) == (2, 2)
        # extra column makes the quotient trivial
        assert brute_cokernel(IntMatrix([[2, 0, 1], [0, 3, 1]])) == ()
        # infinite cokernel: oracle abstains
        assert brute_cokernel(IntMatrix([[0]])) is None

    def test_random_against_normal_form(self):
        rng = random.Random(102)
        for _ in range(120):
            n = rng.randint(1, 3)
            a = rand_matrix(rng, n, rng.randint(1, 3), 4)
            brute = brute_cokernel(a)
            if brute is None:
                continue
            _, torsion = cokernel_factors(a)
            assert torsion == brute


class TestRings:
    def test_localized_cokernel_drops_inverted_torsion(self):
        rank, torsion = cokernel_factors(
            IntMatrix([[2, 0], [0, 6]]), ring_inverted({3})
        )
        assert (rank, torsion) == (0, (2, 2))

    def test_local_at_keeps_only_p_part(self):
        rank, torsion = cokernel_factors(
            IntMatrix([[12, 0], [0, 10]]), ring_local_at(2)
        )
        assert (rank, torsion) == (0, (2, 4))

    def test_mod_p_is_a_vector_space(self):
        rank, torsion = cokernel_factors(IntMatrix([[2, 0], [0, 3]]), ring_mod(3))
        # over GF(3) the matrix has rank 1
        assert (rank, torsion) == (1, ())

    def test_solve_uses_units(self):
        # 2 is invertible in Z_(3)
        f = smith_normal_form(IntMatrix([[2]]), ring_local_at(3))
        assert f.solve([3]) == [Fraction(3, 2)]

    def test_solve_respects_integrality(self):
        f = smith_normal_form(IntMatrix([[2]]))
        assert f.solve([3]) is None
        assert f.solve([4]) == [Fraction(2)]

    def test_module_level_solve(self):
        got = solve(IntMatrix([[2, 0], [0, 3]]), [4, 9])
        assert got == [Fraction(2), Fraction(3)]


class TestKernels:
    def test_kernel_columns_are_integral_and_complete(self):
        rng = random.Random(103)
        for _ in range(60):
            a = rand_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), 6)
            k = kernel_basis(a)
            assert (a @ k).is_zero()
            assert k.shape[1] == a.shape[1] - _q_rank(a)

    def test_frozen_kernel(self):
        k = kernel_basis(IntMatrix([[2, 0, 1], [0, 3, 1]]))
        assert k.shape == (3, 1)
        col = k.column(0)
        # (3, 2, -6) up to sign
        assert sorted(map(abs, col)) == [2, 3, 6]


class TestScalars:
    def test_determinant(self):
        assert determinant(IntMatrix([[2, 1], [1, 1]])) == 1
        assert determinant(IntMatrix([[2, 0], [0, 6]])) == 12
        assert determinant(IntMatrix.identity(3)) == 1

    def test_rank_over_rings(self):
        a = IntMatrix([[2, 0], [0, 3]])
        assert matrix_rank(a) == 2
        assert matrix_rank(a, ring_mod(2)) == 1

    def test_prime_helpers(self):
        assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
        assert valuation(48, 2) == 4
        assert prime_part(48, 2) == 16
        assert prime_part(48, 5) == 1

    def test_determinant_matches_fraction_elimination(self):
        rng = random.Random(104)
        for _ in range(40):
            n = rng.randint(1, 4)
            a = rand_matrix(rng, n, n, 7)
            assert determinant(a) == _q_det(a)


def test_ring_normalize_factor():
    # inverting 3 strips the 3-part of every factor
    r = ring_inverted({3})
    assert r.normalize_factor(18) == 2
    assert r.normalize_factor(9) == 1
    assert ring_local_at(2).normalize_factor(12) == 4


def test_ring_validation():
    with pytest.raises(ValueError):
        ring_mod(6)
    with pytest.raises(ValueError):
        ring_local_at(4)
    with pytest.raises(ValueError):
        ring_inverted({4})
