"""Derived p-completion on the catalogue of arithmetic groups, the
six-term sequence, and the p-adic module predicates.

The closed-form l0/l1 table is tested against a truncated inverse-limit
oracle that computes lim and lim^1 of the towers A/p^k and A[p^k]
directly, plus hand-computed values for every atom.
"""

import random

import pytest

from spectra import (
    Atom,
    CatalogueGroup,
    FgAbGroup,
    IntMatrix,
    PadicModule,
    SesOfGroups,
    check_detect_epi,
    check_four_term_conclusion,
    dp_constants,
    is_ext_p_complete,
    is_q_local,
    is_q_torsion,
    is_uniformly_q_torsion,
    l0,
    l0_fg,
    l1,
    l0_l1_oracle,
    six_term,
)
from spectra.gen import case_rng, rand_fg_ses, rand_four_term_middle

PRIMES = (2, 3, 5)


def cat(*atoms):
    return CatalogueGroup.of(*atoms)


class TestCompletionTable:
    def test_atoms_at_their_own_prime(self):
        p = 2
        assert l0(cat(Atom("Z")), p) == PadicModule(p, 1, ())
        assert l1(cat(Atom("Z")), p).is_trivial
        assert l0(cat(Atom("cyclic", n=12)), p) == PadicModule(p, 0, (4,))
        assert l0(cat(Atom("z_inv_p", p=p)), p).is_trivial
        assert l1(cat(Atom("z_inv_p", p=p)), p).is_trivial
        assert l0(cat(Atom("prufer", p=p)), p).is_trivial
        # the interesting entry: lim^1 of the Prufer tower is the p-adics
        assert l1(cat(Atom("prufer", p=p)), p) == PadicModule(p, 1, ())
        assert l0(cat(Atom("Q")), p).is_trivial
        assert l1(cat(Atom("Q")), p).is_trivial
        assert l0(cat(Atom("padic", p=p)), p) == PadicModule(p, 1, ())

    def test_atoms_at_a_foreign_prime(self):
        # at p = 3, the 2-arithmetic atoms look like Z or vanish
        assert l0(cat(Atom("z_inv_p", p=2)), 3) == PadicModule(3, 1, ())
        assert l0(cat(Atom("prufer", p=2)), 3).is_trivial
        assert l1(cat(Atom("prufer", p=2)), 3).is_trivial
        assert l0(cat(Atom("padic", p=2)), 3).is_trivial

    def test_table_matches_inverse_limit_oracle(self):
        atoms = [
            Atom("Z"),
            Atom("cyclic", n=8),
            Atom("cyclic", n=12),
            Atom("z_inv_p", p=2),
            Atom("prufer", p=2),
            Atom("Q"),
            Atom("padic", p=2),
        ]
        for atom in atoms:
            for p in PRIMES:
                rep = l0_l1_oracle(cat(atom), p, depth=12)
                assert rep.conclusive, (atom, p)
                assert rep.l0_limit == l0(cat(atom), p), (atom, p)
                assert rep.l1_limit == l1(cat(atom), p), (atom, p)

    def test_additive_over_sums(self):
        g = cat(Atom("Z"), Atom("cyclic", n=12), Atom("prufer", p=2))
        assert l0(g, 2) == PadicModule(2, 1, (4,))
        assert l1(g, 2) == PadicModule(2, 1, ())

    def test_fg_shortcut_agrees(self):
        rng = random.Random(20)
        for _ in range(30):
            rank = rng.randint(0, 2)
            torsion = [rng.choice([2, 4, 9, 12]) for _ in range(rng.randint(0, 2))]
            a = FgAbGroup.from_invariants(rank, torsion)
            p = rng.choice(PRIMES)
            assert l0_fg(a, p) == l0(CatalogueGroup.from_fg(a), p)


class TestCompletionPredicates:
    def test_local(self):
        assert is_q_local(cat(Atom("z_inv_p", p=2)), frozenset({2}))
        assert not is_q_local(cat(Atom("cyclic", n=4)), frozenset({2}))
        assert is_q_local(cat(Atom("Q")), frozenset({2, 3}))

    def test_torsion(self):
        assert is_q_torsion(cat(Atom("prufer", p=2)), frozenset({2}))
        assert is_uniformly_q_torsion(cat(Atom("cyclic", n=8)), frozenset({2}))
        # the Prufer group is torsion but not uniformly so
        assert not is_uniformly_q_torsion(cat(Atom("prufer", p=2)), frozenset({2}))

    def test_ext_complete(self):
        assert is_ext_p_complete(cat(Atom("padic", p=2)), 2)
        assert is_ext_p_complete(cat(Atom("cyclic", n=8)), 2)
        assert not is_ext_p_complete(cat(Atom("Z")), 2)
        assert not is_ext_p_complete(cat(Atom("prufer", p=2)), 2)


class TestSixTerm:
    def test_fg_sequences(self):
        rng = random.Random(21)
        for idx in range(25):
            ses = rand_fg_ses(case_rng(21, "test", idx))
            for p in PRIMES:
                rep = six_term(ses, p)
                assert rep.mode == "fg"
                assert rep.exact

    def test_catalogue_sequence(self):
        # Z into its p-localization, with Prufer quotient
        for p in PRIMES:
            for q in PRIMES:
                ses = SesOfGroups(
                    cat(Atom("Z")),
                    cat(Atom("z_inv_p", p=q)),
                    cat(Atom("prufer", p=q)),
                )
                rep = six_term(ses, p)
                assert rep.mode == "catalogue"
                assert rep.exact

    def test_exactness_data_present(self):
        z, z4 = FgAbGroup.free(1), FgAbGroup.cyclic(4)
        from spectra import GroupMap
        from spectra.gen import rand_fg_ses  # noqa: F401  (sequence built by hand)

        i = GroupMap(z, z, IntMatrix([[4]]))
        q = GroupMap(z, z4, IntMatrix([[1]]))
        ses = SesOfGroups(
            CatalogueGroup.from_fg(z),
            CatalogueGroup.from_fg(z),
            CatalogueGroup.from_fg(z4),
            i,
            q,
        )
        rep = six_term(ses, 2)
        assert rep.exact


class TestFourTerm:
    def test_hypotheses_enforced(self):
        with pytest.raises(ValueError):
            check_four_term_conclusion(cat(Atom("prufer", p=2)), cat(Atom("Z")), 2)

    def test_conclusion_on_generated_sequences(self):
        for idx in range(25):
            rng = case_rng(22, "four", idx)
            p = rng.choice(PRIMES)
            b, c = rand_four_term_middle(rng, p)
            l1_trivial, l0_fg_flag, _ = check_four_term_conclusion(b, c, p)
            assert l1_trivial and l0_fg_flag

    def test_frozen_instance(self):
        b = cat(Atom("cyclic", n=8), Atom("Z"))
        c = cat(Atom("cyclic", n=4))
        l1_trivial, l0_fg_flag, lc = check_four_term_conclusion(b, c, 2)
        assert (l1_trivial, l0_fg_flag) == (True, True)
        assert lc == PadicModule(2, 0, (4,))


class TestDetectEpi:
    def test_frozen_unit_map(self):
        # Z_2 -> Z/4 by an odd scalar: onto mod 2, hence onto
        src = PadicModule(2, 1, ())
        tgt = PadicModule(2, 0, (4,))
        assert check_detect_epi(src, tgt, IntMatrix([[3]])) == (True, True)

    def test_frozen_non_epi(self):
        src = PadicModule(2, 1, ())
        tgt = PadicModule(2, 0, (4,))
        modp, onto = check_detect_epi(src, tgt, IntMatrix([[2]]))
        assert not modp and not onto

    def test_implication_on_random_maps(self):
        from spectra.gen import rand_padic_case

        for idx in range(40):
            rng = case_rng(23, "epi", idx)
            p = rng.choice(PRIMES)
            src, tgt, mat = rand_padic_case(rng, p)
            modp, onto = check_detect_epi(src, tgt, mat)
            if modp:
                assert onto


def test_dp_constants_frozen():
    m, mm = dp_constants(frozenset({2}), 5)
    assert m == [1, 1, 2, 2, 8, 8]
    assert mm[(1, 1)] == 2
    assert mm[(2, 2)] == 2  # the 2-part of binomial(4, 2) = 6
    m3, _ = dp_constants(frozenset({2, 3}), 7)
    # {2,3}-part of k! for k = 0..6
    assert m3[:7] == [1, 1, 2, 6, 24, 24, 144]


def test_dp_constants_identity():
    for primes in [frozenset({2}), frozenset({3, 5}), frozenset({2, 3, 5})]:
        m, mm = dp_constants(primes, 20)
        for r in range(20):
            for s in range(20 - r):
                assert m[r + s] == m[r] * m[s] * mm[(r, s)]
