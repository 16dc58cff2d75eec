"""Arithmetic localization and completion on a catalogue of abelian groups.

The catalogue holds finite direct sums of the named atoms Z, Z/n, Z[1/p],
the Prufer group Z/p^inf, Q, and the p-adic integers.  On it live the
derived p-completion functors l0 (classically Ext(Z/p^inf, -)) and l1
(Hom(Z/p^inf, -)), valued in exact symbolic p-adic modules: a Z_p-rank plus
a chain of p-power torsion orders, never truncated expansions.

The atom table for l0/l1 is guarded by an independent inverse-limit oracle:
the towers A/p^e and A[p^e] are built symbolically with their transition
maps, image stabilization is detected, and the limit shape is read off the
stable window.  six_term verifies the localization six-term sequence either
with explicit matrices (all-finitely-generated case), by an effective snake
construction on towers (the arithmetic catalogue sequence), or by
order/rank bookkeeping when maps are unavailable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, gcd

from .groups import (
    FgAbGroup,
    GroupMap,
    exact_at,
    mod_power,
)
from .linalg import (
    IntMatrix,
    is_prime,
    matrix_rank,
    prime_part,
    ring_local_at,
    ring_mod,
    valuation,
)
from .primes import PrimeSet


# ---------------------------------------------------------------------------
# the catalogue

_ATOM_TAGS = ("Z", "cyclic", "z_inv_p", "prufer", "Q", "padic")


@dataclass(frozen=True)
class Atom:
    """One catalogue summand.  t is the tag; n parametrizes "cyclic" and p
    the p-tagged atoms."""

    t: str
    n: int = 0
    p: int = 0

    def __post_init__(self):
        if self.t not in _ATOM_TAGS:
            raise ValueError("unknown atom tag %r" % (self.t,))
        if self.t == "cyclic":
            if self.n < 2:
                raise ValueError("cyclic atom needs n >= 2")
            if self.p:
                raise ValueError("cyclic atom carries no prime tag")
        elif self.t in ("z_inv_p", "prufer", "padic"):
            if not is_prime(self.p):
                raise ValueError("%s atom needs a prime, got %r" % (self.t, self.p))
            if self.n:
                raise ValueError("%s atom carries no order" % (self.t,))
        elif self.n or self.p:
            raise ValueError("%s atom takes no parameters" % (self.t,))

    def __str__(self):
        if self.t == "Z":
            return "Z"
        if self.t == "cyclic":
            return "Z/%d" % self.n
        if self.t == "z_inv_p":
            return "Z[1/%d]" % self.p
        if self.t == "prufer":
            return "Z/%d^inf" % self.p
        if self.t == "Q":
            return "Q"
        return "Z_%d^" % self.p  # padic

    def _sort_key(self):
        return (_ATOM_TAGS.index(self.t), self.n, self.p)


@dataclass(frozen=True)
class CatalogueGroup:
    """A formal finite direct sum of catalogue atoms, kept sorted so equal
    multisets compare equal.

    >>> g = CatalogueGroup.of(Atom("Z"), Atom("cyclic", n=12))
    >>> str(g)
    'Z + Z/12'
    >>> g.is_fg
    True
    """

    summands: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self, "summands", tuple(sorted(self.summands, key=Atom._sort_key))
        )

    @classmethod
    def of(cls, *atoms):
        return cls(tuple(atoms))

    @classmethod
    def from_fg(cls, g):
        atoms = [Atom("Z")] * g.free_rank
        atoms.extend(Atom("cyclic", n=d) for d in g.torsion)
        return cls(tuple(atoms))

    @classmethod
    def zero(cls):
        return cls(())

    def direct_sum(self, other):
        return CatalogueGroup(self.summands + other.summands)

    @property
    def is_fg(self):
        return all(a.t in ("Z", "cyclic") for a in self.summands)

    def to_fg(self):
        if not self.is_fg:
            raise ValueError("group is not finitely generated over Z")
        rank = sum(1 for a in self.summands if a.t == "Z")
        orders = [a.n for a in self.summands if a.t == "cyclic"]
        return FgAbGroup.from_invariants(rank, orders)

    def __str__(self):
        if not self.summands:
            return "0"
        return " + ".join(str(a) for a in self.summands)


@dataclass(frozen=True)
class PadicModule:
    """A finitely generated module over the p-adic integers in canonical
    form: free rank plus an ascending chain of p-power torsion orders.

    >>> PadicModule(2, 1, (4,))
    PadicModule(prime=2, zp_rank=1, p_torsion=(4,))
    >>> str(PadicModule(3, 2, (3, 9)))
    'Z_3^2 + Z/3 + Z/9'
    """

    prime: int
    zp_rank: int
    p_torsion: tuple = ()

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ValueError("prime required")
        if self.zp_rank < 0:
            raise ValueError("negative rank")
        object.__setattr__(self, "p_torsion", tuple(sorted(self.p_torsion)))
        for d in self.p_torsion:
            if d < 2 or prime_part(d, self.prime) != d:
                raise ValueError("torsion %r is not a %d-power" % (d, self.prime))

    @classmethod
    def zero(cls, p):
        return cls(p, 0, ())

    @property
    def is_trivial(self):
        return self.zp_rank == 0 and not self.p_torsion

    @property
    def is_finite(self):
        return self.zp_rank == 0

    def order(self):
        if self.zp_rank:
            return None
        n = 1
        for d in self.p_torsion:
            n *= d
        return n

    def direct_sum(self, other):
        if other.prime != self.prime:
            raise ValueError("prime mismatch")
        return PadicModule(
            self.prime, self.zp_rank + other.zp_rank, self.p_torsion + other.p_torsion
        )

    def shadow_group(self):
        """The same invariants as an abstract group; fit for the lattice
        algebra over the ring localized at p."""
        return FgAbGroup(self.zp_rank, self.p_torsion)

    def mod_power(self, m):
        """self / m*self, a finite group (m a p-power)."""
        return mod_power(self.shadow_group(), m)

    def ann_power(self, m):
        """m-torsion submodule; the free part contributes nothing."""
        return FgAbGroup.from_invariants(0, [gcd(d, m) for d in self.p_torsion])

    def __str__(self):
        parts = []
        if self.zp_rank == 1:
            parts.append("Z_%d" % self.prime)
        elif self.zp_rank > 1:
            parts.append("Z_%d^%d" % (self.prime, self.zp_rank))
        parts.extend("Z/%d" % d for d in self.p_torsion)
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Q-factors and divided-power constants


def dp_constants(primes, n):
    """Factorial and binomial Q-factors up to total degree n.

    Returns (m, mm) with m[r] the Q-factor of r! for r <= n and
    mm[(r, s)] the Q-factor of binom(r+s, r) for r+s <= n.  The defining
    identity m[r+s] = m[r]*m[s]*mm[(r,s)] is asserted.

    >>> m, mm = dp_constants({2}, 4)
    >>> m[4], mm[(1, 1)]
    (8, 2)
    >>> dp_constants((), 6)[0] == [1]*7
    True
    """
    q = PrimeSet.from_iterable(primes)
    m = [q.q_factor(factorial(r)) for r in range(n + 1)]
    mm = {}
    for r in range(n + 1):
        for s in range(n + 1 - r):
            mm[(r, s)] = q.q_factor(comb(r + s, r))
            assert m[r + s] == m[r] * m[s] * mm[(r, s)]
    return m, mm


# ---------------------------------------------------------------------------
# the l0/l1 atom table


def _l0_l1_atom(atom, p):
    """(l0, l1) of one atom as (rank, torsion) pairs."""
    if atom.t == "Z":
        return (1, ()), (0, ())
    if atom.t == "cyclic":
        pe = prime_part(atom.n, p)
        return (0, (pe,) if pe > 1 else ()), (0, ())
    if atom.t == "z_inv_p":
        if atom.p == p:
            return (0, ()), (0, ())
        return (1, ()), (0, ())
    if atom.t == "prufer":
        if atom.p == p:
            return (0, ()), (1, ())
        return (0, ()), (0, ())
    if atom.t == "Q":
        return (0, ()), (0, ())
    # padic
    if atom.p == p:
        return (1, ()), (0, ())
    return (0, ()), (0, ())


def l0(a, p):
    """Derived p-completion in degree 0, by additivity over atoms.

    >>> str(l0(CatalogueGroup.of(Atom("cyclic", n=12)), 2))
    'Z/4'
    >>> str(l0(CatalogueGroup.of(Atom("Z")), 5))
    'Z_5'
    """
    rank = 0
    tors = []
    for atom in a.summands:
        (r, t), _ = _l0_l1_atom(atom, p)
        rank += r
        tors.extend(t)
    return PadicModule(p, rank, tuple(tors))


def l1(a, p):
    """Derived p-completion in degree 1; nonzero only on Prufer p-atoms.

    >>> str(l1(CatalogueGroup.of(Atom("prufer", p=3)), 3))
    'Z_3'
    >>> l1(CatalogueGroup.of(Atom("Z"), Atom("cyclic", n=8)), 2).is_trivial
    True
    """
    rank = 0
    tors = []
    for atom in a.summands:
        _, (r, t) = _l0_l1_atom(atom, p)
        rank += r
        tors.extend(t)
    return PadicModule(p, rank, tuple(tors))


def l0_fg(a, p):
    """l0 of a finitely generated group given in canonical form."""
    return l0(CatalogueGroup.from_fg(a), p)


# ---------------------------------------------------------------------------
# the truncated-inverse-limit oracle

# Per atom the level-e pieces of the towers A/p^e and A[p^e] are cyclic
# p-power groups computed symbolically; k is the exponent at level e and
# the transition scalar maps level e+1 to level e (None marks a zero group
# on either side).


def _quotient_exponent(atom, p, e):
    if atom.t == "Z":
        return e
    if atom.t == "cyclic":
        return min(e, valuation(atom.n, p))
    if atom.t == "z_inv_p":
        return 0 if atom.p == p else e
    if atom.t == "prufer":
        return 0
    if atom.t == "Q":
        return 0
    return e if atom.p == p else 0  # padic


def _torsion_exponent(atom, p, e):
    if atom.t == "cyclic":
        return min(e, valuation(atom.n, p))
    if atom.t == "prufer" and atom.p == p:
        return e
    return 0


def _torsion_transition_scalar(atom, p, e):
    # multiplication by p: A[p^(e+1)] -> A[p^e], written on the canonical
    # cyclic generators; 1 while the subgroup is still growing, p once the
    # cyclic atom has saturated
    if atom.t == "prufer":
        return 1
    v = valuation(atom.n, p)
    return 1 if e + 1 <= v else p


@dataclass(frozen=True)
class Tower:
    """A tower G_1 <- G_2 <- ... of finite p-groups with explicit
    transitions, stored blockwise: level_orders[e-1] lists the cyclic
    orders present at level e and transitions[e-1] is the matrix from
    level e+1 coordinates to level e coordinates."""

    prime: int
    depth: int
    level_orders: tuple  # tuple of tuples of p-powers (ascending)
    transitions: tuple  # tuple of IntMatrix, length depth - 1

    def group(self, e):
        return FgAbGroup(0, self.level_orders[e - 1])

    def composite(self, top, bottom):
        """Transition matrix from level `top` down to level `bottom`."""
        m = IntMatrix.identity(len(self.level_orders[top - 1]))
        for e in range(top - 1, bottom - 1, -1):
            m = self.transitions[e - 1] @ m
        return m

    def image_at(self, top, bottom):
        """Image of G_top in G_bottom, as a canonical group."""
        f = GroupMap(self.group(top), self.group(bottom), self.composite(top, bottom))
        return f.image()


def _build_tower(a, p, depth, exponent_of, scalar_of):
    # slots at level e: (atom_index, exponent), sorted so the order list is
    # an ascending chain; transitions act slotwise within each atom
    slots = []
    for e in range(1, depth + 1):
        lv = [
            (i, exponent_of(atom, p, e))
            for i, atom in enumerate(a.summands)
            if exponent_of(atom, p, e) > 0
        ]
        lv.sort(key=lambda t: (t[1], t[0]))
        slots.append(lv)
    trans = []
    for e in range(1, depth):
        lo, hi = slots[e - 1], slots[e]
        pos = {i: r for r, (i, _) in enumerate(lo)}
        rows = [[0] * len(hi) for _ in lo]
        for c, (i, _) in enumerate(hi):
            if i in pos:
                rows[pos[i]][c] = scalar_of(a.summands[i], p, e)
        trans.append(IntMatrix(rows, shape=(len(lo), len(hi))))
    orders = tuple(tuple(p**k for _, k in lv) for lv in slots)
    return Tower(p, depth, orders, tuple(trans))


def quotient_tower(a, p, depth):
    """The tower A/p^e, e = 1..depth, with reduction transitions."""
    return _build_tower(a, p, depth, _quotient_exponent, lambda atom, p_, e: 1)


def torsion_tower(a, p, depth):
    """The tower A[p^e], e = 1..depth, with multiplication-by-p
    transitions."""
    return _build_tower(a, p, depth, _torsion_exponent, _torsion_transition_scalar)


def _tower_limit(tower):
    """Inverse limit of a tower of finite p-groups, read off the stable
    images.

    Towers of finite groups always satisfy the Mittag-Leffler condition, so
    the limit is the inverse limit of the stable images I(e); the detected
    shape is Z_p^r + (constant finite part).  Returns (limit, stable_cap)
    or (None, cap) when the window is too short to conclude.
    """
    p, depth = tower.prime, tower.depth
    tops = [depth - 2, depth - 1, depth]
    images = {
        (top, e): tower.image_at(top, e)
        for top in tops
        for e in range(1, tops[0] + 1)
        if e <= top
    }
    cap = 0
    for e in range(1, tops[0] + 1):
        if all(images[(top, e)] == images[(tops[0], e)] for top in tops):
            cap = e
        else:
            break
    if cap < 4:
        return None, cap
    window = range(cap - 3, cap + 1)
    grow = None
    stable_parts = []
    for e in window:
        exps = [valuation(d, p) for d in images[(depth, e)].torsion]
        r = sum(1 for k in exps if k == e)
        rest = sorted(k for k in exps if k != e)
        if grow is None:
            grow = r
        elif grow != r:
            return None, cap
        stable_parts.append(tuple(rest))
    if any(part != stable_parts[0] for part in stable_parts):
        return None, cap
    rest = stable_parts[0]
    if rest and rest[-1] >= cap - 3:
        return None, cap
    return PadicModule(p, grow, tuple(p**k for k in rest)), cap


@dataclass(frozen=True)
class TowerOracleReport:
    """Outcome of the inverse-limit oracle at a given depth."""

    prime: int
    depth: int
    quotient: Tower
    torsion: Tower
    l0_limit: PadicModule | None
    l1_limit: PadicModule | None
    quotient_cap: int
    torsion_cap: int

    @property
    def conclusive(self):
        return self.l0_limit is not None and self.l1_limit is not None


def l0_l1_oracle(a, p, depth=12):
    """Independent check of the atom table: build both towers to the given
    depth, detect stabilization, and read off the limits.

    >>> rep = l0_l1_oracle(CatalogueGroup.of(Atom("prufer", p=2)), 2)
    >>> str(rep.l1_limit), str(rep.l0_limit)
    ('Z_2', '0')
    >>> rep = l0_l1_oracle(CatalogueGroup.of(Atom("Q")), 3)
    >>> rep.l0_limit.is_trivial and rep.l1_limit.is_trivial
    True
    """
    if depth < 6:
        raise ValueError("oracle needs depth >= 6 for a stable window")
    qt = quotient_tower(a, p, depth)
    tt = torsion_tower(a, p, depth)
    lim0, cap0 = _tower_limit(qt)
    lim1, cap1 = _tower_limit(tt)
    return TowerOracleReport(p, depth, qt, tt, lim0, lim1, cap0, cap1)


# ---------------------------------------------------------------------------
# short exact sequences and the six-term sequence


@dataclass(frozen=True)
class SesOfGroups:
    """A short exact sequence of catalogue groups.  When every member is
    finitely generated the maps must be supplied and exactness is verified
    at construction; otherwise maps may be None (the arithmetic catalogue
    sequences carry their own structure)."""

    a: CatalogueGroup
    b: CatalogueGroup
    c: CatalogueGroup
    i: GroupMap | None = None
    q: GroupMap | None = None

    def __post_init__(self):
        if self.all_fg:
            if self.i is None or self.q is None:
                raise ValueError("finitely generated sequence needs its maps")
            if (
                self.i.source != self.a.to_fg()
                or self.i.target != self.b.to_fg()
                or self.q.source != self.b.to_fg()
                or self.q.target != self.c.to_fg()
            ):
                raise ValueError("maps do not match the stated groups")
            if not self.i.is_injective():
                raise ValueError("first map is not injective")
            if not self.q.is_surjective():
                raise ValueError("second map is not surjective")
            if not exact_at(self.i, self.q):
                raise ValueError("sequence is not exact in the middle")

    @property
    def all_fg(self):
        return self.a.is_fg and self.b.is_fg and self.c.is_fg


@dataclass(frozen=True)
class SixTermReport:
    """The sequence l1(A) -> l1(B) -> l1(C) -> l0(A) -> l0(B) -> l0(C)
    with whatever level of verification the members admit.

    mode is "fg" (explicit matrices, full exactness), "catalogue"
    (effective snake construction on towers), or "orders" (maps
    unavailable; rank and order bookkeeping only).
    """

    prime: int
    mode: str
    terms: tuple  # six PadicModules
    exact: bool
    maps: dict = field(default_factory=dict)
    notes: tuple = ()


def _localize_fg_map(f, p):
    """Transport a map of finitely generated groups to l0 (base change to
    the p-adics), over the ring localized at p.  Generators whose order is
    prime to p vanish; the matrix restricts to the survivors."""
    ring = ring_local_at(p)

    def survivors(g):
        orders = g.generator_orders()
        return [j for j, d in enumerate(orders) if d == 0 or d % p == 0]

    def shadow(g):
        return FgAbGroup(
            g.free_rank,
            tuple(prime_part(d, p) for d in g.torsion if d % p == 0),
        )

    src = f.source
    tgt = f.target
    keep_c = survivors(src)
    keep_r = survivors(tgt)
    mat = f.matrix.select_rows(keep_r).select_columns(keep_c)
    return GroupMap(shadow(src), shadow(tgt), mat, ring)


def _six_term_fg(ses, p):
    i0 = _localize_fg_map(ses.i, p)
    q0 = _localize_fg_map(ses.q, p)
    ok = (
        i0.is_injective()
        and q0.is_surjective()
        and exact_at(i0, q0)
    )
    z = PadicModule.zero(p)
    terms = (
        z,
        z,
        z,
        l0(ses.a, p),
        l0(ses.b, p),
        l0(ses.c, p),
    )
    return SixTermReport(
        prime=p,
        mode="fg",
        terms=terms,
        exact=ok,
        maps={"l0_i": i0.matrix, "l0_q": q0.matrix, "connecting": None},
        notes=("l1 vanishes on finitely generated groups",),
    )


def _match_arithmetic_ses(ses):
    # Z >-> Z[1/q] ->> Z/q^inf, the catalogue localization sequence
    if (
        len(ses.a.summands) == 1
        and ses.a.summands[0].t == "Z"
        and len(ses.b.summands) == 1
        and ses.b.summands[0].t == "z_inv_p"
        and len(ses.c.summands) == 1
        and ses.c.summands[0].t == "prufer"
        and ses.b.summands[0].p == ses.c.summands[0].p
    ):
        return ses.b.summands[0].p
    return None


def _six_term_arithmetic(ses, p, q, depth=12):
    """Effective snake construction for Z >-> Z[1/q] ->> Z/q^inf.

    At each level e the snake sequence
    0 -> C[p^e] -> A/p^e -> B/p^e -> C/p^e -> 0 is built with an explicit
    connecting map (lift the Prufer generator to 1/q^e, multiply by p^e)
    and verified; the connecting maps commute with the tower transitions,
    and the stabilized map gives the middle arrow of the six-term
    sequence.
    """
    notes = []
    atom_a, atom_b, atom_c = (
        ses.a.summands[0],
        ses.b.summands[0],
        ses.c.summands[0],
    )
    if q == p:
        # levels: A[p^e] = B[p^e] = 0, B/p^e = C/p^e = 0, and the snake
        # collapses to C[p^e] --delta--> A/p^e needing delta iso; delta is
        # built honestly: lift the level-e Prufer generator to 1/p^e in
        # Z[1/p], multiply by p^e, land in A = Z
        ok = True
        deltas = []
        for e in range(1, depth + 1):
            pe = p**e
            ok = ok and _torsion_exponent(atom_a, p, e) == 0
            ok = ok and _torsion_exponent(atom_b, p, e) == 0
            ok = ok and _quotient_exponent(atom_b, p, e) == 0
            ok = ok and _quotient_exponent(atom_c, p, e) == 0
            ok = ok and _torsion_exponent(atom_c, p, e) == e
            lift = Fraction(1, pe)
            moved = lift * pe
            if moved.denominator != 1:
                ok = False
                break
            delta = int(moved) % pe
            deltas.append(delta)
            if delta % p == 0:  # must be a unit for level exactness
                ok = False
        # connecting maps must commute with the tower transitions
        # (torsion transitions on C and reduction on A are both [1])
        for e in range(1, depth):
            if deltas[e - 1] % p**e != deltas[e] % p**e:
                ok = False
        notes.append("connecting map is multiplication by 1 at every level")
        connecting = IntMatrix([[deltas[0] if deltas else 1]])
        terms = (
            PadicModule.zero(p),
            PadicModule.zero(p),
            PadicModule(p, 1),
            PadicModule(p, 1),
            PadicModule.zero(p),
            PadicModule.zero(p),
        )
        # stabilized connecting map is an isomorphism between the tower
        # limits, whose shapes the oracle certifies
        rep_c = l0_l1_oracle(ses.c, p, depth)
        rep_a = l0_l1_oracle(ses.a, p, depth)
        ok = (
            ok
            and rep_c.l1_limit == PadicModule(p, 1)
            and rep_a.l0_limit == PadicModule(p, 1)
        )
    else:
        # all torsion towers vanish and the snake collapses to
        # A/p^e -> B/p^e which must be an isomorphism at every level:
        # both are cyclic of order p^e and the map sends 1 to 1
        ok = True
        for e in range(1, depth + 1):
            pe = p**e
            ok = ok and _torsion_exponent(atom_a, p, e) == 0
            ok = ok and _torsion_exponent(atom_b, p, e) == 0
            ok = ok and _torsion_exponent(atom_c, p, e) == 0
            ok = ok and _quotient_exponent(atom_c, p, e) == 0
            ok = ok and _quotient_exponent(atom_a, p, e) == e
            ok = ok and _quotient_exponent(atom_b, p, e) == e
            # 1 generates Z[1/q]/p^e exactly because q is a unit mod p^e
            ok = ok and gcd(q, pe) == 1
        connecting = IntMatrix.zero(1, 0)
        terms = (
            PadicModule.zero(p),
            PadicModule.zero(p),
            PadicModule.zero(p),
            PadicModule(p, 1),
            PadicModule(p, 1),
            PadicModule.zero(p),
        )
        notes.append("completion prime differs from the inverted prime")
    return SixTermReport(
        prime=p,
        mode="catalogue",
        terms=terms,
        exact=ok,
        maps={"connecting": connecting},
        notes=tuple(notes),
    )


def _six_term_orders(ses, p):
    terms = (
        l1(ses.a, p),
        l1(ses.b, p),
        l1(ses.c, p),
        l0(ses.a, p),
        l0(ses.b, p),
        l0(ses.c, p),
    )
    ranks = [t.zp_rank for t in terms]
    # rank bookkeeping for an exact sequence of six terms flanked by zeros
    ok = sum(ranks[::2]) == sum(ranks[1::2])
    orders = [t.order() for t in terms]
    if all(o is not None for o in orders):
        num = orders[0] * orders[2] * orders[4]
        den = orders[1] * orders[3] * orders[5]
        ok = ok and num == den
    # a term flanked by zeros must vanish
    padded = [PadicModule.zero(p)] + list(terms) + [PadicModule.zero(p)]
    for k in range(1, 7):
        if padded[k - 1].is_trivial and padded[k + 1].is_trivial:
            ok = ok and padded[k].is_trivial
    return SixTermReport(
        prime=p,
        mode="orders",
        terms=terms,
        exact=ok,
        notes=("maps unavailable; order and rank consistency only",),
    )


def six_term(ses, p):
    """The six-term sequence of a short exact sequence, with the strongest
    verification the members support.

    >>> from .linalg import IntMatrix
    >>> z = CatalogueGroup.of(Atom("Z"))
    >>> zp = CatalogueGroup.of(Atom("cyclic", n=5))
    >>> i = GroupMap(z.to_fg(), z.to_fg(), IntMatrix([[5]]))
    >>> q = GroupMap(z.to_fg(), zp.to_fg(), IntMatrix([[1]]))
    >>> rep = six_term(SesOfGroups(z, z, zp, i, q), 5)
    >>> rep.mode, rep.exact
    ('fg', True)
    """
    if ses.all_fg:
        return _six_term_fg(ses, p)
    q = _match_arithmetic_ses(ses)
    if q is not None:
        return _six_term_arithmetic(ses, p, q)
    return _six_term_orders(ses, p)


# ---------------------------------------------------------------------------
# structural predicates


def is_ext_p_complete(a, p):
    """Whether maps out of Z[1/p] see nothing: true exactly when every
    summand is a cyclic p-group or the p-adic integers at p.

    >>> is_ext_p_complete(CatalogueGroup.of(Atom("cyclic", n=8)), 2)
    True
    >>> is_ext_p_complete(CatalogueGroup.of(Atom("Z")), 2)
    False
    """
    for atom in a.summands:
        if atom.t == "cyclic" and prime_part(atom.n, p) == atom.n:
            continue
        if atom.t == "padic" and atom.p == p:
            continue
        return False
    return True


def is_q_local(a, primes):
    """Whether every prime of Q acts invertibly.

    >>> is_q_local(CatalogueGroup.of(Atom("cyclic", n=5)), {2})
    True
    >>> is_q_local(CatalogueGroup.of(Atom("Z")), {2})
    False
    """
    qs = tuple(PrimeSet.from_iterable(primes).members)
    for atom in a.summands:
        for q in qs:
            if atom.t == "Z":
                return False
            if atom.t == "cyclic" and atom.n % q == 0:
                return False
            if atom.t == "z_inv_p" and atom.p != q:
                return False
            if atom.t == "prufer" and atom.p == q:
                return False
            if atom.t == "padic" and atom.p == q:
                return False
            # Q is a vector space over the rationals: always local
    return True


def is_q_torsion(a, primes):
    """Whether every element is killed by some Q-supported integer.

    >>> is_q_torsion(CatalogueGroup.of(Atom("prufer", p=2)), {2})
    True
    >>> is_q_torsion(CatalogueGroup.of(Atom("cyclic", n=6)), {2})
    False
    """
    q = PrimeSet.from_iterable(primes)
    for atom in a.summands:
        if atom.t == "cyclic" and q.q_factor(atom.n) == atom.n:
            continue
        if atom.t == "prufer" and atom.p in q:
            continue
        return False
    return True


def is_uniformly_q_torsion(a, primes):
    """Whether one single Q-supported integer kills the whole group; the
    Prufer atoms are Q-torsion but never uniformly so.

    >>> is_uniformly_q_torsion(CatalogueGroup.of(Atom("cyclic", n=12)), {2, 3})
    True
    >>> is_uniformly_q_torsion(CatalogueGroup.of(Atom("prufer", p=2)), {2})
    False
    """
    q = PrimeSet.from_iterable(primes)
    for atom in a.summands:
        if not (atom.t == "cyclic" and q.q_factor(atom.n) == atom.n):
            return False
    return True


def uniform_torsion_bound(a, primes):
    """The least m with m * a = 0 when is_uniformly_q_torsion holds."""
    if not is_uniformly_q_torsion(a, primes):
        raise ValueError("group is not uniformly torsion for these primes")
    m = 1
    for atom in a.summands:
        m = m * atom.n // gcd(m, atom.n)
    return m


# ---------------------------------------------------------------------------
# detecting surjectivity mod p


def check_detect_epi(source, target, matrix):
    """For a map of p-adic modules given by an integer matrix on standard
    generators: returns (surjective mod p, surjective), asserting the
    implication mod-p ==> onto.

    >>> m = PadicModule(2, 1)
    >>> t = PadicModule(2, 0, (4,))
    >>> check_detect_epi(m, t, IntMatrix([[3]]))
    (True, True)
    >>> check_detect_epi(m, m, IntMatrix([[2]]))
    (False, False)
    """
    if source.prime != target.prime:
        raise ValueError("prime mismatch")
    p = source.prime
    f = GroupMap(
        source.shadow_group(), target.shadow_group(), matrix, ring_local_at(p)
    )
    # torsion relations vanish mod p (all orders are p-powers), so mod-p
    # surjectivity is full row rank of the bare matrix over F_p
    modp = matrix_rank(f.matrix, ring_mod(p)) == target.shadow_group().num_generators
    onto = f.is_surjective()
    assert not modp or onto, "mod-p surjectivity must imply surjectivity"
    return modp, onto


# ---------------------------------------------------------------------------
# four-term sequences (finite ends)


def check_four_term_conclusion(b, c, p):
    """For an exact A -> B -> C -> D with finite ends, l1(B) = 0 and l0(B)
    finitely generated force the same for C.  The checker evaluates the
    conclusion on the middle terms.

    Returns (l1(C) trivial, l0(C) finitely generated as a p-adic module,
    l0(C)); the callers generate sequences satisfying the hypotheses.
    """
    if not (l1(b, p).is_trivial and isinstance(l0(b, p), PadicModule)):
        raise ValueError("hypotheses on B fail")
    lc = l0(c, p)
    return l1(c, p).is_trivial, isinstance(lc, PadicModule), lc
