"""Finitely generated abelian groups: canonical forms, explicit maps, and
the bifunctors Hom, Ext, Tor, tensor.

Groups are stored canonically (free rank + invariant-factor chain), so
isomorphism is field equality.  Maps carry integer matrices against the
standard generators: free generators first, then torsion generators in
ascending divisor order.  All the set-level questions about maps (kernels,
images, exactness) reduce to lattice algebra on lifted matrices with the
torsion relations adjoined.

The bifunctors are computed by atom tables plus additivity; the independent
resolution/enumeration oracles live in the test suite and the verification
harness, guarding the tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from .linalg import (
    ZZ,
    IntMatrix,
    SmithForm,
    column_span_basis,
    factorint,
    smith_normal_form,
)
from .primes import PrimeSet


def _canonical_chain(orders):
    """Invariant-factor chain from an arbitrary multiset of orders >= 2.

    For each prime, the exponent multiset is matched greedily: the largest
    exponents of every prime combine into the largest factor, and so on.

    >>> _canonical_chain([4, 6])
    (2, 12)
    >>> _canonical_chain([2, 3])
    (6,)
    """
    exps = {}
    for d in orders:
        if d < 2:
            raise ValueError("torsion orders must be >= 2, got %r" % (d,))
        for p, e in factorint(d).items():
            exps.setdefault(p, []).append(e)
    for v in exps.values():
        v.sort(reverse=True)
    depth = max((len(v) for v in exps.values()), default=0)
    chain = []
    for slot in range(depth):
        f = 1
        for p, v in exps.items():
            if slot < len(v):
                f *= p ** v[slot]
        chain.append(f)
    chain.reverse()
    return tuple(chain)


@dataclass(frozen=True)
class FgAbGroup:
    """A finitely generated abelian group in canonical form.

    free_rank is the rank of the free part; torsion is the divisor chain
    d_1 | d_2 | ... with every d_i >= 2.  Two groups are isomorphic iff the
    fields are equal.  Over a prime-field base the same container holds a
    vector space (free_rank = dimension, no torsion).

    >>> FgAbGroup.from_invariants(1, [4, 6])
    FgAbGroup(free_rank=1, torsion=(2, 12))
    >>> str(FgAbGroup.cyclic(6))
    'Z/6'
    """

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion entry %r < 2" % (d,))
            if prev is not None and d % prev:
                raise ValueError("torsion %r is not a divisor chain" % (self.torsion,))
            prev = d

    @classmethod
    def from_invariants(cls, free_rank, orders):
        """Canonicalize an arbitrary multiset of cyclic orders (1s allowed
        and dropped)."""
        return cls(free_rank, _canonical_chain([d for d in orders if d != 1]))

    @classmethod
    def trivial(cls):
        return cls(0, ())

    @classmethod
    def free(cls, r):
        return cls(r, ())

    @classmethod
    def cyclic(cls, n):
        if n < 0:
            raise ValueError("cyclic order must be nonnegative")
        if n == 0:
            return cls(1, ())  # Z, by the usual convention Z/0 = Z
        if n == 1:
            return cls(0, ())
        return cls(0, (n,))

    def direct_sum(self, *others):
        rank = self.free_rank
        orders = list(self.torsion)
        for g in others:
            rank += g.free_rank
            orders.extend(g.torsion)
        return FgAbGroup.from_invariants(rank, orders)

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def exponent(self):
        """Smallest m >= 1 with m * torsion = 0 (the free part is ignored)."""
        return lcm(*self.torsion) if self.torsion else 1

    @property
    def num_generators(self):
        # minimal generator count, by the invariant-factor description
        return self.free_rank + len(self.torsion)

    def generator_orders(self):
        """Orders of the standard generators; 0 marks a free generator."""
        return (0,) * self.free_rank + self.torsion

    def relations_matrix(self):
        """Columns spanning the relation lattice in standard coordinates:
        one column d_i * e_i per torsion generator."""
        n = self.num_generators
        cols = []
        for i, d in enumerate(self.torsion):
            col = [0] * n
            col[self.free_rank + i] = d
            cols.append(col)
        return IntMatrix.from_columns(cols, rows=n)

    def reduce_element(self, vec):
        """Normal form of an element written in standard coordinates."""
        vec = list(vec)
        if len(vec) != self.num_generators:
            raise ValueError("element has wrong length")
        for i, d in enumerate(self.torsion):
            vec[self.free_rank + i] %= d
        return tuple(vec)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%d" % self.free_rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def cokernel_invariants(a, ring=ZZ):
    """coker(a) as a canonical group (module) over the ring.

    >>> cokernel_invariants(IntMatrix([[6]]))
    FgAbGroup(free_rank=0, torsion=(6,))
    >>> cokernel_invariants(IntMatrix([[2, 0], [0, 0]]))
    FgAbGroup(free_rank=1, torsion=(2,))
    >>> cokernel_invariants(IntMatrix([[1]]))
    FgAbGroup(free_rank=0, torsion=())
    """
    f = smith_normal_form(a, ring)
    return FgAbGroup(a.rows - f.rank, f.torsion_factors)


def from_presentation(a, ring=ZZ):
    """Group presented by relation matrix a (generators = rows).

    >>> from_presentation(IntMatrix([[2, 1], [0, 3]]))
    FgAbGroup(free_rank=0, torsion=(6,))
    >>> from_presentation(IntMatrix.zero(2, 0))
    FgAbGroup(free_rank=2, torsion=())
    """
    return cokernel_invariants(a, ring)


# ---------------------------------------------------------------------------
# bifunctors by atom table + additivity


def _pairwise(a, b, rule):
    free = 0
    tors = []
    for x in a.generator_orders():
        for y in b.generator_orders():
            o = rule(x, y)
            if o == 0:
                free += 1
            elif o > 1:
                tors.append(o)
    return FgAbGroup.from_invariants(free, tors)


def hom(a, b):
    """Hom(a, b).  Atoms: Hom(Z,B)=B, Hom(Z/a,Z)=0, Hom(Z/a,Z/b)=Z/gcd.

    >>> hom(FgAbGroup.cyclic(4), FgAbGroup.cyclic(6))
    FgAbGroup(free_rank=0, torsion=(2,))
    >>> hom(FgAbGroup.cyclic(5), FgAbGroup.free(1))
    FgAbGroup(free_rank=0, torsion=())
    """
    return _pairwise(a, b, lambda x, y: y if x == 0 else (1 if y == 0 else gcd(x, y)))


def ext(a, b):
    """Ext(a, b).  Atoms: Ext(Z,-)=0, Ext(Z/a,Z)=Z/a, Ext(Z/a,Z/b)=Z/gcd.

    >>> ext(FgAbGroup.cyclic(4), FgAbGroup.cyclic(6))
    FgAbGroup(free_rank=0, torsion=(2,))
    >>> ext(FgAbGroup.cyclic(6), FgAbGroup.free(1))
    FgAbGroup(free_rank=0, torsion=(6,))
    """
    return _pairwise(a, b, lambda x, y: 1 if x == 0 else (x if y == 0 else gcd(x, y)))


def tor(a, b):
    """Tor(a, b).  Atoms: Tor(Z,-)=0, Tor(Z/a,Z/b)=Z/gcd.

    >>> tor(FgAbGroup.cyclic(4), FgAbGroup.cyclic(6))
    FgAbGroup(free_rank=0, torsion=(2,))
    >>> tor(FgAbGroup.cyclic(2), FgAbGroup.cyclic(3)).is_trivial
    True
    """
    return _pairwise(a, b, lambda x, y: 1 if x == 0 or y == 0 else gcd(x, y))


def tensor(a, b):
    """a (x) b.  Atoms: Z(x)B=B, Z/a(x)Z/b=Z/gcd.

    >>> tensor(FgAbGroup.cyclic(4), FgAbGroup.cyclic(6))
    FgAbGroup(free_rank=0, torsion=(2,))
    >>> tensor(FgAbGroup.free(2), FgAbGroup.cyclic(3))
    FgAbGroup(free_rank=0, torsion=(3, 3))
    """

    def rule(x, y):
        if x == 0 and y == 0:
            return 0
        if x == 0:
            return y
        if y == 0:
            return x
        return gcd(x, y)

    return _pairwise(a, b, rule)


def mod_power(a, m):
    """a / m*a in canonical form (m >= 1).

    >>> mod_power(FgAbGroup(1, (12,)), 4)
    FgAbGroup(free_rank=0, torsion=(4, 4))
    """
    if m < 1:
        raise ValueError("modulus must be >= 1")
    orders = [m] * a.free_rank + [gcd(d, m) for d in a.torsion]
    return FgAbGroup.from_invariants(0, orders)


def ann_power(a, m):
    """The m-torsion subgroup a[m] = {x : m*x = 0} (m >= 1).

    >>> ann_power(FgAbGroup.cyclic(12), 4)
    FgAbGroup(free_rank=0, torsion=(4,))
    >>> ann_power(FgAbGroup.free(3), 10).is_trivial
    True
    """
    if m < 1:
        raise ValueError("modulus must be >= 1")
    return FgAbGroup.from_invariants(0, [gcd(d, m) for d in a.torsion])


def localize_group(a, primes):
    """a with the given primes inverted: Q-torsion dies, free rank survives.

    >>> localize_group(FgAbGroup.cyclic(12), {3})
    FgAbGroup(free_rank=0, torsion=(4,))
    >>> localize_group(FgAbGroup.cyclic(8), {2}).is_trivial
    True
    """
    q = PrimeSet.from_iterable(primes)
    return FgAbGroup.from_invariants(
        a.free_rank, [d // q.q_factor(d) for d in a.torsion]
    )


# ---------------------------------------------------------------------------
# presentations with tracked generators


class QuotientPresentation:
    """Z^n modulo the column span of a relation matrix, with canonical
    generators expressed in ambient coordinates and a classifier sending any
    ambient vector to its coordinates on those generators.

    Supports the integer base and prime fields (where the quotient is a
    vector space).  This is the engine behind homology generators, subgroup
    extraction, and quotient projections.
    """

    def __init__(self, n, relations, ring=ZZ):
        if relations.rows != n:
            raise ValueError("relations must live in the rank-%d ambient" % n)
        self.n = n
        self.ring = ring
        self.form = smith_normal_form(relations, ring)
        r = self.form.rank
        self._free_idx = list(range(r, n))
        if ring.is_field:
            self._tors_idx = []
            self.group = FgAbGroup(n - r, ())
        else:
            # invariant_factors are already normalized for the ring, so
            # unit factors (possibly after inverting primes) drop out here
            self._tors_idx = [
                i for i in range(r) if self.form.invariant_factors[i] != 1
            ]
            self.group = FgAbGroup(
                n - r,
                tuple(self.form.invariant_factors[i] for i in self._tors_idx),
            )

    @property
    def generator_indices(self):
        return self._free_idx + self._tors_idx

    def generator_columns(self):
        """Ambient representatives of the canonical generators, free first
        then torsion in ascending order, as matrix columns."""
        cols = self.form.u_inv.select_columns(self.generator_indices)
        if self.ring.kind == "mod":
            return cols.mod(self.ring.p)
        return cols

    def classify(self, vec):
        """Coordinates of an ambient vector's class on the canonical
        generators (torsion coordinates reduced mod their orders)."""
        w = self.form.u.apply_vector(vec)
        if self.ring.kind == "mod":
            p = self.ring.p
            return tuple(w[i] % p for i in self._free_idx)
        out = [w[i] for i in self._free_idx]
        for i in self._tors_idx:
            out.append(w[i] % self.form.invariant_factors[i])
        return tuple(out)

    def classify_matrix(self, mat):
        cols = [self.classify(mat.column(j)) for j in range(mat.cols)]
        return IntMatrix.from_columns(cols, rows=self.group.num_generators)


# ---------------------------------------------------------------------------
# explicit maps


class GroupMap:
    """A homomorphism between canonical groups, as a matrix on standard
    generators.  The matrix respects torsion orders (checked at
    construction) and torsion rows are stored reduced mod their orders.

    The optional ring localizes the lattice algebra: over LOCAL_AT(p) the
    same container serves for maps of Z_p-modules with p-power torsion.

    >>> times6 = GroupMap(FgAbGroup.free(1), FgAbGroup.free(1), IntMatrix([[6]]))
    >>> times6.cokernel()
    FgAbGroup(free_rank=0, torsion=(6,))
    >>> red = GroupMap(FgAbGroup.cyclic(4), FgAbGroup.cyclic(2), IntMatrix([[1]]))
    >>> red.kernel()
    FgAbGroup(free_rank=0, torsion=(2,))
    """

    __slots__ = ("source", "target", "matrix", "ring")

    def __init__(self, source, target, matrix, ring=ZZ):
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix(matrix)
        if matrix.shape != (target.num_generators, source.num_generators):
            raise ValueError(
                "matrix shape %r, expected %r"
                % (matrix.shape, (target.num_generators, source.num_generators))
            )
        if ring.kind == "mod":
            raise ValueError("GroupMap lattice algebra needs Z or a localization")
        rows = [list(r) for r in matrix.data]
        tgt_orders = target.generator_orders()
        src_orders = source.generator_orders()
        # normalize torsion rows mod the (ring-stripped) order
        norm_orders = [
            ring.normalize_factor(o) if o else 0 for o in tgt_orders
        ]
        for i, o in enumerate(norm_orders):
            if o > 1:
                rows[i] = [x % o for x in rows[i]]
            elif o == 1:
                rows[i] = [0] * len(rows[i])
        for j, a in enumerate(src_orders):
            if a == 0:
                continue
            a = ring.normalize_factor(a)
            for i, o in enumerate(norm_orders):
                c = a * rows[i][j]
                if o == 0:
                    if c != 0:
                        raise ValueError(
                            "generator %d of order %d cannot hit a free "
                            "generator" % (j, a)
                        )
                elif o > 1 and not _divides_up_to_units(o, c):
                    raise ValueError(
                        "entry (%d,%d) violates torsion orders" % (i, j)
                    )
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", IntMatrix(rows, shape=matrix.shape))
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("GroupMap is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, GroupMap)
            and self.source == other.source
            and self.target == other.target
            and self.ring == other.ring
            and self.matrix == other.matrix
        )

    def __repr__(self):
        return "GroupMap(%s -> %s, %r)" % (self.source, self.target, self.matrix)

    @classmethod
    def zero(cls, source, target, ring=ZZ):
        return cls(
            source,
            target,
            IntMatrix.zero(target.num_generators, source.num_generators),
            ring,
        )

    @classmethod
    def identity(cls, group, ring=ZZ):
        return cls(group, group, IntMatrix.identity(group.num_generators), ring)

    def __call__(self, vec):
        return self.target.reduce_element(self.matrix.apply_vector(vec))

    def compose(self, inner):
        """self o inner (inner applied first)."""
        if inner.target != self.source or inner.ring != self.ring:
            raise ValueError("composition endpoints do not match")
        return GroupMap(
            inner.source, self.target, self.matrix @ inner.matrix, self.ring
        )

    def is_zero_map(self):
        return self.matrix.is_zero()

    def _with_relations(self):
        return self.matrix.hstack(self.target.relations_matrix())

    def kernel_lattice(self):
        """Columns generating {x : f(x) = 0} in source coordinates (the
        source relation lattice is always contained in it)."""
        full = smith_normal_form(self._with_relations(), self.ring).kernel_basis()
        m = self.source.num_generators
        proj = full.select_rows(range(m)) if full.cols else IntMatrix.zero(m, 0)
        return proj.hstack(self.source.relations_matrix())

    def kernel(self):
        """ker(f) as a canonical group."""
        return _lattice_quotient(
            self.kernel_lattice(), self.source.relations_matrix(), self.ring
        )

    def cokernel(self):
        return cokernel_invariants(self._with_relations(), self.ring)

    def image(self):
        """im(f) as a canonical subgroup of the target."""
        return _lattice_quotient(
            self._with_relations(), self.target.relations_matrix(), self.ring
        )

    def is_injective(self):
        return self.kernel().is_trivial

    def is_surjective(self):
        return self.cokernel().is_trivial


def _divides_up_to_units(d, c):
    # whether d | c * u for some unit u; d is already ring-normalized, so
    # only the primes of d matter
    if c == 0:
        return True
    for p, e in factorint(d).items():
        k = 0
        x = c
        while x % p == 0 and k < e:
            x //= p
            k += 1
        if k < e:
            return False
    return True


def _integerize_columns(cols, ring):
    out = []
    for col in cols:
        den = 1
        for x in col:
            den = lcm(den, getattr(x, "denominator", 1))
        if den != 1 and not ring.is_unit(den):
            raise ValueError("column denominator %d is not a unit" % den)
        out.append([int(x * den) for x in col])
    return out


def _lattice_quotient(span_matrix, sub_matrix, ring=ZZ):
    """The group (column span of span_matrix) / (column span of sub_matrix),
    assuming the second lattice is contained in the first."""
    basis = column_span_basis(span_matrix)
    if basis.cols == 0:
        return FgAbGroup.trivial()
    sol = smith_normal_form(basis, ring).solve_matrix(sub_matrix)
    if sol is None:
        raise ValueError("sub lattice is not contained in the span")
    if not isinstance(sol, IntMatrix):
        sol = IntMatrix.from_columns(_integerize_columns(sol, ring), rows=basis.cols)
    return cokernel_invariants(sol, ring)


def subgroup_with_embedding(b, gens):
    """The subgroup of b generated by the element columns of gens, plus its
    embedding map, with canonical generators (integer base only).

    >>> g, incl = subgroup_with_embedding(FgAbGroup.cyclic(12), IntMatrix([[4]]))
    >>> g
    FgAbGroup(free_rank=0, torsion=(3,))
    """
    rel_b = b.relations_matrix()
    full = gens.hstack(rel_b)
    basis = column_span_basis(full)
    if basis.cols == 0:
        t = FgAbGroup.trivial()
        return t, GroupMap.zero(t, b)
    expr = smith_normal_form(basis).solve_matrix(rel_b)
    pres = QuotientPresentation(basis.cols, expr)
    sub = pres.group
    embed = basis @ pres.generator_columns()
    return sub, GroupMap(sub, b, embed)


def quotient_with_projection(f):
    """coker(f) with the projection map from f's target (integer base only).

    >>> q, pr = quotient_with_projection(
    ...     GroupMap(FgAbGroup.free(1), FgAbGroup.free(1), IntMatrix([[6]])))
    >>> q
    FgAbGroup(free_rank=0, torsion=(6,))
    """
    n = f.target.num_generators
    pres = QuotientPresentation(n, f._with_relations())
    cols = [pres.classify([1 if i == j else 0 for i in range(n)]) for j in range(n)]
    proj = IntMatrix.from_columns(cols, rows=pres.group.num_generators)
    return pres.group, GroupMap(f.target, pres.group, proj)


def exact_at(f, g):
    """Whether the pair A --f--> B --g--> C is exact at B (im f = ker g).

    >>> z, z6 = FgAbGroup.free(1), FgAbGroup.cyclic(6)
    >>> f = GroupMap(z, z, IntMatrix([[6]]))
    >>> g = GroupMap(z, z6, IntMatrix([[1]]))
    >>> exact_at(f, g)
    True
    """
    if f.target != g.source or f.ring != g.ring:
        raise ValueError("maps do not compose")
    if not g.compose(f).is_zero_map():
        return False
    from .linalg import span_contains

    return span_contains(f._with_relations(), g.kernel_lattice(), f.ring)


def hom_generator_data(a, b):
    """The standard generating homs of Hom(a, b): for compatible generator
    pairs (j, l) the hom sending gen_j to mult * gen_l, with its order.

    Returns a list of (j, l, order, mult); order 0 means infinite.  Pairs
    with a torsion source and free target admit no nonzero hom and are
    omitted; so are pairs of order 1.
    """
    out = []
    src = a.generator_orders()
    tgt = b.generator_orders()
    for j, aj in enumerate(src):
        for l, bl in enumerate(tgt):
            if aj == 0:
                out.append((j, l, bl, 1))
            elif bl != 0:
                g = gcd(aj, bl)
                if g > 1:
                    out.append((j, l, g, bl // g))
    return out


def ext_generator_data(a, b):
    """Generators of Ext(a, b) read from the standard presentation: one for
    each (torsion generator j of a, generator l of b), of order
    gcd(a_j, b_l) (or a_j when l is free).  Order-1 entries are omitted.

    Returns a list of (j, l, order) with j indexing a's torsion block.
    """
    out = []
    tgt = b.generator_orders()
    for j, aj in enumerate(a.torsion):
        for l, bl in enumerate(tgt):
            o = aj if bl == 0 else gcd(aj, bl)
            if o > 1:
                out.append((j, l, o))
    return out
