"""Explicit ring and module presentations whose quotients realize the
arithmetic localizations.

Three families, each verified at every truncation by exact linear algebra:

* the divided-power style ring spanned by t_r = t^r / m_r with
  t_r * t_s = m_{r,s} * t_{r+s}, where killing x = t_0 - t_1 leaves a free
  rank-1 quotient mapping onto the Q-local integers;
* the polynomial presentation whose relations t^r = p * t^{r+1} present
  the integers with p inverted;
* the shifted-division presentation (divide-by-t minus p) whose cokernel
  at truncation N is cyclic of order p^(N+1), embedding into the Prufer
  group.

Truncation convention: every computation happens in the degree <= N
lattice using only relations landing inside it; statements are
per-truncation and the colimit behaviour is observed by comparing
consecutive N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .groups import FgAbGroup, QuotientPresentation, cokernel_invariants
from .linalg import IntMatrix, is_prime, matrix_rank
from .primes import PrimeSet


def dp_relation_matrix(primes, n):
    """Matrix of multiplication by x = t_0 - t_1 from degrees <= n-1 into
    degrees <= n: column r is x*t_r = t_r - m_{1,r}*t_{r+1}, with
    m_{1,r} the Q-factor of r+1.

    >>> dp_relation_matrix((), 2).columns()
    [(1, -1, 0), (0, 1, -1)]
    >>> dp_relation_matrix({3}, 1).columns()
    [(1, -1)]
    >>> dp_relation_matrix({2}, 2).columns()
    [(1, -1, 0), (0, 1, -2)]
    """
    if n < 1:
        raise ValueError("truncation degree must be >= 1")
    q = PrimeSet.from_iterable(primes)
    cols = []
    for r in range(n):
        col = [0] * (n + 1)
        col[r] = 1
        col[r + 1] = -q.q_factor(r + 1)
        cols.append(col)
    return IntMatrix.from_columns(cols, rows=n + 1)


@dataclass(frozen=True)
class QuotientCertificate:
    """Cokernel of a truncated presentation together with the image of its
    surviving generator, and a counterexample field that stays None as
    long as the expected shape holds."""

    group: FgAbGroup
    image: Fraction
    counterexample: str | None = None

    @property
    def ok(self):
        return self.counterexample is None


def dp_quotient(primes, n):
    """Quotient of the degree-<=n divided-power lattice by the ideal (x).

    The cokernel must be free of rank 1; the generator's image under
    t_r -> 1/m_r is 1/m_n.  A failure of either expectation is returned
    as a certificate rather than raised: it would falsify the
    presentation.

    >>> dp_quotient({2}, 4).group
    FgAbGroup(free_rank=1, torsion=())
    >>> dp_quotient({2}, 4).image
    Fraction(1, 8)
    >>> dp_quotient((), 7).image
    Fraction(1, 1)
    """
    q = PrimeSet.from_iterable(primes)
    rel = dp_relation_matrix(primes, n)
    m = [q.q_factor(factorial(r)) for r in range(n + 1)]
    phi = [Fraction(1, m[r]) for r in range(n + 1)]
    # phi must kill every relation; this is the identity
    # 1/m_r = m_{1,r} / m_{r+1}
    for j in range(rel.cols):
        if sum(phi[i] * rel.data[i][j] for i in range(n + 1)) != 0:
            return QuotientCertificate(
                cokernel_invariants(rel),
                Fraction(0),
                "phi does not vanish on relation column %d" % j,
            )
    pres = QuotientPresentation(n + 1, rel)
    group = pres.group
    if group != FgAbGroup.free(1):
        return QuotientCertificate(
            group, Fraction(0), "cokernel is %s, not Z" % group
        )
    gen = pres.generator_columns().column(0)
    image = sum(phi[i] * gen[i] for i in range(n + 1))
    expected = Fraction(1, m[n])
    if image != expected and image != -expected:
        return QuotientCertificate(
            group,
            image,
            "generator image %s differs from 1/m_N = %s" % (image, expected),
        )
    return QuotientCertificate(group, abs(image))


def s_inv_p_quotient(p, n):
    """Quotient presenting the integers with p inverted at truncation n:
    relations t^r = p * t^{r+1} for r < n, generator t^n with image p^-n
    under t^r -> p^-r.

    >>> s_inv_p_quotient(2, 1).group
    FgAbGroup(free_rank=1, torsion=())
    >>> s_inv_p_quotient(3, 2).image
    Fraction(1, 9)
    >>> s_inv_p_quotient(2, 0).image
    Fraction(1, 1)
    """
    if not is_prime(p):
        raise ValueError("p must be prime")
    if n < 0:
        raise ValueError("truncation degree must be >= 0")
    cols = []
    for r in range(n):
        col = [0] * (n + 1)
        col[r] = 1
        col[r + 1] = -p
        cols.append(col)
    rel = IntMatrix.from_columns(cols, rows=n + 1)
    phi = [Fraction(1, p**r) for r in range(n + 1)]
    for j in range(rel.cols):
        if sum(phi[i] * rel.data[i][j] for i in range(n + 1)) != 0:
            return QuotientCertificate(
                cokernel_invariants(rel), Fraction(0), "phi misses column %d" % j
            )
    pres = QuotientPresentation(n + 1, rel)
    group = pres.group
    if group != FgAbGroup.free(1):
        return QuotientCertificate(group, Fraction(0), "cokernel is %s" % group)
    gen = pres.generator_columns().column(0)
    image = sum(phi[i] * gen[i] for i in range(n + 1))
    expected = Fraction(1, p**n)
    if image != expected and image != -expected:
        return QuotientCertificate(
            group, image, "generator image %s, expected %s" % (image, expected)
        )
    return QuotientCertificate(group, abs(image))


def s_mod_p_inf_quotient(p, n):
    """Cokernel of (divide-by-t minus p) at truncation n: the matrix sends
    t^0 to -p*t^0 and t^r to t^{r-1} - p*t^r.  It is injective with
    cokernel cyclic of order p^(n+1) generated by t^n, which embeds into
    the Prufer group as the class of p^(-1-n).

    >>> s_mod_p_inf_quotient(3, 0).group
    FgAbGroup(free_rank=0, torsion=(3,))
    >>> s_mod_p_inf_quotient(2, 1).group
    FgAbGroup(free_rank=0, torsion=(4,))
    >>> s_mod_p_inf_quotient(2, 3).group
    FgAbGroup(free_rank=0, torsion=(16,))
    """
    if not is_prime(p):
        raise ValueError("p must be prime")
    if n < 0:
        raise ValueError("truncation degree must be >= 0")
    cols = []
    for r in range(n + 1):
        col = [0] * (n + 1)
        if r:
            col[r - 1] = 1
        col[r] -= p
        cols.append(col)
    mat = IntMatrix.from_columns(cols, rows=n + 1)
    if matrix_rank(mat) != n + 1:
        return QuotientCertificate(
            cokernel_invariants(mat), Fraction(0), "matrix is not injective"
        )
    # phi(t^r) = p^(-1-r) + Z; relations map to integers, hence to 0
    phi = [Fraction(1, p ** (r + 1)) for r in range(n + 1)]
    for j in range(mat.cols):
        v = sum(phi[i] * mat.data[i][j] for i in range(n + 1))
        if v.denominator != 1:
            return QuotientCertificate(
                cokernel_invariants(mat),
                Fraction(0),
                "phi misses column %d" % j,
            )
    pres = QuotientPresentation(n + 1, mat)
    group = pres.group
    expected = FgAbGroup.cyclic(p ** (n + 1))
    if group != expected:
        return QuotientCertificate(
            group, Fraction(0), "cokernel is %s, expected %s" % (group, expected)
        )
    gen = pres.generator_columns().column(0)
    image = sum(phi[i] * gen[i] for i in range(n + 1))
    num = image - int(image)  # reduce into [0, 1): the class mod Z
    if num < 0:
        num += 1
    # the class must have exact order p^(n+1) in Q/Z
    if num.denominator != p ** (n + 1):
        return QuotientCertificate(
            group, num, "generator class %s has wrong order" % num
        )
    return QuotientCertificate(group, num)


# ---------------------------------------------------------------------------
# truncated polynomial modules and the division operator


@dataclass(frozen=True)
class PolyModule:
    """An integer polynomial truncated at a degree bound, as the
    coefficient tuple (c_0, ..., c_bound).

    >>> f = PolyModule.from_coeffs([1, 2, 3], 4)
    >>> f.coeffs
    (1, 2, 3, 0, 0)
    """

    coeffs: tuple
    bound: int

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("negative degree bound")
        if len(self.coeffs) != self.bound + 1:
            raise ValueError("coefficient tuple must have length bound+1")
        for c in self.coeffs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise ValueError("coefficients must be integers")

    @classmethod
    def from_coeffs(cls, cs, bound):
        cs = list(cs)
        if len(cs) > bound + 1:
            raise ValueError("support exceeds the degree bound")
        return cls(tuple(cs) + (0,) * (bound + 1 - len(cs)), bound)

    @classmethod
    def zero(cls, bound):
        return cls((0,) * (bound + 1), bound)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def degree(self):
        for i in range(self.bound, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    def __add__(self, other):
        if self.bound != other.bound:
            raise ValueError("bound mismatch")
        return PolyModule(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.bound
        )

    def scale(self, k):
        return PolyModule(tuple(k * c for c in self.coeffs), self.bound)


def truncated_division(f):
    """(f(t) - f(0)) / t: shift coefficients down one degree.

    >>> truncated_division(PolyModule.from_coeffs([1, 2, 3], 3)).coeffs
    (2, 3, 0, 0)
    >>> truncated_division(PolyModule.from_coeffs([7], 2)).is_zero()
    True
    """
    return PolyModule(f.coeffs[1:] + (0,), f.bound)


def mu_t(f):
    """Multiplication by t; raises when the top coefficient would fall off
    the truncation (the operator is only defined below the bound).

    >>> mu_t(PolyModule.from_coeffs([2, 3], 3)).coeffs
    (0, 2, 3, 0)
    """
    if f.coeffs[-1] != 0:
        raise ValueError("multiplication by t overflows the truncation")
    return PolyModule((0,) + f.coeffs[:-1], f.bound)


def division_matrix(bound):
    """Matrix of truncated division from degrees <= bound to
    degrees <= bound-1; its kernel is exactly the constants."""
    rows = [
        [1 if j == i + 1 else 0 for j in range(bound + 1)] for i in range(bound)
    ]
    return IntMatrix(rows, shape=(bound, bound + 1))


# ---------------------------------------------------------------------------
# the truncated ring itself


class TruncatedDpRing:
    """The degree-<=N lattice with basis t_0..t_N and multiplication
    t_r * t_s = m_{r,s} * t_{r+s}, defined whenever the product lands
    within the truncation.

    >>> ring = TruncatedDpRing({2}, 6)
    >>> ring.multiply_basis(1, 1)
    (2, 2)
    >>> ring.multiply_basis(2, 3)  # the 2-part of binomial(5, 2)
    (2, 5)
    """

    def __init__(self, primes, n):
        if n < 0:
            raise ValueError("truncation degree must be >= 0")
        self.primes = PrimeSet.from_iterable(primes)
        self.n = n
        self._mm = {}
        for r in range(n + 1):
            for s in range(n + 1 - r):
                self._mm[(r, s)] = self.primes.q_factor(comb(r + s, r))

    def structure_constant(self, r, s):
        if r + s > self.n:
            raise ValueError("product falls outside the truncation")
        return self._mm[(r, s)]

    def multiply_basis(self, r, s):
        """t_r * t_s as (coefficient, basis index)."""
        return self.structure_constant(r, s), r + s

    def multiply(self, f, g):
        """Product of two coefficient vectors; raises when any cross term
        escapes the truncation."""
        out = [0] * (self.n + 1)
        for r, a in enumerate(f):
            if a == 0:
                continue
            for s, b in enumerate(g):
                if b == 0:
                    continue
                c, k = self.multiply_basis(r, s)
                out[k] += a * b * c
        return tuple(out)

    def is_associative_triple(self, r, s, u):
        """Associativity of basis products within the truncation."""
        if r + s + u > self.n:
            raise ValueError("triple product outside the truncation")
        left = self.structure_constant(r, s) * self.structure_constant(r + s, u)
        right = self.structure_constant(s, u) * self.structure_constant(r, s + u)
        return left == right

