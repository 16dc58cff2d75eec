"""Exact linear algebra over Z and its arithmetic localizations.

Everything here is integer arithmetic: no floats, no modular shortcuts
except where the ground ring itself is a prime field.  The ground rings are

    Z           the integers
    Z[1/Q]      a finite set Q of primes inverted
    Z_(p)       the local ring at p (every prime except p inverted)
    F_p         the prime field, for mod-p ranks

The workhorse is Smith normal form with full transform tracking: for an
integer matrix ``a`` we produce unimodular ``u``, ``v`` (and their inverses)
with ``u @ a @ v`` diagonal, nonnegative, and each diagonal entry dividing
the next.  Localized rings reuse the integer computation and only change
which diagonal entries count as units; the prime field gets its own
elimination mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def xgcd(a, b):
    """Extended gcd: returns (g, x, y) with g = gcd(a, b) = x*a + y*b, g >= 0.

    >>> xgcd(12, 18)
    (6, -1, 1)
    >>> g, x, y = xgcd(-4, 0)
    >>> (g, x * -4 + y * 0)
    (4, 4)
    """
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def is_prime(n):
    """Deterministic primality by trial division; fine at workbench scale.

    >>> [k for k in range(2, 30) if is_prime(k)]
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    """
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorint(n):
    """Prime factorization of a positive integer as an ordered dict p -> e.

    >>> factorint(720)
    {2: 4, 3: 2, 5: 1}
    >>> factorint(1)
    {}
    """
    if n <= 0:
        raise ValueError("factorint needs a positive integer, got %r" % (n,))
    out = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    # wheel over 6k +- 1; n is at most a product of workbench-sized orders
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return dict(sorted(out.items()))


def valuation(n, p):
    """Largest e with p^e dividing n (n nonzero).

    >>> valuation(48, 2)
    4
    """
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def strip_primes(n, primes):
    """Remove all factors of the given primes from n > 0.

    >>> strip_primes(720, (2, 3))
    5
    """
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def prime_part(n, p):
    """The p-power part of n > 0: p ** valuation(n, p).

    >>> prime_part(720, 2)
    16
    """
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


class IntMatrix:
    """Immutable integer matrix.  Zero-row and zero-column shapes are legal
    and show up constantly (differentials off the support of a complex).

    >>> a = IntMatrix([[1, 2], [3, 4]])
    >>> a @ IntMatrix.identity(2) == a
    True
    >>> a.transpose().data
    ((1, 3), (2, 4))
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, shape=None):
        rows = []
        for r in data:
            row = tuple(r)
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError("matrix entries must be int, got %r" % (x,))
            rows.append(row)
        if shape is None:
            nr = len(rows)
            nc = len(rows[0]) if rows else 0
        else:
            nr, nc = shape
        if len(rows) != nr or any(len(r) != nc for r in rows):
            raise ValueError("ragged or mis-shaped matrix data")
        object.__setattr__(self, "rows", nr)
        object.__setattr__(self, "cols", nc)
        object.__setattr__(self, "data", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def zero(cls, rows, cols):
        return cls([(0,) * cols] * rows, shape=(rows, cols))

    @classmethod
    def identity(cls, n):
        return cls([tuple(1 if i == j else 0 for j in range(n)) for i in range(n)])

    @classmethod
    def diagonal(cls, entries, shape=None):
        entries = list(entries)
        n = len(entries)
        nr, nc = shape if shape is not None else (n, n)
        if n > min(nr, nc):
            raise ValueError("too many diagonal entries for shape")
        return cls(
            [tuple(entries[i] if i == j and i < n else 0 for j in range(nc)) for i in range(nr)],
            shape=(nr, nc),
        )

    @classmethod
    def from_columns(cls, columns, rows=None):
        cols = [tuple(c) for c in columns]
        if rows is None:
            if not cols:
                raise ValueError("cannot infer row count from zero columns")
            rows = len(cols[0])
        if any(len(c) != rows for c in cols):
            raise ValueError("ragged columns")
        return cls([tuple(c[i] for c in cols) for i in range(rows)], shape=(rows, len(cols)))

    @classmethod
    def assemble(cls, grid):
        """Build a block matrix from a grid of IntMatrix / None (None = zero
        block, its shape inferred from the other blocks in its band)."""
        nbr = len(grid)
        nbc = len(grid[0]) if nbr else 0
        if any(len(row) != nbc for row in grid):
            raise ValueError("ragged block grid")
        heights = [None] * nbr
        widths = [None] * nbc
        for i, row in enumerate(grid):
            for j, b in enumerate(row):
                if b is None:
                    continue
                if heights[i] is None:
                    heights[i] = b.rows
                elif heights[i] != b.rows:
                    raise ValueError("inconsistent block heights in band %d" % i)
                if widths[j] is None:
                    widths[j] = b.cols
                elif widths[j] != b.cols:
                    raise ValueError("inconsistent block widths in band %d" % j)
        if any(h is None for h in heights) or any(w is None for w in widths):
            raise ValueError("a fully-None band has no inferable shape")
        out = []
        for i, row in enumerate(grid):
            for r in range(heights[i]):
                line = []
                for j, b in enumerate(row):
                    if b is None:
                        line.extend([0] * widths[j])
                    else:
                        line.extend(b.data[r])
                out.append(tuple(line))
        return cls(out, shape=(sum(heights), sum(widths)))

    @classmethod
    def block_diagonal(cls, blocks):
        blocks = list(blocks)
        grid = [[b if i == j else None for j in range(len(blocks))] for i, b in enumerate(blocks)]
        if not blocks:
            return cls.zero(0, 0)
        return cls.assemble(grid)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.shape == other.shape
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        if self.rows and self.cols:
            return "IntMatrix(%s)" % ([list(r) for r in self.data],)
        return "IntMatrix(%s, shape=%r)" % ([list(r) for r in self.data], self.shape)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %r + %r" % (self.shape, other.shape))
        return IntMatrix(
            [tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.data, other.data)],
            shape=self.shape,
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return IntMatrix([tuple(-x for x in r) for r in self.data], shape=self.shape)

    def scale(self, k):
        return IntMatrix([tuple(k * x for x in r) for r in self.data], shape=self.shape)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch %r @ %r" % (self.shape, other.shape))
        bt = other.transpose().data
        return IntMatrix(
            [tuple(sum(x * y for x, y in zip(r, c)) for c in bt) for r in self.data],
            shape=(self.rows, other.cols),
        )

    def transpose(self):
        return IntMatrix(
            [tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)],
            shape=(self.cols, self.rows),
        )

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def select_columns(self, js):
        return IntMatrix(
            [tuple(r[j] for j in js) for r in self.data], shape=(self.rows, len(js))
        )

    def select_rows(self, iis):
        return IntMatrix([self.data[i] for i in iis], shape=(len(iis), self.cols))

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return IntMatrix(
            [r + s for r, s in zip(self.data, other.data)],
            shape=(self.rows, self.cols + other.cols),
        )

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return IntMatrix(self.data + other.data, shape=(self.rows + other.rows, self.cols))

    def kronecker(self, other):
        """Kronecker product; (self kron other)[(i,k),(j,l)] = self[i][j] * other[k][l].

        >>> IntMatrix([[1, 2]]).kronecker(IntMatrix([[3], [4]])).data
        ((3, 6), (4, 8))
        """
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                out.append(
                    tuple(
                        self.data[i][j] * other.data[k][l]
                        for j in range(self.cols)
                        for l in range(other.cols)
                    )
                )
        return IntMatrix(out, shape=(self.rows * other.rows, self.cols * other.cols))

    def mod(self, p):
        return IntMatrix([tuple(x % p for x in r) for r in self.data], shape=self.shape)

    def is_zero(self):
        return all(x == 0 for r in self.data for x in r)

    def apply_vector(self, vec):
        """Matrix times column vector; entries may be int or Fraction."""
        vec = list(vec)
        if len(vec) != self.cols:
            raise ValueError("vector length %d, expected %d" % (len(vec), self.cols))
        return [sum((x * y for x, y in zip(r, vec)), 0) for r in self.data]

    def max_abs(self):
        return max((abs(x) for r in self.data for x in r), default=0)


def determinant(a):
    """Exact determinant by Bareiss fraction-free elimination.

    >>> determinant(IntMatrix([[2, 0], [0, 6]]))
    12
    >>> determinant(IntMatrix([], shape=(0, 0)))
    1
    """
    if a.rows != a.cols:
        raise ValueError("determinant of non-square matrix")
    n = a.rows
    m = [list(r) for r in a.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * (m[n - 1][n - 1] if n else 1)


# ---------------------------------------------------------------------------
# ground rings


@dataclass(frozen=True)
class BaseRing:
    """A ground ring: Z, Z[1/Q], Z_(p), or F_p.

    `kind` is one of "Z", "inverted", "local_at", "mod".  `primes` is the
    sorted tuple of inverted primes (kind "inverted" only); `p` is the
    distinguished prime for "local_at" and "mod".
    """

    kind: str
    primes: tuple = ()
    p: int = 0

    def __post_init__(self):
        if self.kind == "Z":
            if self.primes or self.p:
                raise ValueError("Z takes no parameters")
        elif self.kind == "inverted":
            ps = tuple(sorted(set(self.primes)))
            for q in ps:
                if not is_prime(q):
                    raise ValueError("not a prime: %r" % (q,))
            object.__setattr__(self, "primes", ps)
        elif self.kind in ("local_at", "mod"):
            if not is_prime(self.p):
                raise ValueError("not a prime: %r" % (self.p,))
        else:
            raise ValueError("unknown ring kind %r" % (self.kind,))

    @property
    def is_field(self):
        return self.kind == "mod"

    def __str__(self):
        if self.kind == "Z":
            return "Z"
        if self.kind == "inverted":
            return "Z[%s]" % ",".join("1/%d" % q for q in self.primes)
        if self.kind == "local_at":
            return "Z_(%d)" % self.p
        return "F_%d" % self.p

    def normalize_factor(self, d):
        """Strip the unit part of a positive integer, leaving the product of
        prime powers that are non-units in this ring.

        >>> BaseRing("inverted", primes=(3,)).normalize_factor(6)
        2
        >>> BaseRing("local_at", p=3).normalize_factor(6)
        3
        >>> BaseRing("mod", p=3).normalize_factor(6)
        1
        """
        if d <= 0:
            raise ValueError("normalize_factor wants a positive integer")
        if self.kind == "Z":
            return d
        if self.kind == "inverted":
            return strip_primes(d, self.primes)
        if self.kind == "local_at":
            return prime_part(d, self.p)
        return 1

    def is_unit(self, x):
        """Whether a nonzero rational is invertible in the ring."""
        if x == 0:
            return False
        if self.kind == "mod":
            return int(x) % self.p != 0
        fr = Fraction(x)
        if not self.contains(fr):
            return False
        return self.normalize_factor(abs(fr.numerator)) == 1

    def contains(self, x):
        """Membership test for int / Fraction values.

        Z[1/Q] holds fractions with Q-supported denominators; Z_(p) holds
        fractions with denominator coprime to p.
        """
        if isinstance(x, int):
            return True
        fr = Fraction(x)
        den = fr.denominator
        if den == 1:
            return True
        if self.kind == "Z" or self.kind == "mod":
            return False
        if self.kind == "inverted":
            return strip_primes(den, self.primes) == 1
        return den % self.p != 0

    def refines(self, other):
        """True when every unit of `other` stays a unit here, i.e. base
        change other -> self is a further localization (or a quotient to F_p
        compatible with other's units)."""
        if other.kind == "Z":
            return True
        if other.kind == "inverted":
            if self.kind == "inverted":
                return set(other.primes) <= set(self.primes)
            if self.kind == "local_at":
                return self.p not in other.primes
            if self.kind == "mod":
                return self.p not in other.primes
            return False
        if other.kind == "local_at":
            if self.kind == "local_at":
                return self.p == other.p
            if self.kind == "mod":
                return self.p == other.p
            return False
        return self == other


ZZ = BaseRing("Z")


def ring_inverted(primes):
    return BaseRing("inverted", primes=tuple(primes))


def ring_local_at(p):
    return BaseRing("local_at", p=p)


def ring_mod(p):
    return BaseRing("mod", p=p)


# ---------------------------------------------------------------------------
# Smith normal form with transform tracking


class _Eliminator:
    """Mutable worker holding a and the four transforms.

    Invariants after every operation:
        u @ a0 @ v == a          (a0 = the input matrix)
        u @ u_inv == identity
        v @ v_inv == identity
    Row operations touch (a, u, u_inv); column operations touch (a, v, v_inv).
    """

    def __init__(self, a):
        self.m = a.rows
        self.n = a.cols
        self.a = [list(r) for r in a.data]
        self.u = [[1 if i == j else 0 for j in range(self.m)] for i in range(self.m)]
        self.ui = [row[:] for row in self.u]
        self.v = [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)]
        self.vi = [row[:] for row in self.v]

    def swap_rows(self, i, j):
        if i == j:
            return
        self.a[i], self.a[j] = self.a[j], self.a[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]
        for r in self.ui:
            r[i], r[j] = r[j], r[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for r in self.a:
            r[i], r[j] = r[j], r[i]
        for r in self.v:
            r[i], r[j] = r[j], r[i]
        self.vi[i], self.vi[j] = self.vi[j], self.vi[i]

    def add_row(self, i, j, q):
        # row_i += q * row_j; inverse transform: u_inv col_j -= q * col_i
        if q == 0:
            return
        ai, aj = self.a[i], self.a[j]
        for k in range(self.n):
            ai[k] += q * aj[k]
        ui_, uj = self.u[i], self.u[j]
        for k in range(self.m):
            ui_[k] += q * uj[k]
        for r in self.ui:
            r[j] -= q * r[i]

    def add_col(self, i, j, q):
        # col_i += q * col_j; inverse transform: v_inv row_j -= q * row_i
        if q == 0:
            return
        for r in self.a:
            r[i] += q * r[j]
        for r in self.v:
            r[i] += q * r[j]
        vi_i, vi_j = self.vi[i], self.vi[j]
        for k in range(self.n):
            vi_j[k] -= q * vi_i[k]

    def negate_row(self, i):
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]
        for r in self.ui:
            r[i] = -r[i]

    def rows_transform(self, i, j, x, y, z, w):
        # rows (i, j) <- (x*ri + y*rj, z*ri + w*rj), with x*w - y*z == 1;
        # u_inv cols (i, j) <- (w*ci - z*cj, -y*ci + x*cj)
        ai, aj = self.a[i], self.a[j]
        self.a[i] = [x * p + y * q for p, q in zip(ai, aj)]
        self.a[j] = [z * p + w * q for p, q in zip(ai, aj)]
        ui_, uj = self.u[i], self.u[j]
        self.u[i] = [x * p + y * q for p, q in zip(ui_, uj)]
        self.u[j] = [z * p + w * q for p, q in zip(ui_, uj)]
        for r in self.ui:
            ci, cj = r[i], r[j]
            r[i] = w * ci - z * cj
            r[j] = -y * ci + x * cj

    def cols_transform(self, i, j, x, y, z, w):
        # cols (i, j) <- (x*ci + y*cj, z*ci + w*cj), with x*w - y*z == 1;
        # v_inv rows (i, j) <- (w*ri - z*rj, -y*ri + x*rj)
        for r in self.a:
            ci, cj = r[i], r[j]
            r[i] = x * ci + y * cj
            r[j] = z * ci + w * cj
        for r in self.v:
            ci, cj = r[i], r[j]
            r[i] = x * ci + y * cj
            r[j] = z * ci + w * cj
        vi_i, vi_j = self.vi[i], self.vi[j]
        self.vi[i] = [w * p - z * q for p, q in zip(vi_i, vi_j)]
        self.vi[j] = [-y * p + x * q for p, q in zip(vi_i, vi_j)]

    def smallest_pivot(self, t):
        """Position of the entry of least nonzero |value| in a[t:, t:]."""
        best = None
        best_val = None
        for i in range(t, self.m):
            row = self.a[i]
            for j in range(t, self.n):
                x = abs(row[j])
                if x and (best_val is None or x < best_val):
                    best_val = x
                    best = (i, j)
                    if x == 1:
                        return best
        return best

    def run(self):
        t = 0
        while t < min(self.m, self.n):
            pos = self.smallest_pivot(t)
            if pos is None:
                break
            while True:
                pos = self.smallest_pivot(t)
                self.swap_rows(t, pos[0])
                self.swap_cols(t, pos[1])
                # clear column t; gcd steps may shrink the pivot
                for i in range(t + 1, self.m):
                    b = self.a[i][t]
                    if b == 0:
                        continue
                    av = self.a[t][t]
                    if b % av == 0:
                        self.add_row(i, t, -(b // av))
                    else:
                        g, x, y = xgcd(av, b)
                        self.rows_transform(t, i, x, y, -(b // g), av // g)
                # clear row t; may reintroduce entries in column t
                for j in range(t + 1, self.n):
                    b = self.a[t][j]
                    if b == 0:
                        continue
                    av = self.a[t][t]
                    if b % av == 0:
                        self.add_col(j, t, -(b // av))
                    else:
                        g, x, y = xgcd(av, b)
                        self.cols_transform(t, j, x, y, -(b // g), av // g)
                if any(self.a[i][t] for i in range(t + 1, self.m)):
                    continue
                # pivot divides the rest of the submatrix, or fold a bad row in
                av = self.a[t][t]
                bad = None
                for i in range(t + 1, self.m):
                    row = self.a[i]
                    for j in range(t + 1, self.n):
                        if row[j] % av:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                self.add_row(t, bad, 1)
            if self.a[t][t] < 0:
                self.negate_row(t)
            t += 1
        return t


@dataclass(frozen=True)
class SmithForm:
    """Smith normal form with unimodular transform witnesses.

    All five matrices are integral.  `u @ a @ v == d` holds exactly over Z
    and its localizations; over F_p it holds mod p and d is the rank normal
    form (ones then zeros).  `invariant_factors` are the diagonal entries of
    d with their unit part stripped for the ring (so they may contain 1s);
    `torsion_factors` drops the 1s.

    `u_inv` and `v_inv` are exact inverses of `u` and `v` (mod p for F_p).
    """

    ring: BaseRing
    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix
    invariant_factors: tuple

    @property
    def rank(self):
        return len(self.invariant_factors)

    @property
    def torsion_factors(self):
        return tuple(f for f in self.invariant_factors if f != 1)

    def kernel_basis(self):
        """Columns of v past the rank: a basis of ker(a) over the ring.

        Over Z and its localizations the columns are an integral basis (the
        kernel is a direct summand); over F_p a basis mod p.
        """
        r = self.rank
        return self.v.select_columns(range(r, self.v.cols))

    def solve(self, b):
        """One solution x of a @ x = b over the ring, or None.

        Over Z the result is a list of ints; over Z[1/Q] and Z_(p) a list of
        Fractions lying in the ring; over F_p a list of residues.  Raises
        ValueError when b has the wrong length or entries outside the ring.
        """
        b = list(b)
        if len(b) != self.u.cols:
            raise ValueError("rhs length %d, expected %d" % (len(b), self.u.cols))
        ring = self.ring
        if ring.kind == "mod":
            p = ring.p
            c = [x % p for x in self.u.apply_vector([int(e) % p for e in b])]
            r = self.rank
            if any(c[i] % p for i in range(r, len(c))):
                return None
            y = [c[i] if i < r else 0 for i in range(self.v.cols)]
            return [x % p for x in self.v.apply_vector(y)]
        vals = []
        for e in b:
            fr = Fraction(e)
            if not ring.contains(fr):
                raise ValueError("rhs entry %r is not in %s" % (e, ring))
            vals.append(fr)
        c = self.u.apply_vector(vals)
        r = self.rank
        if any(c[i] != 0 for i in range(r, len(c))):
            return None
        y = []
        for i in range(self.v.cols):
            if i >= r:
                y.append(Fraction(0))
                continue
            q = c[i] / self.d.data[i][i]
            if not ring.contains(q):
                return None
            y.append(q)
        x = self.v.apply_vector(y)
        if ring.kind == "Z":
            return [int(e) for e in x]
        return [Fraction(e) for e in x]

    def solve_matrix(self, bmat):
        """Solve a @ X = bmat column by column; None if any column fails.
        Integer-valued answers are returned as an IntMatrix; fractional
        answers as a list of columns of Fractions."""
        cols = []
        all_int = True
        for j in range(bmat.cols):
            x = self.solve(bmat.column(j))
            if x is None:
                return None
            cols.append(x)
            all_int = all_int and all(Fraction(e).denominator == 1 for e in x)
        if all_int:
            return IntMatrix.from_columns(
                [[int(e) for e in c] for c in cols], rows=self.v.cols
            )
        return cols


def smith_normal_form(a, ring=ZZ):
    """Smith normal form of `a` over the given ground ring.

    >>> f = smith_normal_form(IntMatrix([[2, 0], [0, 6]]))
    >>> f.invariant_factors
    (2, 6)
    >>> f = smith_normal_form(IntMatrix([[2, 0], [0, 6]]), ring_inverted([3]))
    >>> f.invariant_factors
    (2, 2)
    >>> smith_normal_form(IntMatrix.identity(3)).invariant_factors
    (1, 1, 1)
    >>> smith_normal_form(IntMatrix([[0]])).invariant_factors
    ()
    """
    if ring.kind == "mod":
        return _rank_normal_form_mod(a, ring)
    w = _Eliminator(a)
    r = w.run()
    d = IntMatrix(w.a, shape=a.shape)
    factors = tuple(ring.normalize_factor(d.data[i][i]) for i in range(r))
    return SmithForm(
        ring=ring,
        u=IntMatrix(w.u, shape=(a.rows, a.rows)),
        d=d,
        v=IntMatrix(w.v, shape=(a.cols, a.cols)),
        u_inv=IntMatrix(w.ui, shape=(a.rows, a.rows)),
        v_inv=IntMatrix(w.vi, shape=(a.cols, a.cols)),
        invariant_factors=factors,
    )


def _rank_normal_form_mod(a, ring):
    """Gauss-Jordan over F_p with transform tracking; d = ones then zeros."""
    p = ring.p
    m, n = a.rows, a.cols
    mat = [[x % p for x in r] for r in a.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    ui = [row[:] for row in u]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    vi = [row[:] for row in v]
    t = 0
    while t < min(m, n):
        pos = None
        for j in range(t, n):
            for i in range(t, m):
                if mat[i][j] % p:
                    pos = (i, j)
                    break
            if pos:
                break
        if pos is None:
            break
        i0, j0 = pos
        if i0 != t:
            mat[t], mat[i0] = mat[i0], mat[t]
            u[t], u[i0] = u[i0], u[t]
            for r in ui:
                r[t], r[i0] = r[i0], r[t]
        if j0 != t:
            for r in mat:
                r[t], r[j0] = r[j0], r[t]
            for r in v:
                r[t], r[j0] = r[j0], r[t]
            vi[t], vi[j0] = vi[j0], vi[t]
        piv = mat[t][t] % p
        s = pow(piv, -1, p)
        mat[t] = [(x * s) % p for x in mat[t]]
        u[t] = [(x * s) % p for x in u[t]]
        for r in ui:
            r[t] = (r[t] * piv) % p
        for i in range(m):
            if i == t:
                continue
            q = mat[i][t] % p
            if q == 0:
                continue
            mat[i] = [(x - q * y) % p for x, y in zip(mat[i], mat[t])]
            u[i] = [(x - q * y) % p for x, y in zip(u[i], u[t])]
            for r in ui:
                r[t] = (r[t] + q * r[i]) % p
        for j in range(n):
            if j == t:
                continue
            q = mat[t][j] % p
            if q == 0:
                continue
            for r in mat:
                r[j] = (r[j] - q * r[t]) % p
            for r in v:
                r[j] = (r[j] - q * r[t]) % p
            vi[t] = [(x + q * y) % p for x, y in zip(vi[t], vi[j])]
        t += 1
    d = IntMatrix.diagonal([1] * t, shape=(m, n))
    return SmithForm(
        ring=ring,
        u=IntMatrix(u, shape=(m, m)),
        d=d,
        v=IntMatrix(v, shape=(n, n)),
        u_inv=IntMatrix(ui, shape=(m, m)),
        v_inv=IntMatrix(vi, shape=(n, n)),
        invariant_factors=(1,) * t,
    )


# ---------------------------------------------------------------------------
# derived operations


def matrix_rank(a, ring=ZZ):
    return smith_normal_form(a, ring).rank


def kernel_basis(a, ring=ZZ):
    """Basis of ker(a : R^cols -> R^rows) as matrix columns.

    >>> kernel_basis(IntMatrix([[2, 4]])).cols
    1
    """
    return smith_normal_form(a, ring).kernel_basis()


def cokernel_factors(a, ring=ZZ):
    """Cokernel of a as (free_rank, torsion divisor chain).

    Torsion factors are ring-normalized and > 1, sorted by divisibility.
    Over F_p the answer is (dimension of the cokernel, ()).

    >>> cokernel_factors(IntMatrix([[2, 0], [0, 6]]))
    (0, (2, 6))
    >>> cokernel_factors(IntMatrix([[2, 0], [0, 6]]), ring_inverted([3]))
    (0, (2, 2))
    """
    f = smith_normal_form(a, ring)
    return (a.rows - f.rank, f.torsion_factors)


def solve(a, b, ring=ZZ):
    """One solution of a @ x = b over the ring, or None.

    >>> solve(IntMatrix([[2]]), [3], ring_local_at(3))
    [Fraction(3, 2)]
    >>> solve(IntMatrix([[2]]), [3]) is None
    True
    """
    return smith_normal_form(a, ring).solve(b)


def span_contains(a, bmat, ring=ZZ):
    """Whether every column of bmat lies in the column span of a over ring."""
    f = smith_normal_form(a, ring)
    return all(f.solve(bmat.column(j)) is not None for j in range(bmat.cols))


def column_span_basis(a):
    """Integer basis of the column span lattice of a (the first rank columns
    of a @ v, which realize the diagonal part of the Smith form)."""
    f = smith_normal_form(a)
    av = a @ f.v
    return av.select_columns(range(f.rank))


def is_unimodular(a):
    return a.rows == a.cols and abs(determinant(a)) == 1
