"""Deterministic generators for the verification suites.

Every case draws from a Random seeded by a fixed splitting rule, so any
failing case can be replayed from (seed, suite, index) alone, and
parallel or reordered runs see identical inputs.
"""

from __future__ import annotations

import hashlib
import random

from .complexes import ChainComplex, ChainMap, cone, hom_block_layout, hom_complex
from .functors import Atom, CatalogueGroup, PadicModule, SesOfGroups
from .groups import (
    FgAbGroup,
    GroupMap,
    hom_generator_data,
    quotient_with_projection,
    subgroup_with_embedding,
)
from .linalg import ZZ, IntMatrix, kernel_basis


def sub_seed(seed, suite, index):
    """First eight bytes of SHA-256("{seed}:{suite}:{index}"), big-endian.

    >>> sub_seed(42, "chain", 0) == sub_seed(42, "chain", 0)
    True
    >>> sub_seed(42, "chain", 0) != sub_seed(42, "chain", 1)
    True
    """
    digest = hashlib.sha256(f"{seed}:{suite}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def case_rng(seed, suite, index):
    return random.Random(sub_seed(seed, suite, index))


# --- matrices and groups ---------------------------------------------------


def rand_matrix(rng, rows, cols, bound=9):
    return IntMatrix(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)],
        shape=(rows, cols),
    )


def rand_unimodular(rng, n, steps=None):
    """A unimodular matrix and its inverse, from tracked elementary moves."""
    p = IntMatrix.identity(n)
    p_inv = IntMatrix.identity(n)
    if n == 0:
        return p, p_inv
    for _ in range(2 * n if steps is None else steps):
        kind = rng.randrange(3)
        if kind == 0 and n >= 2:  # add c * column i to column j
            i, j = rng.sample(range(n), 2)
            c = rng.choice([-2, -1, 1, 2])
            e = _elementary_add(n, i, j, c)
            e_inv = _elementary_add(n, i, j, -c)
        elif kind == 1 and n >= 2:  # swap two columns
            i, j = rng.sample(range(n), 2)
            perm = list(range(n))
            perm[i], perm[j] = perm[j], perm[i]
            e = IntMatrix.from_columns(
                [[1 if r == perm[j2] else 0 for r in range(n)] for j2 in range(n)],
                rows=n,
            )
            e_inv = e
        else:  # negate a column
            i = rng.randrange(n)
            e = IntMatrix.diagonal([-1 if k == i else 1 for k in range(n)])
            e_inv = e
        p = p @ e
        p_inv = e_inv @ p_inv
    return p, p_inv


def _elementary_add(n, i, j, c):
    data = [[1 if r == s else 0 for s in range(n)] for r in range(n)]
    data[i][j] = c
    return IntMatrix(data)


_TORSION_PRIMES = (2, 3, 5)


def rand_torsion_order(rng, max_exp=3):
    n = 1
    for _ in range(rng.randint(1, 2)):
        p = rng.choice(_TORSION_PRIMES)
        n *= p ** rng.randint(1, max_exp)
    return n


def rand_fg_group(rng, max_rank=2, max_torsion=3):
    """
    >>> g = rand_fg_group(random.Random(7))
    >>> g == FgAbGroup.from_invariants(g.free_rank, g.torsion)
    True
    """
    rank = min(rng.choice([0, 0, 1, 1, 2]), max_rank)
    torsion = [rand_torsion_order(rng) for _ in range(rng.randint(0, max_torsion))]
    return FgAbGroup.from_invariants(rank, torsion)


def rand_finite_group(rng, max_torsion=3):
    torsion = [rand_torsion_order(rng) for _ in range(rng.randint(0, max_torsion))]
    return FgAbGroup.from_invariants(0, torsion)


def rand_group_map(rng, a, b, bound=3):
    """A random well-defined map a -> b: an integer combination of the
    standard generating homs."""
    rows, cols = b.num_generators, a.num_generators
    grid = [[0] * cols for _ in range(rows)]
    for j, l, _order, mult in hom_generator_data(a, b):
        grid[l][j] += rng.randint(-bound, bound) * mult
    return GroupMap(a, b, IntMatrix(grid, shape=(rows, cols)))


def rand_fg_ses(rng):
    """A short exact sequence of finitely generated groups with explicit
    inclusion and projection: a random subgroup of a random middle."""
    b = rand_fg_group(rng)
    n = b.num_generators
    k = rng.randint(0, max(n, 1))
    cols = rand_matrix(rng, n, k, bound=4)
    sub, incl = subgroup_with_embedding(b, cols)
    quo, proj = quotient_with_projection(incl)
    return SesOfGroups(
        CatalogueGroup.from_fg(sub),
        CatalogueGroup.from_fg(b),
        CatalogueGroup.from_fg(quo),
        incl,
        proj,
    )


# --- catalogue modules -----------------------------------------------------


def rand_atom(rng, allow_infinite=True):
    kinds = ["Z", "cyclic", "cyclic"]
    if allow_infinite:
        kinds += ["z_inv_p", "prufer", "Q", "padic"]
    t = rng.choice(kinds)
    if t == "cyclic":
        return Atom(t, n=rand_torsion_order(rng))
    if t in ("z_inv_p", "prufer", "padic"):
        return Atom(t, p=rng.choice(_TORSION_PRIMES))
    return Atom(t)


def rand_catalogue_group(rng, max_atoms=3, allow_infinite=True):
    return CatalogueGroup(
        tuple(rand_atom(rng, allow_infinite) for _ in range(rng.randint(0, max_atoms)))
    )


_FOUR_TERM_PADDING = ("Z", "cyclic", "z_inv_p", "padic", "Q")


def rand_four_term_middle(rng, p):
    """Middle terms (B, C) of an exact A -> B -> C -> D with finite ends
    satisfying the hypotheses at p: derived completion of B is torsion-free
    in degree one and finitely generated in degree zero.

    Built as a random map of finite groups g : B0 -> C0 (so A = ker g and
    D = coker g are finite) optionally padded by an identical catalogue
    summand on both sides, which changes neither end."""
    b0 = rand_finite_group(rng)
    c0 = rand_finite_group(rng)
    rand_group_map(rng, b0, c0)  # the map itself; ends are its ker/coker
    b = CatalogueGroup.from_fg(b0)
    c = CatalogueGroup.from_fg(c0)
    if rng.random() < 0.5:
        t = rng.choice(_FOUR_TERM_PADDING)
        if t == "cyclic":
            pad = Atom(t, n=rand_torsion_order(rng))
        elif t in ("z_inv_p", "padic"):
            pad = Atom(t, p=rng.choice(_TORSION_PRIMES))
        else:
            pad = Atom(t)
        b = CatalogueGroup(b.summands + (pad,))
        c = CatalogueGroup(c.summands + (pad,))
    return b, c


def rand_padic_case(rng, p):
    """(source, target, matrix) for a map of finitely generated p-adic
    modules on standard generators; roughly half the cases are forced
    surjections."""
    def rand_module():
        rank = rng.randint(0, 2)
        torsion = sorted(
            p ** rng.randint(1, 3) for _ in range(rng.randint(0, 2))
        )
        return PadicModule(p, rank, tuple(torsion))

    target = rand_module()
    if rng.random() < 0.5:
        # forced epi: source contains a copy of target; each target
        # generator is hit exactly by one matched source generator, noise
        # goes on the unmatched columns only
        extra = rand_module()
        src_rank = target.zp_rank + extra.zp_rank
        src_tors = sorted(target.p_torsion + extra.p_torsion)
        source = PadicModule(p, src_rank, tuple(src_tors))
        src_sh, tgt_sh = source.shadow_group(), target.shadow_group()
        rows, cols = tgt_sh.num_generators, src_sh.num_generators
        grid = [[0] * cols for _ in range(rows)]
        matched = set()
        for l in range(target.zp_rank):
            grid[l][l] = 1
            matched.add(l)
        tgt_tors = list(target.p_torsion)
        for l_idx in sorted(range(len(tgt_tors)), key=lambda i: -tgt_tors[i]):
            w = tgt_tors[l_idx]
            k = max(
                k
                for k in range(len(src_tors))
                if src_rank + k not in matched and src_tors[k] >= w
            )
            grid[target.zp_rank + l_idx][src_rank + k] = 1
            matched.add(src_rank + k)
        noise = rand_group_map(rng, src_sh, tgt_sh).matrix
        for j in range(cols):
            if j in matched:
                continue
            for i in range(rows):
                grid[i][j] += noise.data[i][j]
        return source, target, IntMatrix(grid, shape=(rows, cols))
    source = rand_module()
    f = rand_group_map(rng, source.shadow_group(), target.shadow_group())
    return source, target, f.matrix


# --- complexes and chain maps ----------------------------------------------


def _disk(degree, base=ZZ):
    return ChainComplex(
        base, {degree: 1, degree - 1: 1}, {degree: IntMatrix([[1]])}
    )


def _moore_piece(order, degree, base=ZZ):
    return ChainComplex(
        base, {degree: 1, degree + 1: 1}, {degree + 1: IntMatrix([[order]])}
    )


def rand_complex(rng, base=ZZ, max_pieces=3, max_exp=2):
    """A random bounded complex: a direct sum of spheres, disks and Moore
    pieces in nearby degrees, conjugated degreewise by unimodular matrices
    (so differentials are dense but homology is controlled)."""
    bottom = rng.randint(-1, 1)
    c = None
    for _ in range(rng.randint(1, max_pieces)):
        deg = bottom + rng.randint(0, 2)
        kind = rng.randrange(3)
        if kind == 0:
            piece = ChainComplex.sphere(deg, base)
        elif kind == 1:
            piece = _disk(deg + 1, base)
        else:
            order = rng.choice(_TORSION_PRIMES) ** rng.randint(1, max_exp)
            piece = _moore_piece(order, deg, base)
        c = piece if c is None else c.direct_sum(piece)
    return conjugate_complex(rng, c)


def conjugate_complex(rng, c):
    """An isomorphic copy of c with basis scrambled in every degree."""
    trans = {
        n: rand_unimodular(rng, c.rank(n)) for n in range(c.bottom, c.top + 1)
    }
    diffs = {}
    for n in range(c.bottom, c.top + 1):
        d = c.differential(n)
        if d.rows == 0 or d.cols == 0:
            continue
        diffs[n] = trans[n - 1][1] @ d @ trans[n][0]
    return ChainComplex(c.base, dict(c.ranks), diffs)


def rand_acyclic_complex(rng):
    """Cone on an identity map, conjugated: exact but not obviously so."""
    c = rand_complex(rng)
    return conjugate_complex(rng, cone(ChainMap.identity(c)))


def rand_chain_map(rng, c, d, bound=2):
    """A random chain map c -> d: an integer combination of a basis for
    the cycle lattice in degree zero of the Hom complex."""
    h = hom_complex(c, d)
    total = h.rank(0)
    if total == 0:
        return ChainMap(c, d, {})
    basis = kernel_basis(h.differential(0))
    vec = [0] * total
    for j in range(basis.cols):
        coeff = rng.randint(-bound, bound)
        if coeff == 0:
            continue
        col = basis.column(j)
        for i in range(total):
            vec[i] += coeff * col[i]
    mats = {}
    for k, rows, cols, off in hom_block_layout(c, d, 0):
        mats[k] = IntMatrix(
            [[vec[off + b * rows + a] for b in range(cols)] for a in range(rows)],
            shape=(rows, cols),
        )
    return ChainMap(c, d, mats)


def rand_prime_subset(rng, pool=_TORSION_PRIMES, allow_empty=True):
    out = [p for p in pool if rng.random() < 0.5]
    if not out and not allow_empty:
        out = [rng.choice(pool)]
    return out
