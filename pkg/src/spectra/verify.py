"""Named verification suites: randomized property checks with
independent oracles, deterministic per (suite, seed, case index).

Each sub-suite runs a loop of generated cases and stops at the first
failure, serializing the failing input for replay.  Canonical suite
names bundle sub-suites per module; `all` runs everything.  Reports are
plain dicts with canonical ordering so identical runs serialize to
identical bytes.
"""

from __future__ import annotations

from fractions import Fraction

from . import gen
from .complexes import (
    ChainMap,
    all_homology,
    base_change,
    chain_contraction,
    check_completed_mod_p,
    check_cw_definition,
    check_cw_minimality,
    check_mod_p_detects_zero,
    check_p_equivalence,
    check_tensor_padic,
    completed_homology,
    cone,
    cone_inclusion,
    cw_structure,
    homology,
    homology_data,
    induced_map,
    mod_p_homology,
    moore_complex,
    p_finite_model,
    tensor as tensor_complex,
    uct_maps_report,
    uct_mod_p_dimension,
)
from .functors import (
    Atom,
    CatalogueGroup,
    PadicModule,
    SesOfGroups,
    check_detect_epi,
    check_four_term_conclusion,
    dp_constants,
    l0,
    l1,
    l0_l1_oracle,
    six_term,
)
from .groups import (
    FgAbGroup,
    GroupMap,
    cokernel_invariants,
    exact_at,
    ext,
    from_presentation,
    hom,
    localize_group,
    mod_power,
    ann_power,
    tensor,
    tor,
)
from .linalg import (
    IntMatrix,
    prime_part,
    ring_inverted,
    smith_normal_form,
    valuation,
)
from .moore_rings import (
    division_matrix,
    dp_quotient,
    dp_relation_matrix,
    s_inv_p_quotient,
    s_mod_p_inf_quotient,
)
from .serialize import (
    complex_to_json,
    group_to_json,
    matrix_to_json,
)

_PRIMES = (2, 3, 5)


# ---------------------------------------------------------------------------
# independent small-scale oracles (no Smith normal form inside)


def _q_rank(m):
    """Rank over the rationals by fraction Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in m.data]
    rank = 0
    for col in range(m.cols):
        pivot = next((r for r in range(rank, m.rows) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for r in range(m.rows):
            if r != rank and rows[r][col]:
                f = rows[r][col] / pr[col]
                rows[r] = [a - f * b for a, b in zip(rows[r], pr)]
        rank += 1
    return rank


def _q_det(m):
    rows = [[Fraction(x) for x in row] for row in m.data]
    n = m.rows
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, n):
            f = rows[r][col] / rows[col][col]
            rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return det


def _adjugate(m):
    """Adjugate via cofactors (n <= 3)."""
    n = m.rows

    def minor(i, j):
        sub = [
            [m.data[r][c] for c in range(n) if c != j]
            for r in range(n)
            if r != i
        ]
        if len(sub) == 0:
            return 1
        if len(sub) == 1:
            return sub[0][0]
        return sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]

    return IntMatrix(
        [[(-1) ** (i + j) * minor(j, i) for j in range(n)] for i in range(n)],
        shape=(n, n),
    )


def brute_cokernel(m):
    """Invariant factors of Z^rows / column-span for a small matrix with
    finite cokernel, by exhaustive enumeration: the quotient embeds in
    (Z/det)^rows via the adjugate, its elements are found by closure,
    and invariant factors are recovered from order statistics.

    Returns None when the cokernel is infinite (not enumerable).
    """
    n = m.rows
    if n == 0:
        return ()
    if _q_rank(m) < n:
        return None
    # square up: a full-row-rank matrix has a square submatrix of the
    # same column span plus extra columns; the embedding only needs any
    # full-rank square part, the closure uses every column
    det = None
    if m.rows == m.cols:
        square = m
    else:
        # pick n independent columns by fraction elimination
        cols = []
        for j in range(m.cols):
            trial = cols + [j]
            sub = m.select_columns(trial)
            if _q_rank(sub) == len(trial):
                cols = trial
            if len(cols) == n:
                break
        square = m.select_columns(cols)
    det_f = _q_det(square)
    det = abs(int(det_f))
    if det == 0:
        return None
    adj = _adjugate(square)
    # generators of the quotient: images of the standard basis
    def embed(vec):
        return tuple(
            sum(adj.data[i][k] * vec[k] for k in range(n)) % det for i in range(n)
        )

    gens = [embed([1 if k == i else 0 for k in range(n)]) for i in range(n)]
    # relations from ALL original columns are already zero in the embed
    # image iff the column lies in the span of `square`; fold them in by
    # closing over the subgroup generated by gens modulo the images of
    # the extra columns
    extra = [
        embed([m.data[i][j] for i in range(n)]) for j in range(m.cols)
    ]
    zero = tuple([0] * n)
    group = {zero}
    frontier = [zero]
    step_gens = gens + extra
    while frontier:
        x = frontier.pop()
        for g in step_gens:
            y = tuple((a + b) % det for a, b in zip(x, g))
            if y not in group:
                group.add(y)
                frontier.append(y)
    # quotient by the subgroup generated by the extra columns
    sub = {zero}
    frontier = [zero]
    for_g = extra
    while frontier:
        x = frontier.pop()
        for g in for_g:
            y = tuple((a + b) % det for a, b in zip(x, g))
            if y not in sub:
                sub.add(y)
                frontier.append(y)
    # coset orders: order of x + sub = least k with k*x in sub
    orders = []
    reps_seen = set()
    for x in group:
        canon = min(tuple((a + b) % det for a, b in zip(x, s)) for s in sub)
        if canon in reps_seen:
            continue
        reps_seen.add(canon)
        k = 1
        y = x
        while y not in sub:
            k += 1
            y = tuple((a + b) % det for a, b in zip(y, x))
        orders.append(k)
    assert len(orders) == len(group) // len(sub)
    return _invariants_from_orders(orders)


def _invariants_from_orders(orders):
    """Invariant factors of a finite abelian group from the multiset of
    its element orders: #{x : p^k x = 0} determines the p-exponents."""
    order = len(orders)
    if order == 1:
        return ()
    primes = []
    n = order
    d = 2
    while n > 1:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    per_prime = {}
    for p in primes:
        # counts[k] = #{exponents e_i >= k} = v_p(N_k) - v_p(N_{k-1})
        counts = []
        prev_v = 0
        k = 1
        while True:
            n_k = sum(1 for o in orders if p**k % o == 0)
            v = valuation(n_k, p)
            if v == prev_v:
                break
            counts.append(v - prev_v)
            prev_v = v
            k += 1
        es = []
        counts.append(0)
        for kk in range(len(counts) - 1, 0, -1):
            es.extend([kk] * (counts[kk - 1] - counts[kk]))
        per_prime[p] = sorted(es)
    width = max(len(v) for v in per_prime.values())
    invs = []
    for pos in range(width):
        d_val = 1
        for p, es in per_prime.items():
            idx = len(es) - width + pos
            if idx >= 0:
                d_val *= p ** es[idx]
        invs.append(d_val)
    return tuple(d for d in invs if d > 1)


def brute_hom_order(a, b, limit=200000):
    """|Hom(a, b)| for finite groups by enumerating all generator
    assignments, or None when too large to enumerate."""
    if a.free_rank or b.free_rank:
        return None
    tgt_orders = b.generator_orders()
    total_b = 1
    for o in tgt_orders:
        total_b *= o
    if total_b ** max(len(a.torsion), 1) > limit:
        return None
    # elements of b as coordinate tuples
    elements = [()]
    for o in tgt_orders:
        elements = [e + (k,) for e in elements for k in range(o)]

    def elt_killed_by(e, m):
        return all((m * c) % o == 0 for c, o in zip(e, tgt_orders))

    count = 1
    for aj in a.torsion:
        count *= sum(1 for e in elements if elt_killed_by(e, aj))
    return count


def presented_ext(a, b):
    """Ext(a, b) through presentations: coker of
    [R_a^T (x) I  |  I (x) R_b] on Hom(relations, generators)."""
    ra = a.relations_matrix()
    rb = b.relations_matrix()
    n, k = ra.shape
    mcount = b.num_generators
    left = ra.transpose().kronecker(IntMatrix.identity(mcount))
    right = IntMatrix.identity(k).kronecker(rb)
    return from_presentation(left.hstack(right))


def presented_tensor(a, b):
    ra = a.relations_matrix()
    rb = b.relations_matrix()
    n = a.num_generators
    mcount = b.num_generators
    left = ra.kronecker(IntMatrix.identity(mcount))
    right = IntMatrix.identity(n).kronecker(rb)
    return from_presentation(left.hstack(right))


# ---------------------------------------------------------------------------
# sub-suite runners


def _report(name, seed, cases, checks, failure=None):
    return {
        "suite": name,
        "seed": seed,
        "cases": cases,
        "checks": checks,
        "passed": failure is None,
        "failures": [] if failure is None else [failure],
    }


def _fail(index, detail, payload=None):
    out = {"case": index, "detail": detail}
    if payload is not None:
        out["input"] = payload
    return out


def _suite_snf(seed, cases):
    checks = 0
    for idx in range(cases):
        rng = gen.case_rng(seed, "snf", idx)
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        small = rows <= 3 and cols <= 3
        bound = 4 if small else 9
        a = gen.rand_matrix(rng, rows, cols, bound=bound)
        payload = {"matrix": matrix_to_json(a)}
        form = smith_normal_form(a)
        if form.u @ a @ form.v != form.d:
            return _report("snf", seed, idx, checks, _fail(idx, "u a v != d", payload))
        for mat, inv in ((form.u, form.u_inv), (form.v, form.v_inv)):
            if mat @ inv != IntMatrix.identity(mat.rows):
                return _report(
                    "snf", seed, idx, checks, _fail(idx, "transform not invertible", payload)
                )
            if abs(_q_det(mat)) != 1:
                return _report(
                    "snf", seed, idx, checks, _fail(idx, "transform not unimodular", payload)
                )
        diag = [form.d.data[i][i] for i in range(min(rows, cols))]
        nz = [d for d in diag if d]
        if any(d < 0 for d in diag) or any(
            nz[i + 1] % nz[i] for i in range(len(nz) - 1)
        ):
            return _report(
                "snf", seed, idx, checks, _fail(idx, "divisor chain violated", payload)
            )
        if len(nz) != _q_rank(a):
            return _report("snf", seed, idx, checks, _fail(idx, "rank mismatch", payload))
        checks += 4
        if small:
            grp = cokernel_invariants(a)
            if grp.free_rank != rows - _q_rank(a):
                return _report(
                    "snf", seed, idx, checks, _fail(idx, "free rank mismatch", payload)
                )
            brute = brute_cokernel(a)
            if brute is not None and brute != grp.torsion:
                return _report(
                    "snf",
                    seed,
                    idx,
                    checks,
                    _fail(idx, f"invariants {grp.torsion} != brute {brute}", payload),
                )
            checks += 1
    return _report("snf", seed, cases, checks)


def _suite_groups(seed, cases):
    checks = 0
    for idx in range(cases):
        rng = gen.case_rng(seed, "groups", idx)
        a = gen.rand_fg_group(rng)
        b = gen.rand_fg_group(rng)
        payload = {"a": group_to_json(a), "b": group_to_json(b)}
        if from_presentation(a.relations_matrix()) != a:
            return _report(
                "groups", seed, idx, checks, _fail(idx, "presentation round-trip", payload)
            )
        if presented_ext(a, b) != ext(a, b):
            return _report(
                "groups", seed, idx, checks, _fail(idx, "ext vs resolution", payload)
            )
        if presented_tensor(a, b) != tensor(a, b):
            return _report(
                "groups", seed, idx, checks, _fail(idx, "tensor vs presentation", payload)
            )
        if tor(a, b) != tor(b, a):
            return _report(
                "groups", seed, idx, checks, _fail(idx, "Tor symmetry", payload)
            )
        n = brute_hom_order(a, b)
        if n is not None and n != hom(a, b).order():
            return _report(
                "groups", seed, idx, checks, _fail(idx, "hom order vs enumeration", payload)
            )
        m = rng.choice(_PRIMES) ** rng.randint(1, 3)
        if a.free_rank == 0 and mod_power(a, m).order() != ann_power(a, m).order():
            return _report(
                "groups", seed, idx, checks, _fail(idx, "|A/mA| != |A[m]|", payload)
            )
        primes = gen.rand_prime_subset(rng, allow_empty=False)
        loc = localize_group(a.direct_sum(b), primes)
        if loc != localize_group(a, primes).direct_sum(localize_group(b, primes)):
            return _report(
                "groups", seed, idx, checks, _fail(idx, "localization additive", payload)
            )
        checks += 7
    return _report("groups", seed, cases, checks)


def _suite_kunneth(seed, cases):
    checks = 0
    for idx in range(cases):
        rng = gen.case_rng(seed, "kunneth", idx)
        a = gen.rand_fg_group(rng)
        b = gen.rand_fg_group(rng)
        payload = {"a": group_to_json(a), "b": group_to_json(b)}
        prod = tensor_complex(moore_complex(a), moore_complex(b))
        hs = all_homology(prod)
        if hs.get(0, FgAbGroup.trivial()) != tensor(a, b):
            return _report(
                "kunneth", seed, idx, checks, _fail(idx, "H_0 != tensor", payload)
            )
        if hs.get(1, FgAbGroup.trivial()) != tor(a, b):
            return _report(
                "kunneth", seed, idx, checks, _fail(idx, "H_1 != Tor", payload)
            )
        if any(i not in (0, 1) and not h.is_trivial for i, h in hs.items()):
            return _report(
                "kunneth", seed, idx, checks, _fail(idx, "stray homology", payload)
            )
        is_moore = all(h.is_trivial for i, h in hs.items() if i != 0)
        if is_moore != tor(a, b).is_trivial:
            return _report(
                "kunneth", seed, idx, checks, _fail(idx, "Moore iff Tor = 0", payload)
            )
        checks += 4
    return _report("kunneth", seed, cases, checks)


def _suite_uct(seed, cases):
    checks = 0
    for idx in range(cases):
        rng = gen.case_rng(seed, "uct", idx)
        a = gen.rand_fg_group(rng)
        d = gen.rand_complex(rng)
        i = rng.randint(d.bottom - 1, d.top)
        payload = {"a": group_to_json(a), "d": complex_to_json(d), "degree": i}
        rep = uct_maps_report(a, d, i)
        if not rep.exact:
            return _report(
                "uct", seed, idx, checks, _fail(idx, "sequence not exact", payload)
            )
        checks += 1
    return _report("uct", seed, cases, checks)


def _suite_cw(seed, cases):
    checks = 0
    for idx in range(cases):
        rng = gen.case_rng(seed, "cw", idx)
        c = gen.rand_complex(rng)
        payload = {"complex": complex_to_json(c)}
        filt = cw_structure(c)
        if not check_cw_definition(filt):
            return _report(
                "cw", seed, idx, checks, _fail(idx, "skeletal definition fails", payload)
            )
        if not check_cw_minimality(filt):
            return _report(
                "cw", seed, idx, checks, _fail(idx, "cell counts not minimal", payload)
            )
        bottom_h = homology(c, c.bottom)
        if filt.cells.get(c.bottom, 0) != bottom_h.num_generators:
            return _report(
                "cw", seed, idx, checks, _fail(idx, "bottom cells not minimal", payload)
            )
        checks += 3
    return _report("cw", seed, cases, checks)


def _suite_localization(seed, cases):
    checks = 0
    for idx in range(cases):
        rng = gen.case_rng(seed, "localization", idx)
        c = gen.rand_complex(rng)
        primes = gen.rand_prime_subset(rng, allow_empty=False)
        payload = {"complex": complex_to_json(c), "primes": primes}
        loc = base_change(c, ring_inverted(primes))
        plain = all_homology(c)
        localized = all_homology(loc)
        degs = set(plain) | set(localized)
        for i in degs:
            want = localize_group(plain.get(i, FgAbGroup.trivial()), primes)
            got = localized.get(i, FgAbGroup.trivial())
            if want != got:
                return _report(
                    "localization",
                    seed,
                    idx,
                    checks,
                    _fail(idx, f"H_{i}: {got} != localized {want}", payload),
                )
        checks += 1
    return _report("localization", seed, cases, checks)


_ORACLE_ATOMS = (
    Atom("Z"),
    Atom("cyclic", n=2),
    Atom("cyclic", n=8),
    Atom("cyclic", n=81),
    Atom("cyclic", n=12),
    Atom("z_inv_p", p=2),
    Atom("z_inv_p", p=3),
    Atom("z_inv_p", p=5),
    Atom("prufer", p=2),
    Atom("prufer", p=3),
    Atom("prufer", p=5),
    Atom("Q"),
    Atom("padic", p=2),
    Atom("padic", p=3),
    Atom("padic", p=5),
)


def _suite_completion(seed, cases):
    checks = 0
    # fixed part: the atom table against the inverse-limit oracle
    for atom in _ORACLE_ATOMS:
        g = CatalogueGroup.of(atom)
        for p in _PRIMES:
            rep = l0_l1_oracle(g, p, depth=12)
            payload = {"atom": atom.t, "p": p}
            if not rep.conclusive:
                return _report(
                    "completion", seed, 0, checks, _fail(-1, "oracle inconclusive", payload)
                )
            if rep.l0_limit != l0(g, p) or rep.l1_limit != l1(g, p):
                return _report(
                    "completion", seed, 0, checks, _fail(-1, "table != oracle", payload)
                )
            checks += 1
    # scaled part: completion commutes with small quotients and torsion
    for idx in range(cases):
        rng = gen.case_rng(seed, "completion", idx)
        a = gen.rand_fg_group(rng)
        p = rng.choice(_PRIMES)
        e = rng.randint(1, 3)
        payload = {"a": group_to_json(a), "p": p, "e": e}
        la = l0(CatalogueGroup.from_fg(a), p).shadow_group()
        if mod_power(a, p**e) != mod_power(la, p**e):
            return _report(
                "completion", seed, idx, checks, _fail(idx, "A/p^e mismatch", payload)
            )
        if ann_power(a, p**e) != ann_power(la, p**e):
            return _report(
                "completion", seed, idx, checks, _fail(idx, "A[p^e] mismatch", payload)
            )
        checks += 2
    return _report("completion", seed, cases, checks)


def _suite_six_term(seed, cases):
    checks = 0
    for idx in range(cases):
        rng = gen.case_rng(seed, "six-term", idx)
        ses = gen.rand_fg_ses(rng)
        p = rng.choice(_PRIMES)
        payload = {
            "a": group_to_json(ses.a.to_fg()),
            "b": group_to_json(ses.b.to_fg()),
            "c": group_to_json(ses.c.to_fg()),
            "p": p,
        }
        rep = six_term(ses, p)
        if rep.mode != "fg" or not rep.exact:
            return _report(
                "six-term", seed, idx, checks, _fail(idx, "six-term not exact", payload)
            )
        checks += 1
    for p in _PRIMES:
        for q in _PRIMES:
            ses = SesOfGroups(
                CatalogueGroup.of(Atom("Z")),
                CatalogueGroup.of(Atom("z_inv_p", p=q)),
                CatalogueGroup.of(Atom("prufer", p=q)),
            )
            rep = six_term(ses, p)
            if rep.mode != "catalogue" or not rep.exact:
                return _report(
                    "six-term",
                    seed,
                    cases,
                    checks,
                    _fail(-1, "catalogue sequence not exact", {"p": p, "q": q}),
                )
            checks += 1
    return _report("six-term", seed, cases, checks)


def _suite_four_term(seed, cases):
    checks = 0
    for idx in range(cases):
        rng = gen.case_rng(seed, "four-term", idx)
        p = rng.choice(_PRIMES)
        b, c = gen.rand_four_term_middle(rng, p)
        payload = {"b": str(b), "c": str(c), "p": p}
        l1_trivial, l0_fg_ok, _ = check_four_term_conclusion(b, c, p)
        if not (l1_trivial and l0_fg_ok):
            return _report(
                "four-term", seed, idx, checks, _fail(idx, "conclusion fails", payload)
            )
        checks += 1
    return _report("four-term", seed, cases, checks)


def _suite_detect_epi(seed, cases):
    checks = 0
    for idx in range(cases):
        rng = gen.case_rng(seed, "detect-epi", idx)
        p = rng.choice(_PRIMES)
        src, tgt, mat = gen.rand_padic_case(rng, p)
        payload = {
            "source": str(src),
            "target": str(tgt),
            "matrix": matrix_to_json(mat),
            "p": p,
        }
        modp, onto = check_detect_epi(src, tgt, mat)
        if modp and not onto:
            return _report(
                "detect-epi",
                seed,
                idx,
                checks,
                _fail(idx, "mod-p epi not onto", payload),
            )
        checks += 1
    return _report("detect-epi", seed, cases, checks)


def _all_subsets(pool):
    out = [()]
    for p in pool:
        out += [s + (p,) for s in out]
    return out


def _suite_moore_ring(seed, cases):
    checks = 0
    for primes in _all_subsets(_PRIMES):
        m, _ = dp_constants(primes, 42)
        for n in range(1, 41):
            cert = dp_quotient(primes, n)
            payload = {"Q": list(primes), "N": n}
            if not cert.ok or cert.group != FgAbGroup.free(1):
                return _report(
                    "moore-ring", seed, 0, checks, _fail(-1, "dp cokernel not Z", payload)
                )
            if cert.image != Fraction(1, m[n]):
                return _report(
                    "moore-ring", seed, 0, checks, _fail(-1, "phi image != 1/m_N", payload)
                )
            # multiplication by t_0 - t_1 is injective on the truncation
            if _q_rank(dp_relation_matrix(primes, n)) != n:
                return _report(
                    "moore-ring", seed, 0, checks, _fail(-1, "x is a zero divisor", payload)
                )
            checks += 2
        # the phi-images form an increasing chain whose union inverts
        # exactly the primes of Q
        if any(m[n + 1] % m[n] for n in range(41)):
            return _report(
                "moore-ring",
                seed,
                0,
                checks,
                _fail(-1, "m chain not divisible", {"Q": list(primes)}),
            )
        for q in primes:
            if not (valuation(m[1], q) < valuation(m[21], q) < valuation(m[41], q)):
                return _report(
                    "moore-ring",
                    seed,
                    0,
                    checks,
                    _fail(-1, "images do not exhaust the localization", {"Q": list(primes), "q": q}),
                )
        checks += 1
        mm_m, mm = dp_constants(primes, 61)
        for r in range(61):
            for s in range(61 - r):
                if mm_m[r + s] != mm_m[r] * mm_m[s] * mm[(r, s)]:
                    return _report(
                        "moore-ring",
                        seed,
                        0,
                        checks,
                        _fail(-1, "m identity fails", {"Q": list(primes), "r": r, "s": s}),
                    )
        checks += 1
    for p in _PRIMES:
        for n in range(0, 21):
            cert = s_inv_p_quotient(p, n)
            if not cert.ok or cert.group != FgAbGroup.free(1) or cert.image != Fraction(
                1, p**n
            ):
                return _report(
                    "moore-ring",
                    seed,
                    0,
                    checks,
                    _fail(-1, "inverted-p presentation fails", {"p": p, "N": n}),
                )
            cert2 = s_mod_p_inf_quotient(p, n)
            if not cert2.ok or cert2.group != FgAbGroup.cyclic(p ** (n + 1)):
                return _report(
                    "moore-ring",
                    seed,
                    0,
                    checks,
                    _fail(-1, "mod-p-infinity quotient fails", {"p": p, "N": n}),
                )
            # division-minus-p acts injectively on the truncated lattice
            # (its relation columns are independent), computed over Q,
            # independently of any normal form
            rel = IntMatrix(
                [
                    [
                        (1 if i == r else 0) - (p if i == r + 1 else 0)
                        for r in range(n)
                    ]
                    for i in range(n + 1)
                ],
                shape=(n + 1, n),
            )
            if _q_rank(rel) != n:
                return _report(
                    "moore-ring",
                    seed,
                    0,
                    checks,
                    _fail(-1, "relation columns dependent", {"p": p, "N": n}),
                )
            checks += 3
    # truncated division kills exactly the constants
    dm = division_matrix(20)
    if _q_rank(dm) != 20 or any(dm.data[i][0] for i in range(20)):
        return _report(
            "moore-ring", seed, 0, checks, _fail(-1, "division kernel not constants", {})
        )
    checks += 1
    return _report("moore-ring", seed, cases, checks)


def _expected_completion(h, p):
    torsion = tuple(
        sorted(prime_part(d, p) for d in h.torsion if prime_part(d, p) > 1)
    )
    return PadicModule(p, h.free_rank, torsion)


def _suite_p_completion(seed, cases):
    checks = 0
    # the worked example: completing the order-six Moore complex at 2
    c6 = moore_complex(FgAbGroup.cyclic(6))
    model, f = p_finite_model(c6, 2)
    if all_homology(model) != {0: FgAbGroup.cyclic(2)} or not check_p_equivalence(f, 2):
        return _report(
            "p-completion", seed, 0, checks, _fail(-1, "worked example fails", {})
        )
    checks += 1
    for idx in range(cases):
        rng = gen.case_rng(seed, "p-completion", idx)
        c = gen.rand_complex(rng)
        p = rng.choice(_PRIMES)
        payload = {"complex": complex_to_json(c), "p": p}
        hs = all_homology(c)
        ch = completed_homology(c, p)
        for i, h in hs.items():
            want = _expected_completion(h, p)
            if ch.get(i, PadicModule(p, 0)) != want:
                return _report(
                    "p-completion",
                    seed,
                    idx,
                    checks,
                    _fail(idx, f"completed H_{i} mismatch", payload),
                )
        dims = mod_p_homology(c, p)
        for i in set(hs) | {j + 1 for j in hs} | set(dims):
            want = uct_mod_p_dimension(
                hs.get(i, FgAbGroup.trivial()), hs.get(i - 1, FgAbGroup.trivial()), p
            )
            if dims.get(i, 0) != want:
                return _report(
                    "p-completion",
                    seed,
                    idx,
                    checks,
                    _fail(idx, f"mod-p dimension at {i}", payload),
                )
        if not check_completed_mod_p(c, p):
            return _report(
                "p-completion", seed, idx, checks, _fail(idx, "UCT identity", payload)
            )
        checks += 3
        if idx % 2 == 0:
            model, f = p_finite_model(c, p)
            ok = check_p_equivalence(f, p)
            # the model keeps free ranks and the p-primary torsion, nothing else
            hm = all_homology(model)
            hs = all_homology(c)
            degrees = set(hm) | set(hs)
            expected_ok = all(
                hm.get(i, FgAbGroup.trivial())
                == FgAbGroup.from_invariants(
                    hs.get(i, FgAbGroup.trivial()).free_rank,
                    [
                        prime_part(d, p)
                        for d in hs.get(i, FgAbGroup.trivial()).torsion
                        if prime_part(d, p) > 1
                    ],
                )
                for i in degrees
            )
            if not (ok and expected_ok):
                return _report(
                    "p-completion",
                    seed,
                    idx,
                    checks,
                    _fail(idx, "finite model fails", payload),
                )
            checks += 1
        else:
            d = gen.rand_complex(rng)
            if not check_tensor_padic(c, d, p):
                return _report(
                    "p-completion",
                    seed,
                    idx,
                    checks,
                    _fail(idx, "Hom-complex completion mismatch", payload),
                )
            checks += 1
    return _report("p-completion", seed, cases, checks)


def _suite_hurewicz(seed, cases):
    checks = 0
    for idx in range(cases):
        rng = gen.case_rng(seed, "hurewicz", idx)
        c = gen.rand_acyclic_complex(rng)
        payload = {"complex": complex_to_json(c)}
        contraction = chain_contraction(c)
        if not contraction.verify():
            return _report(
                "hurewicz", seed, idx, checks, _fail(idx, "contraction fails", payload)
            )
        checks += 1
        p = rng.choice(_PRIMES)
        hyp, concl = check_mod_p_detects_zero(c, p)
        if hyp and not concl:
            return _report(
                "hurewicz", seed, idx, checks, _fail(idx, "mod-p criterion", payload)
            )
        m = moore_complex(FgAbGroup.cyclic(p ** rng.randint(1, 2)))
        unit = 1 + p * rng.randint(1, 3)
        tw = cone(ChainMap(m, m, {0: IntMatrix([[unit]]), 1: IntMatrix([[unit]])}))
        hyp, concl = check_mod_p_detects_zero(tw, p)
        if not (hyp and concl):
            return _report(
                "hurewicz", seed, idx, checks, _fail(idx, "unit-cone instance", payload)
            )
        hyp, _ = check_mod_p_detects_zero(m, p)
        if hyp:
            return _report(
                "hurewicz", seed, idx, checks, _fail(idx, "hypothesis misfires", payload)
            )
        checks += 3
    return _report("hurewicz", seed, cases, checks)


def _suite_les(seed, cases):
    checks = 0
    for idx in range(cases):
        rng = gen.case_rng(seed, "les", idx)
        src = gen.rand_complex(rng)
        tgt = gen.rand_complex(rng)
        f = gen.rand_chain_map(rng, src, tgt)
        payload = {
            "source": complex_to_json(src),
            "target": complex_to_json(tgt),
        }
        cn = cone(f)
        incl = cone_inclusion(f)
        data_c = {}
        data_d = {}
        data_cone = {}
        lo = min(src.bottom, tgt.bottom) - 1
        hi = max(src.top, tgt.top) + 1
        for n in range(lo, hi + 1):
            data_c[n] = homology_data(src, n)
            data_d[n] = homology_data(tgt, n)
            data_cone[n] = homology_data(cn, n)
        for n in range(lo, hi + 1):
            f_n = induced_map(f, n, data_c[n], data_d[n])
            i_n = induced_map(incl, n, data_d[n], data_cone[n])
            delta_n = _connecting_map(f, n, data_cone[n], data_c[n - 1] if n - 1 >= lo else None)
            if delta_n is None:
                continue
            if not exact_at(f_n, i_n):
                return _report(
                    "les", seed, idx, checks, _fail(idx, f"exactness at H_{n}(target)", payload)
                )
            if not exact_at(i_n, delta_n):
                return _report(
                    "les", seed, idx, checks, _fail(idx, f"exactness at H_{n}(cone)", payload)
                )
            if n - 1 >= lo:
                f_prev = induced_map(f, n - 1, data_c[n - 1], data_d[n - 1])
                if not exact_at(delta_n, f_prev):
                    return _report(
                        "les",
                        seed,
                        idx,
                        checks,
                        _fail(idx, f"exactness at H_{n - 1}(source)", payload),
                    )
            checks += 3
    return _report("les", seed, cases, checks)


def _connecting_map(f, n, cone_data, src_below_data):
    """H_n(cone f) -> H_{n-1}(source): a cone cycle's first block is a
    cycle of the shifted source; pass to classes."""
    if src_below_data is None:
        return None
    src = f.source
    a = src.rank(n - 1)
    gens = cone_data.generator_cycles()
    cols = []
    for j in range(gens.cols):
        col = gens.column(j)
        cols.append(src_below_data.classify(list(col[:a])))
    mat = IntMatrix.from_columns(cols, rows=src_below_data.group.num_generators)
    return GroupMap(cone_data.group, src_below_data.group, mat)


# ---------------------------------------------------------------------------
# registry and runner


SUB_SUITES = {
    "snf": (_suite_snf, 500),
    "groups": (_suite_groups, 150),
    "kunneth": (_suite_kunneth, 100),
    "uct": (_suite_uct, 100),
    "cw": (_suite_cw, 100),
    "localization": (_suite_localization, 200),
    "completion": (_suite_completion, 200),
    "six-term": (_suite_six_term, 200),
    "four-term": (_suite_four_term, 100),
    "detect-epi": (_suite_detect_epi, 100),
    "moore-ring": (_suite_moore_ring, 0),
    "p-completion": (_suite_p_completion, 200),
    "hurewicz": (_suite_hurewicz, 100),
    "les": (_suite_les, 60),
}

CANONICAL_SUITES = {
    "linalg": ("snf",),
    "groups": ("groups",),
    "functors": ("completion", "six-term", "four-term", "detect-epi"),
    "moore-rings": ("moore-ring",),
    "chain": (
        "kunneth",
        "uct",
        "cw",
        "localization",
        "les",
        "p-completion",
        "hurewicz",
    ),
}

ALIASES = {
    "dp": "moore-ring",
}


def resolve_suite(name):
    """A suite name (canonical, sub-suite, or alias) to the tuple of
    sub-suites it runs.  Raises KeyError with the valid names."""
    if name == "all":
        out = []
        for group in CANONICAL_SUITES.values():
            out.extend(group)
        return tuple(dict.fromkeys(out))
    if name in CANONICAL_SUITES:
        return CANONICAL_SUITES[name]
    if name in ALIASES:
        return resolve_suite(ALIASES[name])
    if name in SUB_SUITES:
        return (name,)
    valid = sorted({"all", *CANONICAL_SUITES, *SUB_SUITES, *ALIASES})
    raise KeyError(f"unknown suite {name!r}; valid: {', '.join(valid)}")


def run_sub_suite(name, seed=0, cases=None):
    runner, default_cases = SUB_SUITES[name]
    return runner(seed, default_cases if cases is None else cases)


def verify_suites(name="all", seed=0, cases=None):
    """Run a named suite; returns the full report dict.

    >>> rep = verify_suites("kunneth", seed=1, cases=3)
    >>> rep["passed"], [s["suite"] for s in rep["suites"]]
    (True, ['kunneth'])
    """
    subs = resolve_suite(name)
    reports = [run_sub_suite(s, seed, cases) for s in subs]
    reports.sort(key=lambda r: r["suite"])
    return {
        "suite": name,
        "seed": seed,
        "passed": all(r["passed"] for r in reports),
        "suites": reports,
    }


def render_text(report):
    lines = []
    for sub in report["suites"]:
        status = "pass" if sub["passed"] else "FAIL"
        lines.append(
            f"{sub['suite']}: {status} ({sub['cases']} cases, {sub['checks']} checks)"
        )
        for failure in sub["failures"]:
            lines.append(f"  case {failure['case']}: {failure['detail']}")
            if "input" in failure:
                lines.append(f"  replay: {failure['input']}")
    overall = "pass" if report["passed"] else "FAIL"
    lines.append(f"overall: {overall}")
    return "\n".join(lines)
