"""Command-line surface.

Every subcommand validates its JSON input against the wire schemas
before computing, prints human-readable text by default and canonical
machine JSON with --json, and exits 0 on success, 1 on a verification
failure (with a certificate), 2 on an input error.  Output is
deterministic: fixed inputs and seed produce byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize
from .complexes import (
    all_homology,
    base_change,
    completed_homology,
    cw_structure,
    finiteness_report,
)
from .groups import cokernel_invariants
from .linalg import ZZ, IntMatrix, is_prime, kernel_basis, ring_inverted
from .moore_rings import (
    PolyModule,
    TruncatedDpRing,
    division_matrix,
    dp_quotient,
    mu_t,
    s_inv_p_quotient,
    s_mod_p_inf_quotient,
    truncated_division,
)
from .serialize import SchemaError, fraction_to_str
from .verify import render_text, verify_suites


class UsageError(Exception):
    """Bad input from the user: missing file, malformed JSON, value out
    of a subcommand's domain.  Rendered on stderr with exit status 2."""


# ---------------------------------------------------------------------------
# shared plumbing


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror or e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(
            f"{path}: line {e.lineno} column {e.colno}: {e.msg}"
        ) from None


def _read_complex(path):
    try:
        return serialize.complex_from_json(_load_json(path))
    except SchemaError as e:
        raise UsageError(f"{path}: {e}") from None


def _read_group(path):
    try:
        return serialize.group_from_json(_load_json(path))
    except SchemaError as e:
        raise UsageError(f"{path}: {e}") from None


def _emit_json(obj):
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _homology_json(hs):
    return {str(i): serialize.group_to_json(h) for i, h in hs.items()}


def _print_homology(hs, prefix="H"):
    if not hs:
        print("all homology vanishes")
        return
    for i in sorted(hs):
        print(f"{prefix}_{i} = {hs[i]}")


# argparse type converters; ArgumentTypeError renders as a usage error
# with exit status 2


def _arg_primes(text):
    if not text:
        return ()
    try:
        vals = sorted({int(x) for x in text.split(",")})
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}")
    for v in vals:
        if not is_prime(v):
            raise argparse.ArgumentTypeError(f"{v} is not prime")
    return tuple(vals)


def _arg_prime(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime {text!r}")
    if not is_prime(v):
        raise argparse.ArgumentTypeError(f"{v} is not prime")
    return v


def _arg_seed(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed {text!r}")
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _arg_count(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad count {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("count must be positive")
    return v


def _arg_trunc(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad truncation {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("truncation must be >= 0")
    return v


def _arg_ring(text):
    try:
        return serialize.ring_from_spec(text)
    except SchemaError as e:
        raise argparse.ArgumentTypeError(str(e))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_homology(args):
    c = _read_complex(args.input)
    hs = all_homology(c)
    if args.json:
        _emit_json(
            {
                "base": serialize.ring_to_json(c.base),
                "homology": _homology_json(hs),
            }
        )
    else:
        _print_homology(hs)
    return 0


def _cmd_cw(args):
    c = _read_complex(args.input)
    try:
        filt = cw_structure(c)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.json:
        _emit_json(
            {
                "cells": {str(i): n for i, n in filt.cells.items()},
                "total": filt.total_cells,
            }
        )
    else:
        for i in sorted(filt.cells):
            print(f"cells in degree {i}: {filt.cells[i]}")
        print(f"total cells: {filt.total_cells}")
    return 0


def _cmd_finiteness(args):
    c = _read_complex(args.input)
    rep = finiteness_report(c, args.primes)
    if args.json:
        _emit_json(
            {
                "base": serialize.ring_to_json(rep.base),
                "homology": _homology_json(rep.homology),
                "total_generators": rep.total_generators,
                "cw_cells": {str(i): n for i, n in rep.cw_cells.items()},
                "mod_p_dimensions": {
                    str(p): {str(i): d for i, d in dims.items()}
                    for p, dims in rep.mod_p_dimensions.items()
                },
                "mod_p_totals": {str(p): t for p, t in rep.mod_p_totals.items()},
                "annihilator_exponents": {
                    str(p): e for p, e in rep.annihilator_exponents.items()
                },
            }
        )
        return 0
    print(f"base: {rep.base}")
    _print_homology(rep.homology)
    print(f"homology generators: {rep.total_generators}")
    if c.base.kind in ("Z", "mod"):
        cells = ", ".join(
            f"degree {i}: {rep.cw_cells[i]}" for i in sorted(rep.cw_cells)
        )
        print(f"cw cells: {cells if cells else 'none'}")
    for p in args.primes:
        if p in rep.mod_p_dimensions:
            dims = rep.mod_p_dimensions[p]
            body = ", ".join(f"degree {i}: {dims[i]}" for i in sorted(dims))
            total = rep.mod_p_totals[p]
            print(f"mod {p} dimensions: {body if body else 'none'} (total {total})")
        e = rep.annihilator_exponents[p]
        print(f"annihilator at {p}: {e if e is not None else 'none'}")
    return 0


def _cmd_localize(args):
    c = _read_complex(args.input)
    ring = ring_inverted(args.primes)
    try:
        lc = base_change(c, ring)
    except ValueError as e:
        raise UsageError(str(e)) from None
    hs = all_homology(lc)
    if args.json:
        _emit_json(
            {
                "base": serialize.ring_to_json(ring),
                "homology": _homology_json(hs),
            }
        )
    else:
        print(f"base: {ring}")
        _print_homology(hs)
    return 0


def _cmd_complete(args):
    c = _read_complex(args.input)
    try:
        ch = completed_homology(c, args.p)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.json:
        _emit_json(
            {
                "p": args.p,
                "homology": {
                    str(i): serialize.padic_to_json(m) for i, m in ch.items()
                },
            }
        )
        return 0
    print(f"derived {args.p}-completion of homology:")
    if not ch:
        print("all completed homology vanishes")
    for i in sorted(ch):
        print(f"H_{i} = {ch[i]}")
    return 0


def _cmd_group(args):
    g = _read_group(args.input)
    ring = args.ring if args.ring is not None else ZZ
    k = len(g.torsion)
    if ring == ZZ:
        h = g
    else:
        # canonical presentation: free generators first, one relation
        # column per torsion generator
        if k:
            rows = [[0] * k for _ in range(g.free_rank)]
            rows += [
                [g.torsion[i] if j == i else 0 for j in range(k)]
                for i in range(k)
            ]
            pres = IntMatrix(rows, shape=(g.num_generators, k))
        else:
            pres = IntMatrix.zero(g.num_generators, 0)
        h = cokernel_invariants(pres, ring)
    if args.json:
        _emit_json(
            {
                "ring": serialize.ring_to_json(ring),
                "group": serialize.group_to_json(h),
            }
        )
    else:
        print(f"canonical form: {g}")
        if ring != ZZ:
            print(f"over {ring}: {h}")
    return 0


def _cmd_moore(args):
    inv = s_inv_p_quotient(args.p, args.trunc)
    tor = s_mod_p_inf_quotient(args.p, args.trunc)
    if args.json:
        obj = {
            "p": args.p,
            "N": args.trunc,
            "inverted": {
                "cokernel": serialize.group_to_json(inv.group),
                "phi_image": fraction_to_str(inv.image),
            },
            "mod_p_inf": {
                "cokernel": serialize.group_to_json(tor.group),
                "phi_image": fraction_to_str(tor.image),
            },
        }
        for key, cert in (("inverted", inv), ("mod_p_inf", tor)):
            if not cert.ok:
                obj[key]["counterexample"] = cert.counterexample
        _emit_json(obj)
    else:
        print(
            f"S[1/{args.p}] truncated at {args.trunc}: "
            f"cokernel {inv.group}, generator image {fraction_to_str(inv.image)}"
        )
        print(
            f"S/{args.p}^inf truncated at {args.trunc}: "
            f"cokernel {tor.group}, generator image {fraction_to_str(tor.image)}"
        )
        for cert in (inv, tor):
            if not cert.ok:
                print(f"FAIL: {cert.counterexample}")
    return 0 if inv.ok and tor.ok else 1


def _cmd_dp(args):
    if args.trunc < 1:
        raise UsageError("dp needs a truncation degree >= 1")
    cert = dp_quotient(frozenset(args.primes), args.trunc)
    if args.json:
        obj = serialize.dp_report_to_json(args.primes, args.trunc, cert)
        if not cert.ok:
            obj["counterexample"] = cert.counterexample
        _emit_json(obj)
    else:
        print(f"cokernel: {cert.group}")
        print(f"phi image: {fraction_to_str(cert.image)}")
        if not cert.ok:
            print(f"FAIL: {cert.counterexample}")
    return 0 if cert.ok else 1


def _basis_poly(r, bound):
    return PolyModule.from_coeffs([0] * r + [1], bound)


def _cmd_poly(args):
    n = args.trunc
    if n < 1:
        raise UsageError("poly needs a truncation degree >= 1")
    failures = []

    ker = kernel_basis(division_matrix(n))
    col = ker.column(0) if ker.shape[1] == 1 else None
    kernel_ok = (
        col is not None
        and abs(col[0]) == 1
        and all(x == 0 for x in col[1:])
    )
    if not kernel_ok:
        failures.append(f"division kernel is not the constants: {ker!r}")

    delta_mu_ok = all(
        truncated_division(mu_t(_basis_poly(r, n))).coeffs
        == _basis_poly(r, n).coeffs
        for r in range(n)
    )
    if not delta_mu_ok:
        failures.append("division after multiplication is not the identity")
    mu_delta_ok = all(
        mu_t(truncated_division(_basis_poly(r, n))).coeffs
        == _basis_poly(r, n).coeffs
        for r in range(1, n + 1)
    )
    if not mu_delta_ok:
        failures.append("multiplication after division moves positive degrees")

    ring_report = None
    if args.primes is not None:
        ring = TruncatedDpRing(frozenset(args.primes), n)
        unital = all(ring.multiply_basis(0, r) == (1, r) for r in range(n + 1))
        triples = [
            (r, s, u)
            for r in range(n + 1)
            for s in range(n + 1 - r)
            for u in range(n + 1 - r - s)
        ]
        associative = all(ring.is_associative_triple(r, s, u) for r, s, u in triples)
        ring_report = {"primes": list(args.primes), "unital": unital,
                       "associative": associative}
        if not unital:
            failures.append("t_0 is not a unit for the structure constants")
        if not associative:
            failures.append("structure constants are not associative")

    if args.json:
        obj = {
            "bound": n,
            "division_kernel_is_constants": kernel_ok,
            "division_after_multiplication": delta_mu_ok,
            "multiplication_after_division": mu_delta_ok,
        }
        if ring_report is not None:
            obj["ring"] = ring_report
        if failures:
            obj["failures"] = failures
        _emit_json(obj)
    else:
        yn = lambda b: "yes" if b else "NO"
        print(f"bound: {n}")
        print(f"division kernel is the constants: {yn(kernel_ok)}")
        print(f"division after multiplication is the identity: {yn(delta_mu_ok)}")
        print(f"multiplication after division fixes positive degrees: {yn(mu_delta_ok)}")
        if ring_report is not None:
            print(f"ring unital: {yn(ring_report['unital'])}")
            print(f"ring associative: {yn(ring_report['associative'])}")
        for f in failures:
            print(f"FAIL: {f}")
    return 0 if not failures else 1


def _cmd_verify(args):
    try:
        report = verify_suites(args.suite, seed=args.seed, cases=args.cases)
    except KeyError as e:
        raise UsageError(e.args[0]) from None
    if args.json:
        _emit_json(report)
    else:
        print(render_text(report))
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------
# the parser


def _add_json_flag(sp):
    sp.add_argument("--json", action="store_true", help="emit canonical JSON")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="spectra",
        description=(
            "Chain-level workbench: homology, CW structure, finiteness, "
            "localization, derived completion, Moore ring quotients, and "
            "named verification suites."
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True,
                                metavar="subcommand")

    sp = sub.add_parser("homology", help="homology groups of a complex")
    sp.add_argument("input", help="complex JSON file")
    _add_json_flag(sp)
    sp.set_defaults(func=_cmd_homology)

    sp = sub.add_parser("cw", help="minimal CW cell structure of a complex")
    sp.add_argument("input", help="complex JSON file")
    _add_json_flag(sp)
    sp.set_defaults(func=_cmd_cw)

    sp = sub.add_parser("finiteness", help="finiteness report for a complex")
    sp.add_argument("input", help="complex JSON file")
    sp.add_argument("--primes", type=_arg_primes, default=(2, 3, 5),
                    help="comma-separated primes to inspect (default 2,3,5)")
    _add_json_flag(sp)
    sp.set_defaults(func=_cmd_finiteness)

    sp = sub.add_parser("localize", help="homology after inverting primes")
    sp.add_argument("input", help="complex JSON file")
    sp.add_argument("--primes", type=_arg_primes, required=True,
                    help="comma-separated primes to invert")
    _add_json_flag(sp)
    sp.set_defaults(func=_cmd_localize)

    sp = sub.add_parser("complete",
                        help="derived p-completion of a complex's homology")
    sp.add_argument("input", help="complex JSON file")
    sp.add_argument("--p", type=_arg_prime, required=True, help="the prime")
    _add_json_flag(sp)
    sp.set_defaults(func=_cmd_complete)

    sp = sub.add_parser("moore",
                        help="Moore ring quotients S[1/p] and S/p^inf")
    sp.add_argument("--p", type=_arg_prime, required=True, help="the prime")
    sp.add_argument("--trunc", type=_arg_trunc, required=True,
                    help="truncation degree N >= 0")
    _add_json_flag(sp)
    sp.set_defaults(func=_cmd_moore)

    sp = sub.add_parser("group", help="canonical form of a group")
    sp.add_argument("input", help="group JSON file")
    sp.add_argument("--ring", type=_arg_ring, default=None,
                    help="base ring: Z, inverted:2,3, local_at:5, mod:7")
    _add_json_flag(sp)
    sp.set_defaults(func=_cmd_group)

    sp = sub.add_parser("dp", help="divided-power quotient by (x)")
    sp.add_argument("--primes", type=_arg_primes, required=True,
                    help="comma-separated primes Q")
    sp.add_argument("--trunc", type=_arg_trunc, required=True,
                    help="truncation degree N >= 1")
    _add_json_flag(sp)
    sp.set_defaults(func=_cmd_dp)

    sp = sub.add_parser("poly",
                        help="division and multiplication operators on the "
                             "truncated polynomial module")
    sp.add_argument("--trunc", type=_arg_trunc, required=True,
                    help="truncation degree N >= 1")
    sp.add_argument("--primes", type=_arg_primes, default=None,
                    help="also check the truncated ring structure at Q")
    _add_json_flag(sp)
    sp.set_defaults(func=_cmd_poly)

    sp = sub.add_parser("verify", help="run named verification suites")
    sp.add_argument("--suite", default="all",
                    help="suite name (default: all)")
    sp.add_argument("--seed", type=_arg_seed, default=0,
                    help="64-bit seed for case generation (default 0)")
    sp.add_argument("--cases", type=_arg_count, default=None,
                    help="cases per sub-suite (default: suite-specific)")
    _add_json_flag(sp)
    sp.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else e.code
    try:
        return args.func(args)
    except UsageError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except SchemaError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
