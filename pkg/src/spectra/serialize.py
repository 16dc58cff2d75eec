"""JSON schemas for every value that crosses the command-line boundary.

Matrices serialize as arrays of rows of decimal strings, so arbitrary
precision survives any JSON parser.  Parsing is strict: every violation
raises SchemaError carrying a JSONPath-style location, which the CLI
turns into an exit-2 diagnostic.  serialize then parse is the identity
on every schema type.
"""

from __future__ import annotations

from fractions import Fraction

from .groups import FgAbGroup, GroupMap, from_presentation
from .functors import Atom, CatalogueGroup, PadicModule
from .linalg import (
    ZZ,
    BaseRing,
    IntMatrix,
    ring_inverted,
    ring_local_at,
    ring_mod,
)
from .complexes import ChainComplex


class SchemaError(ValueError):
    """Input does not match the expected JSON schema.

    >>> try:
    ...     matrix_from_json({"rows": 1}, "$.matrix")
    ... except SchemaError as e:
    ...     print(e)
    $.matrix: expected an array of rows
    """

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


def _expect(cond, path, message):
    if not cond:
        raise SchemaError(path, message)


def _as_int(value, path):
    # bool is an int subtype; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(path, "expected an integer or decimal string")
    if isinstance(value, str):
        stripped = value[1:] if value.startswith("-") else value
        _expect(stripped.isdigit() and stripped != "", path, "not a decimal string")
        return int(value)
    return value


# --- matrices --------------------------------------------------------------


def matrix_to_json(m):
    """
    >>> matrix_to_json(IntMatrix([[1, -2], [0, 3]]))
    [['1', '-2'], ['0', '3']]
    """
    return [[str(e) for e in row] for row in m.data]


def matrix_from_json(obj, path="$", shape=None):
    """Accepts entries as numbers or decimal strings; rejects ragged rows.

    >>> matrix_from_json([["1", "-2"], ["0", "3"]])
    IntMatrix([[1, -2], [0, 3]])
    >>> matrix_from_json([], shape=(0, 3)).shape
    (0, 3)
    """
    _expect(isinstance(obj, list), path, "expected an array of rows")
    rows = []
    for i, row in enumerate(obj):
        _expect(isinstance(row, list), f"{path}[{i}]", "expected an array")
        rows.append([_as_int(e, f"{path}[{i}][{j}]") for j, e in enumerate(row)])
    widths = {len(r) for r in rows}
    _expect(len(widths) <= 1, path, "ragged rows")
    if shape is not None:
        r, c = shape
        _expect(len(rows) == r, path, f"expected {r} rows, got {len(rows)}")
        got_c = widths.pop() if widths else c
        _expect(got_c == c or not rows, path, f"expected {c} columns, got {got_c}")
        return IntMatrix(rows, shape=(r, c))
    if not rows:
        return IntMatrix.zero(0, 0)
    return IntMatrix(rows)


# --- base rings ------------------------------------------------------------


def ring_to_json(ring):
    """
    >>> ring_to_json(ring_inverted([2, 3]))
    {'ring': 'inverted', 'primes': [2, 3]}
    """
    if ring.kind == "Z":
        return {"ring": "Z"}
    if ring.kind == "inverted":
        return {"ring": "inverted", "primes": sorted(ring.primes)}
    return {"ring": ring.kind, "p": ring.p}


def ring_from_json(obj, path="$"):
    """
    >>> ring_from_json({"ring": "local_at", "p": 5})
    BaseRing(kind='local_at', primes=(), p=5)
    """
    _expect(isinstance(obj, dict), path, "expected a ring object")
    kind = obj.get("ring")
    if kind == "Z":
        return ZZ
    if kind == "inverted":
        primes = obj.get("primes")
        _expect(isinstance(primes, list), f"{path}.primes", "expected a prime list")
        try:
            return ring_inverted([_as_int(p, f"{path}.primes") for p in primes])
        except ValueError as e:
            raise SchemaError(f"{path}.primes", str(e)) from None
    if kind in ("local_at", "mod"):
        p = _as_int(obj.get("p"), f"{path}.p")
        try:
            return ring_local_at(p) if kind == "local_at" else ring_mod(p)
        except ValueError as e:
            raise SchemaError(f"{path}.p", str(e)) from None
    raise SchemaError(f"{path}.ring", f"unknown ring kind {kind!r}")


def ring_from_spec(text):
    """Parse the --ring command-line shorthand: Z, inverted:2,3,
    local_at:5, mod:7.

    >>> str(ring_from_spec("inverted:2,3"))
    'Z[1/2,1/3]'
    """
    name, _, arg = text.partition(":")
    if name == "Z" and not arg:
        return ZZ
    try:
        if name == "inverted":
            return ring_inverted(int(x) for x in arg.split(","))
        if name == "local_at":
            return ring_local_at(int(arg))
        if name == "mod":
            return ring_mod(int(arg))
    except ValueError as e:
        raise SchemaError("$.ring", str(e)) from None
    raise SchemaError("$.ring", f"unknown ring spec {text!r}")


# --- groups and maps -------------------------------------------------------


def group_to_json(g):
    """
    >>> group_to_json(FgAbGroup(1, (2, 6)))
    {'rank': 1, 'torsion': [2, 6]}
    """
    return {"rank": g.free_rank, "torsion": list(g.torsion)}


def group_from_json(obj, path="$"):
    """Canonical form or a presentation matrix (generators = rows).

    >>> group_from_json({"rank": 0, "torsion": [4]})
    FgAbGroup(free_rank=0, torsion=(4,))
    >>> group_from_json({"presentation": [["2", "1"], ["0", "3"]]})
    FgAbGroup(free_rank=0, torsion=(6,))
    """
    _expect(isinstance(obj, dict), path, "expected a group object")
    if "presentation" in obj:
        _expect(
            "rank" not in obj and "torsion" not in obj,
            path,
            "give 'rank'/'torsion' or 'presentation', not both",
        )
        return from_presentation(matrix_from_json(obj["presentation"], f"{path}.presentation"))
    _expect("rank" in obj, path, "need 'rank'/'torsion' or 'presentation'")
    rank = _as_int(obj["rank"], f"{path}.rank")
    torsion = obj.get("torsion", [])
    _expect(isinstance(torsion, list), f"{path}.torsion", "expected a list")
    try:
        return FgAbGroup.from_invariants(
            rank, [_as_int(d, f"{path}.torsion") for d in torsion]
        )
    except ValueError as e:
        raise SchemaError(path, str(e)) from None


def map_to_json(f):
    return {
        "source": group_to_json(f.source),
        "target": group_to_json(f.target),
        "matrix": matrix_to_json(f.matrix),
    }


def map_from_json(obj, path="$"):
    """
    >>> f = map_from_json({"source": {"rank": 0, "torsion": [2]},
    ...                    "target": {"rank": 0, "torsion": [4]},
    ...                    "matrix": [["2"]]})
    >>> f.is_injective()
    True
    """
    _expect(isinstance(obj, dict), path, "expected a map object")
    for key in ("source", "target", "matrix"):
        _expect(key in obj, path, f"missing {key!r}")
    src = group_from_json(obj["source"], f"{path}.source")
    tgt = group_from_json(obj["target"], f"{path}.target")
    mat = matrix_from_json(
        obj["matrix"], f"{path}.matrix", shape=(tgt.num_generators, src.num_generators)
    )
    try:
        return GroupMap(src, tgt, mat)
    except ValueError as e:
        raise SchemaError(f"{path}.matrix", str(e)) from None


# --- catalogue modules -----------------------------------------------------


def atom_to_json(atom):
    out = {"t": atom.t}
    if atom.t == "cyclic":
        out["n"] = atom.n
    elif atom.t in ("z_inv_p", "prufer", "padic"):
        out["p"] = atom.p
    return out


def atom_from_json(obj, path="$"):
    _expect(isinstance(obj, dict), path, "expected an atom object")
    t = obj.get("t")
    try:
        if t in ("Z", "Q"):
            return Atom(t)
        if t == "cyclic":
            return Atom(t, n=_as_int(obj.get("n"), f"{path}.n"))
        if t in ("z_inv_p", "prufer", "padic"):
            return Atom(t, p=_as_int(obj.get("p"), f"{path}.p"))
    except ValueError as e:
        raise SchemaError(path, str(e)) from None
    raise SchemaError(f"{path}.t", f"unknown atom tag {t!r}")


def catalogue_to_json(g):
    """
    >>> catalogue_to_json(CatalogueGroup((Atom("Z"), Atom("prufer", p=2))))
    {'atoms': [{'t': 'Z'}, {'t': 'prufer', 'p': 2}]}
    """
    return {"atoms": [atom_to_json(a) for a in g.summands]}


def catalogue_from_json(obj, path="$"):
    """
    >>> str(catalogue_from_json({"atoms": [{"t": "cyclic", "n": 12}]}))
    'Z/12'
    """
    _expect(isinstance(obj, dict), path, "expected a catalogue object")
    atoms = obj.get("atoms")
    _expect(isinstance(atoms, list), f"{path}.atoms", "expected an atom list")
    return CatalogueGroup(
        tuple(atom_from_json(a, f"{path}.atoms[{i}]") for i, a in enumerate(atoms))
    )


def padic_to_json(m):
    """
    >>> padic_to_json(PadicModule(2, 1, (4,)))
    {'p': 2, 'rank': 1, 'torsion': [4]}
    """
    return {"p": m.prime, "rank": m.zp_rank, "torsion": list(m.p_torsion)}


# --- chain complexes -------------------------------------------------------


def complex_to_json(c):
    """
    >>> from .complexes import moore_complex
    >>> complex_to_json(moore_complex(FgAbGroup.cyclic(6)))
    {'base': {'ring': 'Z'}, 'bottom': 0, 'ranks': {'0': 1, '1': 1}, 'differentials': {'1': [['6']]}}
    """
    degrees = [n for n in range(c.bottom, c.top + 1) if c.rank(n)]
    return {
        "base": ring_to_json(c.base),
        "bottom": c.bottom,
        "ranks": {str(n): c.rank(n) for n in degrees},
        "differentials": {
            str(n): matrix_to_json(c.differential(n))
            for n in degrees
            if c.rank(n) and c.rank(n - 1)
        },
    }


def complex_from_json(obj, path="$"):
    """
    >>> c = complex_from_json({"base": {"ring": "Z"}, "bottom": 0,
    ...                        "ranks": {"0": 1, "1": 1},
    ...                        "differentials": {"1": [["6"]]}})
    >>> from .complexes import homology
    >>> str(homology(c, 0))
    'Z/6'
    """
    _expect(isinstance(obj, dict), path, "expected a complex object")
    base = ring_from_json(obj.get("base", {"ring": "Z"}), f"{path}.base")
    ranks_obj = obj.get("ranks")
    _expect(isinstance(ranks_obj, dict), f"{path}.ranks", "expected an object")
    ranks = {}
    for key, val in ranks_obj.items():
        deg = _as_int(key, f"{path}.ranks.{key}")
        ranks[deg] = _as_int(val, f"{path}.ranks.{key}")
        _expect(ranks[deg] >= 0, f"{path}.ranks.{key}", "rank must be >= 0")
    if "bottom" in obj:
        bottom = _as_int(obj["bottom"], f"{path}.bottom")
        positive = {d for d, r in ranks.items() if r}
        _expect(
            not positive or min(positive) >= bottom,
            f"{path}.bottom",
            "ranks below the declared bottom degree",
        )
    diffs_obj = obj.get("differentials", {})
    _expect(isinstance(diffs_obj, dict), f"{path}.differentials", "expected an object")
    diffs = {}
    for key, val in diffs_obj.items():
        deg = _as_int(key, f"{path}.differentials.{key}")
        shape = (ranks.get(deg - 1, 0), ranks.get(deg, 0))
        diffs[deg] = matrix_from_json(val, f"{path}.differentials.{key}", shape=shape)
    try:
        return ChainComplex(base, ranks, diffs)
    except ValueError as e:
        raise SchemaError(path, str(e)) from None


# --- report fragments ------------------------------------------------------


def fraction_to_str(q):
    """
    >>> fraction_to_str(Fraction(1, 8)), fraction_to_str(Fraction(-3))
    ('1/8', '-3')
    """
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dp_report_to_json(primes, n, cert):
    """The quotient report for the divided-power relation lattice.

    >>> from .moore_rings import dp_quotient
    >>> dp_report_to_json([2], 4, dp_quotient([2], 4))
    {'Q': [2], 'N': 4, 'cokernel': {'rank': 1, 'torsion': []}, 'phi_image': '1/8'}
    """
    return {
        "Q": sorted(primes),
        "N": n,
        "cokernel": group_to_json(cert.group),
        "phi_image": fraction_to_str(cert.image),
    }
