"""JSON interchange format.

One JSON object per document.  Structure constants are lists of
``[i, j, k, value]`` quadruples with 1-based indices; a value is an integer,
a ``"p/q"`` string, or an arithmetic expression over the declared parameters
(``"-alpha*gamma/beta"``).  Matrices are row-major lists of rows.  Action
families are lists of matrices or one of the builtin names in
:data:`BUILTIN_FAMILIES`.  A nested document is given inline or as a path
relative to the containing file.

Kinds and their fields::

    algebra          type, dim, product, bracket?
    representation   base, carrier_dim, actions {mu, rho | l, r, L, R}
    module-algebra   representation, carrier_product, carrier_bracket?
    matched-pair     a1, a2, mu1, mu2, rho1?, rho2?
    coalgebra        dim, Delta, delta   (quads [k, i, j, v]: coefficient of e_i (x) e_j in D(e_k))
    bialgebra        algebra, coalgebra
    operator         operator (averaging | rota-baxter), map, context, weight?
    tridendriform    dim, bracket_part, diamond, dot_part, triangle

``carrier_product``/``carrier_bracket`` may be the string ``"base"`` to reuse
the base algebra's operations.
"""

from __future__ import annotations

import ast
import json
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .algebras import KINDS, AlgebraData, left_multiplications, right_multiplications
from .bialgebras import BialgebraData, CoalgebraData
from .errors import InputError
from .exact import MAX_DIM, LinearMap, StructureConstants, format_rational, to_rational, zeros
from .matched_pairs import MatchedPairData
from .operators import OperatorData, TridendriformData
from .representations import ModuleAlgebraData, RepresentationData

DOCUMENT_KINDS = (
    "algebra",
    "representation",
    "module-algebra",
    "matched-pair",
    "coalgebra",
    "bialgebra",
    "operator",
    "tridendriform",
)

BUILTIN_FAMILIES = ("L", "R", "ad", "adR", "zero", "identity")

FIXTURE_DIR = Path(__file__).parent / "fixtures"


@dataclass(frozen=True)
class Document:
    kind: str
    value: object
    params: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, Document):
            return NotImplemented
        return self.kind == other.kind and self.value == other.value

    def __hash__(self):
        return hash(self.kind)


# Scalars and parameter expressions.

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def evaluate(expr: str, params: dict) -> Fraction:
    """Exact value of an arithmetic expression over named parameters.

    Allowed: integer literals, parameter names, ``+ - * /``, unary signs,
    integer powers ``**``.  Anything else is an input error.
    """
    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError:
        raise InputError(f"cannot parse expression {expr!r}") from None

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in params:
                raise InputError(f"no value for parameter {node.id!r}")
            return params[node.id]
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            return _UNARY[type(node.op)](walk(node.operand))
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
            base, exp = walk(node.left), walk(node.right)
            if exp.denominator != 1 or abs(exp) > 64:
                raise InputError(f"only small integer powers are allowed in {expr!r}")
            if base == 0 and exp < 0:
                raise InputError(f"division by zero in {expr!r}")
            return base ** int(exp)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Div) and right == 0:
                raise InputError(f"division by zero in {expr!r}")
            return _BINOPS[type(node.op)](left, right)
        raise InputError(f"unsupported syntax in expression {expr!r}")

    return walk(tree)


class _Reader:
    """Parsing state: parameter values and the directory for relative paths."""

    def __init__(self, params: dict, base_dir: Path | None):
        self.params = params
        self.base_dir = base_dir

    def scalar(self, value, locus):
        if isinstance(value, str):
            try:
                return to_rational(value)
            except InputError:
                pass
            try:
                return evaluate(value, self.params)
            except InputError as exc:
                raise InputError(str(exc), locus) from None
        try:
            return to_rational(value)
        except InputError as exc:
            raise InputError(str(exc), locus) from None

    def dim(self, obj, key, locus):
        value = obj.get(key)
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise InputError(f"{key} must be a non-negative integer", locus)
        if value > MAX_DIM:
            raise InputError(f"{key}={value} exceeds the limit {MAX_DIM}", locus)
        return value

    def constants(self, entries, dim, locus, symmetry=None) -> StructureConstants:
        """Quads to constants, completing mirror entries for ``symmetry`` in
        {"symmetric", "antisymmetric"} and rejecting contradictions."""
        if entries is None:
            entries = []
        if not isinstance(entries, list):
            raise InputError("structure constants must be a list of [i, j, k, value]", locus)
        arr = zeros(dim, dim, dim)
        seen = {}
        sign = {"symmetric": 1, "antisymmetric": -1}.get(symmetry)

        def put(key, value, where):
            if key in seen and seen[key] != value:
                raise InputError(
                    f"contradictory entries for ({key[0] + 1},{key[1] + 1},{key[2] + 1}):"
                    f" {format_rational(seen[key])} vs {format_rational(value)}",
                    where,
                )
            seen[key] = value
            arr[key] = value

        for n, entry in enumerate(entries):
            where = f"{locus}[{n}]"
            if not isinstance(entry, list) or len(entry) != 4:
                raise InputError("entry must be [i, j, k, value]", where)
            idx = entry[:3]
            if not all(isinstance(t, int) and not isinstance(t, bool) for t in idx):
                raise InputError("indices must be integers", where)
            if not all(1 <= t <= dim for t in idx):
                raise InputError(f"index out of range 1..{dim}", where)
            i, j, k = (t - 1 for t in idx)
            value = self.scalar(entry[3], where)
            put((i, j, k), value, where)
            if sign is not None:
                put((j, i, k), sign * value, where)
        return StructureConstants(arr)

    def matrix(self, rows, shape, locus) -> LinearMap:
        if not isinstance(rows, list) or len(rows) != shape[0]:
            raise InputError(f"matrix must have {shape[0]} rows", locus)
        out = zeros(*shape)
        for r, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != shape[1]:
                raise InputError(f"row {r + 1} must have {shape[1]} entries", locus)
            for c, value in enumerate(row):
                out[r, c] = self.scalar(value, f"{locus}[{r}][{c}]")
        return LinearMap(out)

    def family(self, spec, base: AlgebraData, size, locus) -> tuple:
        if isinstance(spec, str):
            return builtin_family(spec, base, size, locus)
        if not isinstance(spec, list) or len(spec) != base.dim:
            raise InputError(f"an action family needs {base.dim} matrices", locus)
        return tuple(self.matrix(m, (size, size), f"{locus}[{n}]") for n, m in enumerate(spec))

    def nested(self, spec, expect, locus) -> "Document":
        if isinstance(spec, str):
            path = Path(spec)
            if not path.is_absolute() and self.base_dir is not None:
                path = self.base_dir / path
            doc = load_document(str(path), self.params)
        elif isinstance(spec, dict):
            doc = _parse_obj(spec, self, locus + ".")
        else:
            raise InputError("expected an inline document or a path", locus)
        if doc.kind not in expect:
            raise InputError(f"expected a {' or '.join(expect)} document, got {doc.kind}", locus)
        return doc


def builtin_family(name, base: AlgebraData, size, locus=None) -> tuple:
    """Named action families of an algebra on itself (or the zero family)."""
    if name == "zero":
        return tuple(LinearMap.zeros(size) for _ in range(base.dim))
    if name == "identity":
        return tuple(LinearMap.identity(size) for _ in range(base.dim))
    if size != base.dim:
        raise InputError(f"builtin family {name!r} acts on the base itself; carrier_dim must be {base.dim}", locus)
    if name == "L":
        return left_multiplications(base.product)
    if name == "R":
        return right_multiplications(base.product)
    if name in ("ad", "adR"):
        if base.bracket is None:
            raise InputError(f"builtin family {name!r} needs a bracket", locus)
        return (left_multiplications if name == "ad" else right_multiplications)(base.bracket)
    raise InputError(f"unknown builtin family {name!r}; choose from {', '.join(BUILTIN_FAMILIES)}", locus)


def _algebra(obj, rd: _Reader, locus) -> AlgebraData:
    kind = obj.get("type", "assoc")
    if kind not in KINDS:
        raise InputError(f"unknown algebra type {kind!r}", f"{locus}type")
    n = rd.dim(obj, "dim", f"{locus}dim")
    prod_sym = "symmetric" if kind in ("comm-assoc", "almost-poisson") else None
    br_sym = "antisymmetric" if kind == "almost-poisson" else None
    if "product" not in obj:
        raise InputError("missing product (use [] for the zero product)", f"{locus}product")
    product = rd.constants(obj["product"], n, f"{locus}product", prod_sym)
    bracket = None
    if "bracket" not in obj and kind in ("almost-poisson", "awb-left", "awb-right"):
        raise InputError(f"type {kind} needs a bracket (use [] for the zero bracket)", f"{locus}bracket")
    if "bracket" in obj:
        bracket = rd.constants(obj["bracket"], n, f"{locus}bracket", br_sym)
    try:
        return AlgebraData(product, bracket, kind)
    except InputError as exc:
        raise InputError(str(exc), locus.rstrip(".") or None) from None


def _representation(obj, rd: _Reader, locus) -> RepresentationData:
    base = rd.nested(obj.get("base"), ("algebra",), f"{locus}base").value
    d = rd.dim(obj, "carrier_dim", f"{locus}carrier_dim")
    actions = obj.get("actions")
    if not isinstance(actions, dict):
        raise InputError("actions must be an object", f"{locus}actions")
    fams = {name: rd.family(spec, base, d, f"{locus}actions.{name}") for name, spec in actions.items()}
    unknown = set(fams) - {"mu", "rho", "l", "r", "L", "R"}
    if unknown:
        raise InputError(f"unknown actions {sorted(unknown)}", f"{locus}actions")
    return RepresentationData(base, d, **fams)


def _carrier_op(spec, rep, which, rd, locus, symmetry):
    if spec == "base":
        op = rep.base.product if which == "product" else rep.base.bracket
        if op is None or op.shape[0] != rep.carrier_dim:
            raise InputError(f"'base' needs a base {which} on a space of the carrier's dimension", locus)
        return op
    return rd.constants(spec, rep.carrier_dim, locus, symmetry)


def _module(obj, rd: _Reader, locus) -> ModuleAlgebraData:
    rep = rd.nested(obj.get("representation"), ("representation",), f"{locus}representation").value
    product = _carrier_op(obj.get("carrier_product"), rep, "product", rd, f"{locus}carrier_product", "symmetric")
    bracket = None
    if obj.get("carrier_bracket") is not None:
        bracket = _carrier_op(obj["carrier_bracket"], rep, "bracket", rd, f"{locus}carrier_bracket", "antisymmetric")
    return ModuleAlgebraData(rep, product, bracket)


def _matched_pair(obj, rd: _Reader, locus) -> MatchedPairData:
    a1 = rd.nested(obj.get("a1"), ("algebra",), f"{locus}a1").value
    a2 = rd.nested(obj.get("a2"), ("algebra",), f"{locus}a2").value

    def fam(name, base, size):
        if obj.get(name) is None:
            return None
        return rd.family(obj[name], base, size, f"{locus}{name}")

    return MatchedPairData(
        a1, a2, fam("mu1", a1, a2.dim), fam("mu2", a2, a1.dim), fam("rho1", a1, a2.dim), fam("rho2", a2, a1.dim)
    )


def _coalgebra(obj, rd: _Reader, locus) -> CoalgebraData:
    n = rd.dim(obj, "dim", f"{locus}dim")
    # quads are [k, i, j, v]; constants() fills arr[k, i, j]
    D = rd.constants(obj.get("Delta"), n, f"{locus}Delta").array
    E = rd.constants(obj.get("delta"), n, f"{locus}delta").array
    return CoalgebraData(D, E)


def _bialgebra(obj, rd: _Reader, locus) -> BialgebraData:
    a = rd.nested(obj.get("algebra"), ("algebra",), f"{locus}algebra").value
    c = rd.nested(obj.get("coalgebra"), ("coalgebra",), f"{locus}coalgebra").value
    return BialgebraData(a, c)


def _operator(obj, rd: _Reader, locus) -> OperatorData:
    flavour = obj.get("operator")
    if flavour not in ("averaging", "rota-baxter"):
        raise InputError("operator must be 'averaging' or 'rota-baxter'", f"{locus}operator")
    want = ("representation",) if flavour == "averaging" else ("module-algebra",)
    ctx = rd.nested(obj.get("context"), want, f"{locus}context").value
    rep = ctx if flavour == "averaging" else ctx.rep
    weight = None
    if flavour == "rota-baxter":
        if "weight" not in obj:
            raise InputError("a Rota-Baxter operator needs a weight", f"{locus}weight")
        weight = rd.scalar(obj["weight"], f"{locus}weight")
    elif "weight" in obj:
        raise InputError("an averaging operator takes no weight", f"{locus}weight")
    spec = obj.get("map")
    shape = (rep.base.dim, rep.carrier_dim)
    if spec == "identity":
        if shape[0] != shape[1]:
            raise InputError("identity map needs equal dimensions", f"{locus}map")
        k = LinearMap.identity(shape[0])
    elif spec == "zero":
        k = LinearMap(zeros(*shape))
    else:
        k = rd.matrix(spec, shape, f"{locus}map")
    return OperatorData(k, ctx, weight)


def _tridendriform(obj, rd: _Reader, locus) -> TridendriformData:
    n = rd.dim(obj, "dim", f"{locus}dim")
    return TridendriformData(
        rd.constants(obj.get("bracket_part"), n, f"{locus}bracket_part", "antisymmetric"),
        rd.constants(obj.get("diamond"), n, f"{locus}diamond"),
        rd.constants(obj.get("dot_part"), n, f"{locus}dot_part", "symmetric"),
        rd.constants(obj.get("triangle"), n, f"{locus}triangle"),
    )


_PARSERS = {
    "algebra": _algebra,
    "representation": _representation,
    "module-algebra": _module,
    "matched-pair": _matched_pair,
    "coalgebra": _coalgebra,
    "bialgebra": _bialgebra,
    "operator": _operator,
    "tridendriform": _tridendriform,
}


def _parse_obj(obj, rd: _Reader, locus="") -> Document:
    if not isinstance(obj, dict):
        raise InputError("a document must be a JSON object", locus or None)
    kind = obj.get("kind")
    if kind not in _PARSERS:
        raise InputError(f"unknown document kind {kind!r}", f"{locus}kind")
    declared = obj.get("parameters", [])
    defaults = obj.get("params", {})
    if not isinstance(declared, list) or not isinstance(defaults, dict):
        raise InputError("parameters must be a list of names and params an object", f"{locus}parameters")
    params = dict(rd.params)
    for name, value in defaults.items():
        params.setdefault(name, _plain_scalar(value, f"{locus}params.{name}"))
    missing = [p for p in declared if p not in params]
    if missing:
        raise InputError(f"missing value for parameter(s) {', '.join(missing)}", f"{locus}parameters")
    inner = _Reader(params, rd.base_dir)
    value = _PARSERS[kind](obj, inner, locus)
    used = {p: params[p] for p in declared}
    meta = {k: obj[k] for k in ("name", "description", "expect") if k in obj}
    return Document(kind, value, used, meta)


def _plain_scalar(value, locus):
    try:
        return to_rational(value)
    except InputError as exc:
        raise InputError(str(exc), locus) from None


def parse_document(text: str, params: dict | None = None, base_dir=None) -> Document:
    """Parse one document.  ``params`` override the document's default values."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    given = {k: _plain_scalar(v, f"param {k}") for k, v in (params or {}).items()}
    return _parse_obj(obj, _Reader(given, Path(base_dir) if base_dir else None))


def resolve_path(name: str) -> Path:
    """A file path, the same with ``.json`` appended, or a packaged fixture name."""
    candidates = [Path(name), Path(name + ".json")]
    stem = Path(name).name
    candidates += [FIXTURE_DIR / stem, FIXTURE_DIR / (stem + ".json")]
    for path in candidates:
        if path.is_file():
            return path
    raise InputError(f"no such file or fixture: {name}")


def load_document(name: str, params: dict | None = None) -> Document:
    path = resolve_path(name)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        return parse_document(text, params, path.parent)
    except InputError as exc:
        raise InputError(f"{path.name}: {exc}") from None


# Serialization.

def _q(x) -> str:
    return format_rational(Fraction(x))


def quads(c) -> list:
    arr = c.array if isinstance(c, StructureConstants) else c
    return [[int(i) + 1, int(j) + 1, int(k) + 1, _q(arr[i, j, k])] for i, j, k in np.argwhere(arr != 0)]


def _matrix_out(m: LinearMap) -> list:
    return [[_q(x) for x in row] for row in m.array]


def _family_out(fam) -> list:
    return [_matrix_out(m) for m in fam]


def _algebra_out(a: AlgebraData) -> dict:
    out = {"kind": "algebra", "type": a.kind, "dim": a.dim, "product": quads(a.product)}
    if a.bracket is not None:
        out["bracket"] = quads(a.bracket)
    return out


def _rep_out(r: RepresentationData) -> dict:
    actions = {}
    for name in ("mu", "rho", "l", "r", "L", "R"):
        fam = getattr(r, name)
        if fam is not None:
            actions[name] = _family_out(fam)
    return {"kind": "representation", "base": _algebra_out(r.base), "carrier_dim": r.carrier_dim, "actions": actions}


def to_json_obj(value) -> dict:
    """The JSON object of a library value (algebra, representation, ...)."""
    if isinstance(value, AlgebraData):
        return _algebra_out(value)
    if isinstance(value, RepresentationData):
        return _rep_out(value)
    if isinstance(value, ModuleAlgebraData):
        out = {
            "kind": "module-algebra",
            "representation": _rep_out(value.rep),
            "carrier_product": quads(value.carrier_product),
        }
        if value.carrier_bracket is not None:
            out["carrier_bracket"] = quads(value.carrier_bracket)
        return out
    if isinstance(value, MatchedPairData):
        out = {"kind": "matched-pair", "a1": _algebra_out(value.a1), "a2": _algebra_out(value.a2)}
        for name in ("mu1", "mu2", "rho1", "rho2"):
            if getattr(value, name) is not None:
                out[name] = _family_out(getattr(value, name))
        return out
    if isinstance(value, CoalgebraData):
        return {"kind": "coalgebra", "dim": value.dim, "Delta": quads(value.Delta), "delta": quads(value.delta)}
    if isinstance(value, BialgebraData):
        return {"kind": "bialgebra", "algebra": _algebra_out(value.algebra), "coalgebra": to_json_obj(value.coalgebra)}
    if isinstance(value, OperatorData):
        out = {
            "kind": "operator",
            "operator": "rota-baxter" if value.is_rota_baxter else "averaging",
            "map": _matrix_out(value.map),
            "context": to_json_obj(value.context),
        }
        if value.weight is not None:
            out["weight"] = _q(value.weight)
        return out
    if isinstance(value, TridendriformData):
        return {
            "kind": "tridendriform",
            "dim": value.dim,
            "bracket_part": quads(value.bracket_part),
            "diamond": quads(value.diamond),
            "dot_part": quads(value.dot_part),
            "triangle": quads(value.triangle),
        }
    raise InputError(f"cannot serialize {type(value).__name__}")


def serialize_document(doc) -> str:
    """Self-contained JSON text: nested documents inlined, parameters substituted."""
    value = doc.value if isinstance(doc, Document) else doc
    obj = to_json_obj(value)
    if isinstance(doc, Document):
        for key in ("name", "description", "expect"):
            if key in doc.meta:
                obj[key] = doc.meta[key]
        if doc.params:
            obj["instantiated_with"] = {k: _q(v) for k, v in doc.params.items()}
    return dumps(obj)


def dumps(obj, indent=0) -> str:
    """JSON with one line per quadruple or matrix row."""
    pad = " " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    if isinstance(obj, list) and any(isinstance(x, (list, dict)) for x in obj):
        items = [pad + dumps(x, indent + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"
    return json.dumps(obj)
