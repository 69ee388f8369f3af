"""Algebra data and axiom checkers.

All identities are verified on basis elements only; by multilinearity that
is the same as verifying them on all vectors.  Each checker builds the two
sides of an identity as full tensors and compares them exactly, so a report
lists *every* failing index tuple, in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import InputError, PreconditionError
from .exact import StructureConstants, contract, format_rational, unstack, vector_str

KINDS = ("assoc", "comm-assoc", "almost-poisson", "awb-left", "awb-right")


@dataclass(frozen=True)
class Violation:
    """One failing instance of an identity.

    ``indices`` are 1-based basis indices.  ``lhs``/``rhs`` are the two sides
    in coordinates, flattened row-major when the identity is tensor valued.
    """

    identity: str
    indices: tuple
    lhs: tuple
    rhs: tuple

    def describe(self) -> str:
        idx = ",".join(str(i) for i in self.indices)
        return f"{self.identity} at ({idx}): lhs={vector_str(self.lhs)} rhs={vector_str(self.rhs)}"


@dataclass(frozen=True)
class CheckReport:
    name: str
    violations: tuple = ()

    def __post_init__(self):
        ordered = tuple(sorted(self.violations, key=lambda v: v.indices))
        object.__setattr__(self, "violations", ordered)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def failed_identities(self) -> set:
        return {v.identity for v in self.violations}

    def __bool__(self):
        return self.passed

    @classmethod
    def merge(cls, name, *reports: "CheckReport") -> "CheckReport":
        return cls(name, tuple(v for r in reports for v in r.violations))

    def summary(self) -> str:
        if self.passed:
            return f"{self.name}: pass"
        return f"{self.name}: fail ({len(self.violations)} violations; first {self.first.describe()})"

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "verdict": self.verdict,
            "violations": [
                {
                    "identity": v.identity,
                    "indices": list(v.indices),
                    "lhs": [format_rational(Fraction(x)) for x in v.lhs],
                    "rhs": [format_rational(Fraction(x)) for x in v.rhs],
                }
                for v in self.violations
            ],
        }


def compare(identity: str, lhs: np.ndarray, rhs: np.ndarray, index_ndim: int, offset=(0,)) -> list:
    """Violations of ``lhs == rhs``; the first ``index_ndim`` axes index the instance.

    ``offset`` shifts the reported (1-based) indices, per axis, for block
    layouts; a single value is broadcast.
    """
    if lhs.shape != rhs.shape:
        raise ValueError(f"{identity}: side shapes differ {lhs.shape} vs {rhs.shape}")
    value_axes = tuple(range(index_ndim, lhs.ndim))
    bad = np.any(lhs != rhs, axis=value_axes)
    if len(offset) == 1:
        offset = offset * index_ndim
    out = []
    for idx in np.argwhere(bad):
        idx = tuple(int(t) for t in idx)
        out.append(
            Violation(
                identity,
                tuple(i + 1 + o for i, o in zip(idx, offset)),
                tuple(np.asarray(lhs[idx]).ravel()),
                tuple(np.asarray(rhs[idx]).ravel()),
            )
        )
    return out


@dataclass(frozen=True)
class AlgebraData:
    """A finite-dimensional algebra: product constants, optional bracket, kind flag.

    The kind flag records what the data claims to be; the invariants below
    are only the symmetry conditions a kind implies.  Whether the axioms
    actually hold is for the checkers to decide.
    """

    product: StructureConstants
    bracket: StructureConstants | None = None
    kind: str = "assoc"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown algebra kind {self.kind!r}")
        n = self.product.dim_out
        if self.product.shape != (n, n, n):
            raise InputError(f"product constants must be cubic, got {self.product.shape}")
        if self.bracket is not None and self.bracket.shape != (n, n, n):
            raise InputError(f"bracket shape {self.bracket.shape} does not match dimension {n}")
        if self.kind in ("comm-assoc", "almost-poisson") and not self.product.is_symmetric():
            raise InputError(f"kind {self.kind} requires a symmetric product")
        if self.kind == "almost-poisson":
            if self.bracket is None:
                raise InputError("kind almost-poisson requires a bracket")
            if not self.bracket.is_antisymmetric():
                raise InputError("kind almost-poisson requires an antisymmetric bracket")
        if self.kind in ("awb-left", "awb-right") and self.bracket is None:
            raise InputError(f"kind {self.kind} requires a bracket")

    @property
    def dim(self) -> int:
        return self.product.dim_out

    @classmethod
    def build(cls, dim, product=(), bracket=None, kind="assoc"):
        """Convenience constructor from 1-based ``(i, j, k, value)`` entries."""
        shape = (dim, dim, dim)
        prod = StructureConstants.from_entries(shape, ((i - 1, j - 1, k - 1, v) for i, j, k, v in product))
        br = None
        if bracket is not None:
            br = StructureConstants.from_entries(shape, ((i - 1, j - 1, k - 1, v) for i, j, k, v in bracket))
        return cls(prod, br, kind)

    def mul(self, u, v) -> np.ndarray:
        return contract("i,j,ijk->k", np.asarray(u, dtype=object), np.asarray(v, dtype=object), self.product.array)

    def br(self, u, v) -> np.ndarray:
        if self.bracket is None:
            raise InputError("algebra has no bracket")
        return contract("i,j,ijk->k", np.asarray(u, dtype=object), np.asarray(v, dtype=object), self.bracket.array)

    def zero_bracket(self) -> StructureConstants:
        return self.bracket if self.bracket is not None else StructureConstants.zeros(self.dim)


def infer_kind(product: StructureConstants, bracket: StructureConstants | None, preferred: str) -> str:
    """``preferred`` when the constants have the symmetry it needs, else ``assoc``.

    Constructions aimed at a symmetric kind fall back to the generic label
    when their inputs are broken; the checkers then report the failures.
    """
    try:
        AlgebraData(product, bracket, preferred)
    except InputError:
        return "assoc"
    return preferred


def left_multiplications(c: StructureConstants) -> tuple:
    """``L(e_i)``: the matrix of ``y -> e_i o y``."""
    return unstack(c.array.transpose(0, 2, 1))


def right_multiplications(c: StructureConstants) -> tuple:
    """``R(e_j)``: the matrix of ``x -> x o e_j``."""
    return unstack(c.array.transpose(1, 2, 0))


def _require_bracket(a: AlgebraData, what: str):
    if a.bracket is None:
        raise InputError(f"{what} needs a bracket")


def _assoc_violations(c: np.ndarray) -> list:
    lhs = contract("ijm,mkn->ijkn", c, c)
    rhs = contract("jkm,imn->ijkn", c, c)
    return compare("associativity", lhs, rhs, 3)


def _comm_violations(c: np.ndarray) -> list:
    return compare("commutativity", c, c.transpose(1, 0, 2), 2)


def _antisym_violations(b: np.ndarray) -> list:
    return compare("antisymmetry", b, -b.transpose(1, 0, 2), 2)


def _left_leibniz(c: np.ndarray, b: np.ndarray, name: str) -> list:
    # {x, y z} = {x, y} z + y {x, z}
    lhs = contract("jkm,imn->ijkn", c, b)
    rhs = contract("ijm,mkn->ijkn", b, c) + contract("ikm,jmn->ijkn", b, c)
    return compare(name, lhs, rhs, 3)


def _right_leibniz(c: np.ndarray, b: np.ndarray) -> list:
    # [x y, z] = x [y, z] + [x, z] y
    lhs = contract("ijm,mkn->ijkn", c, b)
    rhs = contract("jkm,imn->ijkn", b, c) + contract("ikm,mjn->ijkn", b, c)
    return compare("right-leibniz", lhs, rhs, 3)


def check_assoc(a: AlgebraData) -> CheckReport:
    return CheckReport("assoc", tuple(_assoc_violations(a.product.array)))


def check_comm_assoc(a: AlgebraData) -> CheckReport:
    c = a.product.array
    return CheckReport("comm-assoc", tuple(_comm_violations(c) + _assoc_violations(c)))


def check_almost_poisson(a: AlgebraData) -> CheckReport:
    """Commutative associative product, skew bracket, and the Leibniz rule
    ``[x, y.z] = [x, y].z + y.[x, z]``."""
    _require_bracket(a, "check_almost_poisson")
    c = a.product.array
    b = a.bracket.array
    found = _comm_violations(c) + _assoc_violations(c) + _antisym_violations(b) + _left_leibniz(c, b, "leibniz")
    return CheckReport("almost-poisson", tuple(found))


def check_awb(a: AlgebraData, variant: str = "left") -> CheckReport:
    """Associative product plus the one-sided biderivation rule.

    left:  ``{x, y.z} = {x, y}.z + y.{x, z}``
    right: ``[x.y, z] = x.[y, z] + [x, z].y``
    """
    _require_bracket(a, "check_awb")
    c = a.product.array
    b = a.bracket.array
    if variant == "left":
        rule = _left_leibniz(c, b, "left-leibniz")
    elif variant == "right":
        rule = _right_leibniz(c, b)
    else:
        raise InputError(f"AWB variant must be 'left' or 'right', got {variant!r}")
    return CheckReport(f"awb-{variant}", tuple(_assoc_violations(c) + rule))


def opposite_bracket(a: AlgebraData) -> AlgebraData:
    _require_bracket(a, "opposite_bracket")
    return AlgebraData(a.product, a.bracket.opposite(), "awb-right")


def check_opposite_bracket(a: AlgebraData) -> CheckReport:
    """A left AWB with its bracket reversed must be a right AWB.

    If ``a`` is not a left AWB to begin with, that failing report is returned.
    """
    left = check_awb(a, "left")
    if not left.passed:
        return left
    right = check_awb(opposite_bracket(a), "right")
    return CheckReport("opposite-bracket", right.violations)


def check_for_kind(a: AlgebraData) -> CheckReport:
    """The checker matching the algebra's declared kind."""
    if a.kind == "assoc":
        return check_assoc(a)
    if a.kind == "comm-assoc":
        return check_comm_assoc(a)
    if a.kind == "almost-poisson":
        return check_almost_poisson(a)
    return check_awb(a, a.kind.split("-")[1])


def require(report: CheckReport, what: str) -> CheckReport:
    if not report.passed:
        raise PreconditionError(f"{what}: {report.summary()}", report)
    return report


def restrict(a: AlgebraData, indices: Iterable[int]) -> AlgebraData:
    """Constants of the span of the given 0-based basis vectors, read off ``a``.

    Components leaving the span are dropped; use only on subalgebras.
    """
    idx = list(indices)
    sub = np.ix_(idx, idx, idx)
    prod = StructureConstants(a.product.array[sub])
    br = None if a.bracket is None else StructureConstants(a.bracket.array[sub])
    return AlgebraData(prod, br, infer_kind(prod, br, a.kind))


def scaled(a: AlgebraData, factor) -> AlgebraData:
    br = None if a.bracket is None else a.bracket.scaled(factor)
    return AlgebraData(a.product.scaled(factor), br, a.kind)


__all__ = [
    "AlgebraData",
    "CheckReport",
    "KINDS",
    "Violation",
    "check_almost_poisson",
    "check_assoc",
    "check_awb",
    "check_comm_assoc",
    "check_for_kind",
    "check_opposite_bracket",
    "compare",
    "infer_kind",
    "left_multiplications",
    "opposite_bracket",
    "restrict",
    "right_multiplications",
]
