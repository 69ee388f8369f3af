"""Exact rational scalars, vectors, matrices and rank-3 tensors.

Everything here works over :class:`fractions.Fraction`.  Arrays are numpy
object arrays holding Fractions; they are frozen (read-only) once wrapped so
that the algebra objects built on top of them can be shared freely.

Coordinate conventions used throughout the package:

* structure constants ``c[i, j, k]``: ``e_i o e_j = sum_k c[i, j, k] e_k``
  (left operand first, right operand second, output last);
* linear maps: column ``j`` is the image of ``e_j``;
* rank-2 tensors ``t[i, j]``: coefficient of ``e_i (x) e_j``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

MAX_DIM = 16

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def to_rational(value) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats are rejected: they would smuggle rounding into exact checks.
    """
    if isinstance(value, bool):
        raise InputError(f"not a rational scalar: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise InputError(f"not a rational literal: {value!r}")
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise InputError(f"zero denominator in {value!r}") from None
    raise InputError(f"not a rational scalar: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


_to_rational_vec = np.frompyfunc(to_rational, 1, 1)


def rational_array(data, ndim=None) -> np.ndarray:
    """Object array of Fractions built from nested sequences (or an array)."""
    if isinstance(data, np.ndarray) and data.dtype == object:
        arr = data
    else:
        arr = np.array(data, dtype=object)
    if ndim is not None and arr.ndim != ndim:
        raise InputError(f"expected a rank-{ndim} array, got shape {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    if arr.size:
        out[...] = _to_rational_vec(arr)
    return out


def zeros(*shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def frozen(arr: np.ndarray) -> np.ndarray:
    arr = rational_array(arr)
    arr.flags.writeable = False
    return arr


def unit_vector(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = Fraction(1)
    return v


def as_vector(v, n: int | None = None) -> np.ndarray:
    arr = rational_array(v, ndim=1)
    if n is not None and arr.shape[0] != n:
        raise InputError(f"vector of length {arr.shape[0]}, expected {n}")
    return arr


def _key(arr: np.ndarray):
    return (arr.shape, tuple(arr.ravel()))


class StructureConstants:
    """Rank-3 tensor of rationals encoding a bilinear map in fixed bases.

    ``c[i, j, k]`` is the coefficient of ``e_k`` in ``e_i o e_j``.
    """

    __slots__ = ("_a",)

    def __init__(self, entries):
        arr = frozen(rational_array(entries, ndim=3))
        if max(arr.shape, default=0) > MAX_DIM:
            raise InputError(f"dimension {max(arr.shape)} exceeds the limit {MAX_DIM}")
        self._a = arr

    @classmethod
    def zeros(cls, dim_left, dim_right=None, dim_out=None):
        dim_right = dim_left if dim_right is None else dim_right
        dim_out = dim_left if dim_out is None else dim_out
        return cls(zeros(dim_left, dim_right, dim_out))

    @classmethod
    def from_entries(cls, shape, entries: Iterable[tuple]):
        """Build from ``(i, j, k, value)`` quadruples with 0-based indices.

        Repeated indices with different values are rejected.
        """
        arr = zeros(*shape)
        seen = {}
        for i, j, k, value in entries:
            q = to_rational(value)
            if not (0 <= i < shape[0] and 0 <= j < shape[1] and 0 <= k < shape[2]):
                raise InputError(f"index ({i + 1}, {j + 1}, {k + 1}) out of range for shape {shape}")
            if (i, j, k) in seen and seen[i, j, k] != q:
                raise InputError(f"contradictory entries for ({i + 1}, {j + 1}, {k + 1})")
            seen[i, j, k] = q
            arr[i, j, k] = q
        return cls(arr)

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def shape(self):
        return self._a.shape

    @property
    def dim_left(self):
        return self._a.shape[0]

    @property
    def dim_right(self):
        return self._a.shape[1]

    @property
    def dim_out(self):
        return self._a.shape[2]

    def __getitem__(self, idx):
        return self._a[idx]

    def opposite(self) -> "StructureConstants":
        """Constants of ``(x, y) -> y o x``."""
        return StructureConstants(self._a.transpose(1, 0, 2))

    def scaled(self, factor) -> "StructureConstants":
        return StructureConstants(self._a * to_rational(factor))

    def __add__(self, other):
        return StructureConstants(self._a + other._a)

    def __sub__(self, other):
        return StructureConstants(self._a - other._a)

    def __neg__(self):
        return StructureConstants(-self._a)

    def is_symmetric(self) -> bool:
        return self.dim_left == self.dim_right and bool(np.all(self._a == self._a.transpose(1, 0, 2)))

    def is_antisymmetric(self) -> bool:
        return self.dim_left == self.dim_right and bool(np.all(self._a == -self._a.transpose(1, 0, 2)))

    def is_zero(self) -> bool:
        return not np.any(self._a != 0)

    def nonzero(self):
        """Yield ``(i, j, k, value)`` for every nonzero entry, 0-based, in index order."""
        for idx in np.argwhere(self._a != 0):
            i, j, k = (int(t) for t in idx)
            yield i, j, k, self._a[i, j, k]

    def __eq__(self, other):
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return _key(self._a) == _key(other._a)

    def __hash__(self):
        return hash(_key(self._a))

    def __repr__(self):
        items = ", ".join(f"({i + 1},{j + 1},{k + 1}): {format_rational(v)}" for i, j, k, v in self.nonzero())
        return f"StructureConstants(shape={self.shape}, {{{items}}})"


class LinearMap:
    """Matrix of rationals; column ``j`` is the image of the ``j``-th basis vector."""

    __slots__ = ("_a",)

    def __init__(self, entries):
        self._a = frozen(rational_array(entries, ndim=2))

    @classmethod
    def zeros(cls, rows, cols=None):
        return cls(zeros(rows, rows if cols is None else cols))

    @classmethod
    def identity(cls, n):
        m = zeros(n, n)
        for i in range(n):
            m[i, i] = Fraction(1)
        return cls(m)

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def rows(self):
        return self._a.shape[0]

    @property
    def cols(self):
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    @property
    def T(self) -> "LinearMap":
        return LinearMap(self._a.T)

    def __call__(self, v) -> np.ndarray:
        return self._a.dot(as_vector(v, self.cols))

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if self.cols != other.rows:
            raise InputError(f"cannot compose {self.shape} with {other.shape}")
        return LinearMap(self._a.dot(other._a))

    def __add__(self, other):
        return LinearMap(self._a + other._a)

    def __sub__(self, other):
        return LinearMap(self._a - other._a)

    def __neg__(self):
        return LinearMap(-self._a)

    def scaled(self, factor) -> "LinearMap":
        return LinearMap(self._a * to_rational(factor))

    def is_zero(self) -> bool:
        return not np.any(self._a != 0)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return _key(self._a) == _key(other._a)

    def __hash__(self):
        return hash(_key(self._a))

    def __repr__(self):
        rows = "; ".join(" ".join(format_rational(x) for x in row) for row in self._a)
        return f"LinearMap([{rows}])"


Family = tuple  # tuple[LinearMap, ...], one matrix per basis vector of the acting space


def family(matrices) -> tuple:
    fam = tuple(m if isinstance(m, LinearMap) else LinearMap(m) for m in matrices)
    if fam and len({m.shape for m in fam}) != 1:
        raise InputError("matrices of one action family must share a shape")
    return fam


def stack(fam, rows=None, cols=None) -> np.ndarray:
    """Family of matrices as one ``(len, rows, cols)`` object array."""
    if not fam:
        return zeros(0, rows or 0, cols if cols is not None else rows or 0)
    return np.stack([m.array for m in fam])


def unstack(arr: np.ndarray) -> tuple:
    return tuple(LinearMap(m) for m in arr)


def zero_family(count, n) -> tuple:
    return tuple(LinearMap.zeros(n) for _ in range(count))


def bilinear_apply(c: StructureConstants, u, v) -> np.ndarray:
    """``sum_ij u_i v_j c[i, j, :]``."""
    u = as_vector(u)
    v = as_vector(v)
    if u.shape[0] != c.dim_left or v.shape[0] != c.dim_right:
        raise InputError(
            f"operands of length {u.shape[0]}, {v.shape[0]} do not fit constants of shape {c.shape}"
        )
    return contract("i,j,ijk->k", u, v, c.array)


def flip_tau(t) -> np.ndarray:
    """Switch map on ``V (x) V``: ``out[i, j] = t[j, i]``."""
    arr = rational_array(t, ndim=2)
    if arr.shape[0] != arr.shape[1]:
        raise InputError(f"flip needs square legs, got shape {arr.shape}")
    return arr.T.copy()


def dualize_action(theta, sign=1) -> tuple:
    """Dual action ``sign * theta^*`` on the dual space.

    The dual of ``theta(x)`` is fixed by ``<theta^*(x) xi, v> = -<xi, theta(x) v>``,
    so its matrix in the dual basis is ``-theta(x)^T``.  ``sign=-1`` gives
    ``-theta^*``, whose matrix is the plain transpose.
    """
    if sign not in (1, -1):
        raise InputError(f"sign must be +1 or -1, got {sign!r}")
    out = []
    for m in family(theta):
        if m.rows != m.cols:
            raise InputError(f"dual action needs square matrices, got {m.shape}")
        out.append(LinearMap(-sign * m.array.T))
    return tuple(out)


def act(fam_stack: np.ndarray, x) -> np.ndarray:
    """Evaluate a linear family at a coordinate vector: ``sum_i x_i theta(e_i)``."""
    return contract("i,iab->ab", as_vector(x), fam_stack)


def _cleared(arr: np.ndarray) -> tuple:
    """``(integer array, d)`` with ``arr == integer array / d``."""
    flat = arr.ravel().tolist()
    d = 1
    for q in flat:
        if q.denominator != 1:
            d = lcm(d, q.denominator)
    ints = np.empty(len(flat), dtype=object)
    if d == 1:
        ints[:] = [int(q.numerator) for q in flat]
    else:
        ints[:] = [q.numerator * (d // q.denominator) for q in flat]
    return ints.reshape(arr.shape), d


def contract(spec: str, *operands) -> np.ndarray:
    """Exact ``np.einsum`` over arrays of rationals.

    Denominators are cleared first so the contraction itself runs on Python
    ints; the common scale is divided out once at the end.  Integral results
    come back as ints, the rest as Fractions.
    """
    scale = 1
    ints = []
    for op in operands:
        arr, d = _cleared(np.asarray(op, dtype=object))
        ints.append(arr)
        scale *= d
    out = np.asarray(np.einsum(spec, *ints, optimize=len(ints) > 2), dtype=object)
    if scale == 1:
        return out
    result = np.empty(out.shape, dtype=object)
    result.reshape(-1)[:] = [x // scale if x % scale == 0 else Fraction(x, scale) for x in out.ravel().tolist()]
    return result


# Exact linear algebra.  Bareiss elimination keeps the pivots exact and,
# for integer input, every intermediate entry integral.

def _bareiss(rows: list) -> tuple:
    """Row-reduce in place; returns (rank, sign, last pivot)."""
    m = rows
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    prev = Fraction(1)
    sign = 1
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        p = m[r][c]
        for i in range(r + 1, n_rows):
            f = m[i][c]
            for j in range(c + 1, n_cols):
                m[i][j] = (p * m[i][j] - f * m[r][j]) / prev
            m[i][c] = Fraction(0)
        prev = p
        r += 1
        if r == n_rows:
            break
    return r, sign, prev


def rank(matrix) -> int:
    arr = rational_array(matrix, ndim=2)
    if arr.size == 0:
        return 0
    return _bareiss([list(row) for row in arr])[0]


def det(matrix) -> Fraction:
    arr = rational_array(matrix, ndim=2)
    n = arr.shape[0]
    if arr.shape != (n, n):
        raise InputError(f"determinant of a non-square matrix {arr.shape}")
    if n == 0:
        return Fraction(1)
    rows = [list(row) for row in arr]
    r, sign, _ = _bareiss(rows)
    if r < n:
        return Fraction(0)
    return sign * rows[n - 1][n - 1]


def in_column_span(basis, v) -> bool:
    """Whether ``v`` lies in the span of the columns of ``basis``."""
    b = rational_array(basis, ndim=2)
    v = as_vector(v, b.shape[0])
    return rank(np.column_stack([b, v])) == rank(b)


def solve(matrix, rhs) -> np.ndarray | None:
    """One exact solution of ``matrix @ x = rhs``, or None when inconsistent."""
    a = rational_array(matrix, ndim=2)
    b = as_vector(rhs, a.shape[0])
    n_rows, n_cols = a.shape
    m = [list(a[i]) + [b[i]] for i in range(n_rows)]
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][-1] != 0 for i in range(r, n_rows)):
        return None
    x = zeros(n_cols)
    for i, c in enumerate(pivots):
        x[c] = m[i][-1]
    return x


def inverse(matrix) -> np.ndarray:
    a = rational_array(matrix, ndim=2)
    n = a.shape[0]
    if a.shape != (n, n) or rank(a) < n:
        raise InputError("matrix is not invertible")
    if n == 0:
        return zeros(0, 0)
    return np.column_stack([solve(a, unit_vector(n, i)) for i in range(n)])


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def change_basis(c: StructureConstants, p) -> StructureConstants:
    """Constants of the same bilinear map in the basis given by the columns of ``p``."""
    p = rational_array(p, ndim=2)
    pinv = inverse(p)
    arr = contract("ia,jb,ijk,ck->abc", p, p, c.array, pinv)
    return StructureConstants(arr)


def vector_str(v: Sequence) -> str:
    return "(" + ", ".join(format_rational(Fraction(x)) for x in v) + ")"
