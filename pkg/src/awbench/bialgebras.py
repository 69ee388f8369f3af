"""Coalgebras, almost Poisson D-bialgebras, the double on A + A*, Manin triples.

Comultiplications are rank-3 tensors ``D[k, i, j]`` with
``Delta(e_k) = sum D[k, i, j] e_i (x) e_j``; each ``D[k]`` is then a matrix and
``(M (x) N) D[k] = M D[k] N^T``, ``tau D[k] = D[k]^T``.  The dual algebra on A*
has constants ``p[i, j, k] = D[k, i, j]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebras import (
    AlgebraData,
    CheckReport,
    Violation,
    check_almost_poisson,
    compare,
    infer_kind,
    left_multiplications,
    require,
)
from .errors import InputError
from .exact import StructureConstants, contract, det, dualize_action, rational_array, zeros
from .matched_pairs import MatchedPairData, bowtie, check_matched_pair_ap


@dataclass(frozen=True)
class CoalgebraData:
    Delta: np.ndarray
    delta: np.ndarray

    def __post_init__(self):
        D = rational_array(self.Delta, ndim=3)
        E = rational_array(self.delta, ndim=3)
        n = D.shape[0]
        if D.shape != (n, n, n) or E.shape != (n, n, n):
            raise InputError(f"comultiplication shapes {D.shape}, {E.shape} must both be cubic and equal")
        D.flags.writeable = False
        E.flags.writeable = False
        object.__setattr__(self, "Delta", D)
        object.__setattr__(self, "delta", E)

    @property
    def dim(self) -> int:
        return self.Delta.shape[0]

    @classmethod
    def zero(cls, dim):
        return cls(zeros(dim, dim, dim), zeros(dim, dim, dim))

    def __eq__(self, other):
        if not isinstance(other, CoalgebraData):
            return NotImplemented
        return np.array_equal(self.Delta, other.Delta) and np.array_equal(self.delta, other.delta)

    def __hash__(self):
        return hash((tuple(self.Delta.ravel()), tuple(self.delta.ravel())))


@dataclass(frozen=True)
class BialgebraData:
    algebra: AlgebraData
    coalgebra: CoalgebraData

    def __post_init__(self):
        if self.algebra.bracket is None:
            raise InputError("a bialgebra needs an algebra with a bracket")
        if self.algebra.dim != self.coalgebra.dim:
            raise InputError(f"algebra dimension {self.algebra.dim} != coalgebra dimension {self.coalgebra.dim}")

    @property
    def dim(self) -> int:
        return self.algebra.dim


@dataclass(frozen=True)
class BilinearForm:
    gram: np.ndarray

    def __post_init__(self):
        g = rational_array(self.gram, ndim=2)
        if g.shape[0] != g.shape[1]:
            raise InputError(f"gram matrix must be square, got {g.shape}")
        if not np.array_equal(g, g.T):
            raise InputError("gram matrix must be symmetric")
        g.flags.writeable = False
        object.__setattr__(self, "gram", g)

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    @classmethod
    def standard(cls, n):
        """``w(x + xi, y + eta) = <x, eta> + <xi, y>`` on A + A*."""
        g = zeros(2 * n, 2 * n)
        for i in range(n):
            g[i, n + i] = 1
            g[n + i, i] = 1
        return cls(g)

    def __call__(self, u, v):
        return np.asarray(u, dtype=object).dot(self.gram).dot(np.asarray(v, dtype=object))


def check_coalgebra(c: CoalgebraData) -> CheckReport:
    """Cocommutativity and coassociativity of Delta, skew-symmetry of delta,
    and the co-Leibniz rule
    ``(id (x) Delta) delta - (delta (x) id) Delta - (tau (x) id)(id (x) delta) Delta = 0``.

    Each identity is compared per basis element ``e_k``; the value is the full
    tensor in ``A (x) A`` or ``A (x) A (x) A``.
    """
    D, E = c.Delta, c.delta
    coassoc_l = contract("kaj,jbc->kabc", D, D)
    coassoc_r = contract("kic,iab->kabc", D, D)
    co_leibniz = (
        contract("kaj,jbc->kabc", E, D)
        - contract("kic,iab->kabc", D, E)
        - contract("kbj,jac->kabc", D, E)
    )
    found = (
        compare("cocommutativity", D, D.transpose(0, 2, 1), 1)
        + compare("coassociativity", coassoc_l, coassoc_r, 1)
        + compare("anticocommutativity", E, -E.transpose(0, 2, 1), 1)
        + compare("co-leibniz", co_leibniz, np.zeros_like(co_leibniz), 1)
    )
    return CheckReport("coalgebra", tuple(found))


def dualize_coalgebra(c: CoalgebraData) -> AlgebraData:
    """The algebra ``(A*, Delta^*, delta^*)``: ``xi_i . xi_j = sum_k D[k, i, j] xi_k``."""
    prod = StructureConstants(np.transpose(c.Delta, (1, 2, 0)))
    br = StructureConstants(np.transpose(c.delta, (1, 2, 0)))
    return AlgebraData(prod, br, infer_kind(prod, br, "almost-poisson"))


def encode_coalgebra(a: AlgebraData) -> CoalgebraData:
    """Inverse of :func:`dualize_coalgebra`: read an algebra on A* as a coalgebra on A."""
    return CoalgebraData(np.transpose(a.product.array, (2, 0, 1)), np.transpose(a.zero_bracket().array, (2, 0, 1)))


def _mats(a: AlgebraData):
    """Stacks of left multiplication and ad matrices, ``L[p] = c[p].T``."""
    return a.product.array.transpose(0, 2, 1), a.bracket.array.transpose(0, 2, 1)


def _infinitesimal(a: AlgebraData, D):
    c = a.product.array
    L, _ = _mats(a)
    lhs = contract("pqm,mab->pqab", c, D)
    rhs = contract("pax,qxb->pqab", L, D) + contract("pax,qbx->pqab", D, L)
    return lhs, rhs


def check_infinitesimal(b: BialgebraData) -> CheckReport:
    """``Delta(x.y) = (L(x) (x) id) Delta(y) + (id (x) L(y)) Delta(x)`` on basis pairs."""
    lhs, rhs = _infinitesimal(b.algebra, b.coalgebra.Delta)
    return CheckReport("infinitesimal", tuple(compare("infinitesimal", lhs, rhs, 2)))


def _bi4_bi5(b: BialgebraData):
    a = b.algebra
    c, br = a.product.array, a.bracket.array
    L, ad = _mats(a)
    D, E = b.coalgebra.Delta, b.coalgebra.delta
    # terms indexed (p, q, a, b) for x = e_p, y = e_q
    M_D = lambda M: contract("pax,qxb->pqab", M, D)  # noqa: E731  M(x) (x) id on Delta(y)
    bi4 = (
        contract("pqm,mab->pqab", c, E)
        + contract("qax,pxb->pqab", ad, D)
        - contract("qax,pbx->pqab", E, L)
        + M_D(ad)
        - contract("pax,qbx->pqab", E, L)
    )
    bi5 = (
        contract("pqm,mab->pqab", br, D)
        - contract("qax,pxb->pqab", L, E)
        - contract("qax,pbx->pqab", D, ad)
        + contract("pax,qbx->pqab", E, L)
        - M_D(ad)
    )
    return bi4, bi5


def _require_inputs(b: BialgebraData):
    require(check_almost_poisson(b.algebra), "the algebra is not almost Poisson")
    require(check_coalgebra(b.coalgebra), "the coalgebra is not an almost Poisson coalgebra")


def check_dbialgebra(b: BialgebraData) -> CheckReport:
    """Infinitesimal condition plus the two mixed compatibilities

    ``delta(x.y) + (ad(y) (x) id)Delta(x) - (id (x) L(x))delta(y) + (ad(x) (x) id)Delta(y) - (id (x) L(y))delta(x) = 0``
    ``Delta([x,y]) - (L(y) (x) id)delta(x) - (id (x) ad(x))Delta(y) + (id (x) L(y))delta(x) - (ad(x) (x) id)Delta(y) = 0``

    Raises PreconditionError unless the algebra and coalgebra pass their own checks.
    """
    _require_inputs(b)
    lhs, rhs = _infinitesimal(b.algebra, b.coalgebra.Delta)
    bi4, bi5 = _bi4_bi5(b)
    zero = np.zeros_like(bi4)
    found = compare("infinitesimal", lhs, rhs, 2) + compare("Bi4", bi4, zero, 2) + compare("Bi5", bi5, zero, 2)
    return CheckReport("d-bialgebra", tuple(found))


def build_dual_maps(b: BialgebraData) -> MatchedPairData:
    """``(A, A*, ad_A^*, -L^*, ad_{A*}^*, -L_{A*}^*)``, each dual action having matrix ``-theta^T``."""
    a = b.algebra
    dual = dualize_coalgebra(b.coalgebra)
    return MatchedPairData(
        a,
        dual,
        mu1=dualize_action(left_multiplications(a.product), sign=-1),
        mu2=dualize_action(left_multiplications(dual.product), sign=-1),
        rho1=dualize_action(left_multiplications(a.bracket), sign=1),
        rho2=dualize_action(left_multiplications(dual.bracket), sign=1),
    )


def build_double(b: BialgebraData) -> tuple:
    """The bowtie of the dual maps on A + A* and the standard form on it."""
    return bowtie(build_dual_maps(b)), BilinearForm.standard(b.dim)


def standard_split(n):
    return tuple(range(n)), tuple(range(n, 2 * n))


def _scalar(v):
    return v[..., None]


def check_manin_triple(a: AlgebraData, split, form: BilinearForm) -> CheckReport:
    """Almost Poisson algebra with an invariant nondegenerate symmetric form and a
    split into two isotropic subalgebras.

    ``split`` holds two sets of 0-based basis indices; reported indices are 1-based.
    """
    n = a.dim
    first, second = (tuple(sorted(set(int(i) for i in part))) for part in split)
    if set(first) & set(second) or set(first) | set(second) != set(range(n)):
        raise InputError(f"split {first} | {second} is not a partition of the basis of a {n}-dimensional space")
    if form.dim != n:
        raise InputError(f"form dimension {form.dim} != algebra dimension {n}")
    if a.bracket is None:
        raise InputError("check_manin_triple needs a bracket")
    g = form.gram
    found = [Violation("algebra-" + v.identity, v.indices, v.lhs, v.rhs) for v in check_almost_poisson(a).violations]
    for name, c in (("invariance-product", a.product.array), ("invariance-bracket", a.bracket.array)):
        lhs = contract("ijm,mk->ijk", c, g)
        rhs = contract("jkm,im->ijk", c, g)
        found += compare(name, _scalar(lhs), _scalar(rhs), 3)
    for label, part in (("1", first), ("2", second)):
        outside = [k for k in range(n) if k not in part]
        idx = np.ix_(part, part, outside)
        for op, c in (("product", a.product.array), ("bracket", a.bracket.array)):
            leak = c[idx]
            found += _remap(compare(f"closure-{op}-{label}", leak, np.zeros_like(leak), 2), part)
        block = g[np.ix_(part, part)]
        found += _remap(compare(f"isotropy-{label}", _scalar(block), _scalar(np.zeros_like(block)), 2), part)
    d = det(g)
    if d == 0:
        found.append(Violation("nondegeneracy", (), (d,), (1,)))
    return CheckReport("manin-triple", tuple(found))


def _remap(violations, part):
    return [Violation(v.identity, tuple(part[i - 1] + 1 for i in v.indices), v.lhs, v.rhs) for v in violations]


@dataclass(frozen=True)
class EquivalenceReport:
    dbialgebra: CheckReport
    matched_pair: CheckReport
    manin_triple: CheckReport

    @property
    def verdicts(self) -> tuple:
        return (self.dbialgebra.passed, self.matched_pair.passed, self.manin_triple.passed)

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts)) == 1

    def reports(self):
        return (self.dbialgebra, self.matched_pair, self.manin_triple)


def equivalence_report(b: BialgebraData) -> EquivalenceReport:
    """The three equivalent conditions evaluated independently."""
    _require_inputs(b)
    double, form = build_double(b)
    return EquivalenceReport(
        check_dbialgebra(b),
        check_matched_pair_ap(build_dual_maps(b)),
        check_manin_triple(double, standard_split(b.dim), form),
    )

