"""Matched pairs of commutative associative and almost Poisson algebras.

``mu1, rho1`` are indexed by the basis of A1 and act on A2; ``mu2, rho2`` are
indexed by A2 and act on A1.  The bowtie algebra lives on A1 + A2 with the
A1 block first.

Violations carry indices local to each factor, in the order the variables
appear in the identity name's docstring below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebras import (
    AlgebraData,
    CheckReport,
    Violation,
    check_almost_poisson,
    check_comm_assoc,
    compare,
    infer_kind,
    restrict,
)
from .errors import InputError
from .exact import MAX_DIM, LinearMap, StructureConstants, contract, family, stack, zeros
from .representations import RepresentationData, check_ap_rep, check_assoc_rep


@dataclass(frozen=True)
class MatchedPairData:
    a1: AlgebraData
    a2: AlgebraData
    mu1: tuple
    mu2: tuple
    rho1: tuple | None = None
    rho2: tuple | None = None

    def __post_init__(self):
        if (self.rho1 is None) != (self.rho2 is None):
            raise InputError("give both rho1 and rho2, or neither")
        n, m = self.a1.dim, self.a2.dim
        for name, count, size in (("mu1", n, m), ("rho1", n, m), ("mu2", m, n), ("rho2", m, n)):
            fam = getattr(self, name)
            if fam is None:
                continue
            fam = family(fam)
            object.__setattr__(self, name, fam)
            if len(fam) != count or any(t.shape != (size, size) for t in fam):
                raise InputError(f"{name} must be {count} matrices of shape {size}x{size}")

    @property
    def has_brackets(self) -> bool:
        return self.rho1 is not None

    def tensors(self):
        """Action tensors ``T[i, a, k]``: the k-th coordinate of ``theta(e_i) e_a``."""
        n, m = self.a1.dim, self.a2.dim
        out = {}
        for name, size in (("mu1", m), ("rho1", m), ("mu2", n), ("rho2", n)):
            fam = getattr(self, name)
            if fam is not None:
                out[name] = stack(fam, size).transpose(0, 2, 1)
        return out


def _tag(prefix, violations):
    return [Violation(f"{prefix}{v.identity}", v.indices, v.lhs, v.rhs) for v in violations]


def _caa(c_y, t_x, t_y):
    """``mu_X(x)(a.b) = (mu_X(x)a).b + mu_X(mu_Y(a)x) b`` with x in X and a, b in Y."""
    lhs = contract("pqm,imk->ipqk", c_y, t_x)
    rhs = contract("ipm,mqk->ipqk", t_x, c_y) + contract("pij,jqk->ipqk", t_y, t_x)
    return lhs, rhs


def _poi_product(c_y, p_x, m_x, p_y):
    """rho_X(x)(a.b) = (rho_X(x)a).b + a.(rho_X(x)b) - mu_X(rho_Y(a)x)b - mu_X(rho_Y(b)x)a."""
    lhs = contract("ijm,pmk->pijk", c_y, p_x)
    rhs = (
        contract("pim,mjk->pijk", p_x, c_y)
        + contract("pjm,imk->pijk", p_x, c_y)
        - contract("ips,sjk->pijk", p_y, m_x)
        - contract("jps,sik->pijk", p_y, m_x)
    )
    return lhs, rhs


def _poi_bracket(c_y, b_y, p_x, m_x, p_y, m_y):
    """[a, mu_X(x)b] - rho_X(mu_Y(b)x)a = mu_X(rho_Y(a)x)b - (rho_X(x)a).b + mu_X(x)[a, b]."""
    lhs = contract("pjm,imk->ipjk", m_x, b_y) - contract("jps,sik->ipjk", m_y, p_x)
    rhs = (
        contract("ips,sjk->ipjk", p_y, m_x)
        - contract("pim,mjk->ipjk", p_x, c_y)
        + contract("ijm,pmk->ipjk", b_y, m_x)
    )
    return lhs, rhs


def _caa_violations(mp: MatchedPairData) -> list:
    t = mp.tensors()
    c1, c2 = mp.a1.product.array, mp.a2.product.array
    return compare("matchCAA1", *_caa(c2, t["mu1"], t["mu2"]), 3) + compare(
        "matchCAA2", *_caa(c1, t["mu2"], t["mu1"]), 3
    )


def check_matched_pair_caa(mp: MatchedPairData) -> CheckReport:
    """Both algebras commutative associative, ``mu1``/``mu2`` representations,
    and the two compatibility identities (matchCAA1: x1, x2, y2; matchCAA2: x2, x1, y1)."""
    found = (
        _tag("a1-", check_comm_assoc(mp.a1).violations)
        + _tag("a2-", check_comm_assoc(mp.a2).violations)
        + _tag("rep1-", check_assoc_rep(RepresentationData(mp.a1, mp.a2.dim, mu=mp.mu1)).violations)
        + _tag("rep2-", check_assoc_rep(RepresentationData(mp.a2, mp.a1.dim, mu=mp.mu2)).violations)
        + _caa_violations(mp)
    )
    return CheckReport("matched-pair-caa", tuple(found))


def check_matched_pair_ap(mp: MatchedPairData) -> CheckReport:
    """Both algebras almost Poisson, the CAA matched pair conditions, both almost
    Poisson representations, and the four compatibilities:

    matpoi1 (x2, x1, y1), matpoi2 (x1, x2, y2), matpoi3 (x1, x2, y1), matpoi4 (x2, x1, y2).
    """
    if not mp.has_brackets:
        raise InputError("check_matched_pair_ap needs rho1 and rho2")
    t = mp.tensors()
    c1, c2 = mp.a1.product.array, mp.a2.product.array
    b1, b2 = mp.a1.bracket.array, mp.a2.bracket.array
    m1, p1, m2, p2 = t["mu1"], t["rho1"], t["mu2"], t["rho2"]
    found = (
        _tag("a1-", check_almost_poisson(mp.a1).violations)
        + _tag("a2-", check_almost_poisson(mp.a2).violations)
        + _caa_violations(mp)
        + _tag("rep1-", check_ap_rep(RepresentationData(mp.a1, mp.a2.dim, mu=mp.mu1, rho=mp.rho1)).violations)
        + _tag("rep2-", check_ap_rep(RepresentationData(mp.a2, mp.a1.dim, mu=mp.mu2, rho=mp.rho2)).violations)
        + compare("matpoi1", *_poi_product(c1, p2, m2, p1), 3)
        + compare("matpoi2", *_poi_product(c2, p1, m1, p2), 3)
        + compare("matpoi3", *_poi_bracket(c1, b1, p2, m2, p1, m1), 3)
        + compare("matpoi4", *_poi_bracket(c2, b2, p1, m1, p2, m2), 3)
    )
    return CheckReport("matched-pair-ap", tuple(found))


def check_matched_pair(mp: MatchedPairData) -> CheckReport:
    return check_matched_pair_ap(mp) if mp.has_brackets else check_matched_pair_caa(mp)


def bowtie(mp: MatchedPairData) -> AlgebraData:
    """Product
    ``(x1+x2).(y1+y2) = x1.y1 + mu2(x2)y1 + mu2(y2)x1 + x2.y2 + mu1(x1)y2 + mu1(y1)x2``
    and, with rho present, bracket
    ``[x1+x2, y1+y2] = [x1,y1] + rho2(x2)y1 - rho2(y2)x1 + [x2,y2] + rho1(x1)y2 - rho1(y1)x2``.
    """
    n, m = mp.a1.dim, mp.a2.dim
    if n + m > MAX_DIM:
        raise InputError(f"bowtie of dimension {n + m} exceeds the limit {MAX_DIM}")
    t = mp.tensors()
    prod = zeros(n + m, n + m, n + m)
    prod[:n, :n, :n] = mp.a1.product.array
    prod[n:, n:, n:] = mp.a2.product.array
    # x2 . y1 and y1 . x2
    prod[n:, :n, :n] = t["mu2"]
    prod[n:, :n, n:] = t["mu1"].transpose(1, 0, 2)
    prod[:n, n:, :] = prod[n:, :n, :].transpose(1, 0, 2)
    if not mp.has_brackets:
        pc = StructureConstants(prod)
        return AlgebraData(pc, None, infer_kind(pc, None, "comm-assoc"))
    br = zeros(n + m, n + m, n + m)
    br[:n, :n, :n] = mp.a1.zero_bracket().array
    br[n:, n:, n:] = mp.a2.zero_bracket().array
    # [x2, y1] = rho2(x2)y1 - rho1(y1)x2, and [x1, y2] = -rho2(y2)x1 + rho1(x1)y2
    br[n:, :n, :n] = t["rho2"]
    br[n:, :n, n:] = -t["rho1"].transpose(1, 0, 2)
    br[:n, n:, :n] = -t["rho2"].transpose(1, 0, 2)
    br[:n, n:, n:] = t["rho1"]
    pc, bc = StructureConstants(prod), StructureConstants(br)
    return AlgebraData(pc, bc, infer_kind(pc, bc, "almost-poisson"))


def matched_pair_from_split(a: AlgebraData, k: int) -> MatchedPairData:
    """Read the matched pair off an algebra whose first ``k`` basis vectors span
    A1 and the rest span A2.  Exact inverse of :func:`bowtie` when both spans
    are subalgebras."""
    n = a.dim
    if not 0 <= k <= n:
        raise InputError(f"split index {k} outside 0..{n}")
    c = a.product.array
    a1 = restrict(a, range(k))
    a2 = restrict(a, range(k, n))
    # theta(e_i)e_a = T[i, a, :]; the matrix is T[i].T
    mu2 = tuple(LinearMap(c[k + p, :k, :k].T) for p in range(n - k))
    mu1 = tuple(LinearMap(c[i, k:, k:].T) for i in range(k))
    if a.bracket is None:
        return MatchedPairData(a1, a2, mu1, mu2)
    b = a.bracket.array
    rho2 = tuple(LinearMap(b[k + p, :k, :k].T) for p in range(n - k))
    rho1 = tuple(LinearMap(b[i, k:, k:].T) for i in range(k))
    return MatchedPairData(a1, a2, mu1, mu2, rho1, rho2)


def swap(mp: MatchedPairData) -> MatchedPairData:
    """The same data with the roles of A1 and A2 exchanged."""
    return MatchedPairData(mp.a2, mp.a1, mp.mu2, mp.mu1, mp.rho2, mp.rho1)
