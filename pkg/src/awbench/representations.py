"""Representations, module algebras, dual representations, semi-direct products.

Actions are stored as evaluated matrix families: ``mu[i]`` is the matrix of
``mu(e_i)`` on the carrier.  Block layout of every direct-sum construction is
fixed: the base algebra's basis first, then the carrier's.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebras import (
    AlgebraData,
    CheckReport,
    check_almost_poisson,
    compare,
    infer_kind,
    left_multiplications,
    right_multiplications,
)
from .errors import InputError
from .exact import MAX_DIM, LinearMap, StructureConstants, contract, dualize_action, family, stack, zero_family, zeros

PROFILES = {
    frozenset({"mu"}): "assoc",
    frozenset({"mu", "rho"}): "almost-poisson",
    frozenset({"l", "r", "L", "R"}): "awb",
}
_ACTIONS = ("mu", "rho", "l", "r", "L", "R")


@dataclass(frozen=True)
class RepresentationData:
    base: AlgebraData
    carrier_dim: int
    mu: tuple | None = None
    rho: tuple | None = None
    l: tuple | None = None  # noqa: E741
    r: tuple | None = None
    L: tuple | None = None
    R: tuple | None = None

    def __post_init__(self):
        present = frozenset(name for name in _ACTIONS if getattr(self, name) is not None)
        if present not in PROFILES:
            raise InputError(f"actions {sorted(present)} do not form a profile: use mu | mu,rho | l,r,L,R")
        for name in present:
            fam = family(getattr(self, name))
            object.__setattr__(self, name, fam)
            if len(fam) != self.base.dim:
                raise InputError(f"{name}: {len(fam)} matrices for a base of dimension {self.base.dim}")
            for m in fam:
                if m.shape != (self.carrier_dim, self.carrier_dim):
                    raise InputError(f"{name}: matrix shape {m.shape}, carrier dimension {self.carrier_dim}")

    @property
    def profile(self) -> str:
        present = frozenset(name for name in _ACTIONS if getattr(self, name) is not None)
        return PROFILES[present]

    def stack(self, name) -> np.ndarray:
        fam = getattr(self, name)
        if fam is None:
            raise InputError(f"representation has no {name} action")
        return stack(fam, self.carrier_dim) if fam else zeros(0, self.carrier_dim, self.carrier_dim)


@dataclass(frozen=True)
class ModuleAlgebraData:
    rep: RepresentationData
    carrier_product: StructureConstants
    carrier_bracket: StructureConstants | None = None

    def __post_init__(self):
        d = self.rep.carrier_dim
        if self.carrier_product.shape != (d, d, d):
            raise InputError(f"carrier product shape {self.carrier_product.shape}, carrier dimension {d}")
        if self.carrier_bracket is not None and self.carrier_bracket.shape != (d, d, d):
            raise InputError(f"carrier bracket shape {self.carrier_bracket.shape}, carrier dimension {d}")

    @property
    def carrier(self) -> AlgebraData:
        return AlgebraData(
            self.carrier_product,
            self.carrier_bracket,
            infer_kind(self.carrier_product, self.carrier_bracket,
                       "almost-poisson" if self.carrier_bracket is not None else "comm-assoc"),
        )


# Standard actions of an algebra on itself.

def adjoint_actions(a: AlgebraData) -> tuple:
    """``ad(e_i) = [e_i, -]``."""
    if a.bracket is None:
        raise InputError("adjoint action needs a bracket")
    return left_multiplications(a.bracket)


def regular_rep(a: AlgebraData) -> RepresentationData:
    return RepresentationData(a, a.dim, mu=left_multiplications(a.product))


def adjoint_rep(a: AlgebraData) -> RepresentationData:
    """``(A, ad, L)``: rho = ad, mu = left multiplication."""
    return RepresentationData(a, a.dim, mu=left_multiplications(a.product), rho=adjoint_actions(a))


def zero_rep(a: AlgebraData, carrier_dim: int, profile="almost-poisson") -> RepresentationData:
    z = zero_family(a.dim, carrier_dim)
    if profile == "assoc":
        return RepresentationData(a, carrier_dim, mu=z)
    if profile == "almost-poisson":
        return RepresentationData(a, carrier_dim, mu=z, rho=z)
    return RepresentationData(a, carrier_dim, l=z, r=z, L=z, R=z)


def awb_regular_rep(a: AlgebraData) -> RepresentationData:
    """AWB acting on itself: ``l, r`` multiplications, ``L(x) = {x, -}``, ``R(y) = {-, y}``."""
    if a.bracket is None:
        raise InputError("AWB regular representation needs a bracket")
    return RepresentationData(
        a,
        a.dim,
        l=left_multiplications(a.product),
        r=right_multiplications(a.product),
        L=left_multiplications(a.bracket),
        R=right_multiplications(a.bracket),
    )


def adjoint_module(a: AlgebraData) -> ModuleAlgebraData:
    """``(A, ad, L)`` with the carrier carrying A's own operations."""
    return ModuleAlgebraData(adjoint_rep(a), a.product, a.bracket)


# Matrix identities.  ``_pair`` evaluates them on basis pairs of the base and
# reports per carrier basis vector, so indices read (i, j, carrier column).

def _along(c: np.ndarray, fam: np.ndarray) -> np.ndarray:
    """theta(e_i o e_j) as an (i, j, row, col) array."""
    return contract("ijm,mab->ijab", c, fam)


def _prod(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """f(e_i) g(e_j) as an (i, j, row, col) array."""
    return contract("iab,jbc->ijac", f, g)


def _pair(name, lhs, rhs) -> list:
    return compare(name, lhs.transpose(0, 1, 3, 2), rhs.transpose(0, 1, 3, 2), 3)


def _swap(t: np.ndarray) -> np.ndarray:
    return t.transpose(1, 0, 2, 3)


def _assoc_rep_violations(c, m) -> list:
    return _pair("mu-multiplicative", _along(c, m), _prod(m, m))


def _bimodule_violations(c, l, r) -> list:
    return (
        _pair("l-multiplicative", _along(c, l), _prod(l, l))
        + _pair("r-antimultiplicative", _along(c, r), _swap(_prod(r, r)))
        + _pair("l-r-commute", _prod(l, r), _swap(_prod(r, l)))
    )


def _need(rep: RepresentationData, profiles, what):
    if rep.profile not in profiles:
        raise InputError(f"{what} expects profile {' or '.join(profiles)}, got {rep.profile}")


def check_assoc_rep(rep: RepresentationData) -> CheckReport:
    """``mu(x.y) = mu(x) mu(y)``, or the bimodule axioms for an ``l, r`` profile."""
    _need(rep, ("assoc", "awb"), "check_assoc_rep")
    c = rep.base.product.array
    if rep.profile == "assoc":
        return CheckReport("assoc-rep", tuple(_assoc_rep_violations(c, rep.stack("mu"))))
    return CheckReport("bimodule", tuple(_bimodule_violations(c, rep.stack("l"), rep.stack("r"))))


def _ap_rep_violations(rep: RepresentationData) -> list:
    if rep.base.bracket is None:
        raise InputError("almost Poisson representation needs a base bracket")
    c = rep.base.product.array
    b = rep.base.bracket.array
    m = rep.stack("mu")
    p = rep.stack("rho")
    return (
        _assoc_rep_violations(c, m)
        # rho(x.y) = mu(y) rho(x) + mu(x) rho(y)
        + _pair("rho-product", _along(c, p), _swap(_prod(m, p)) + _prod(m, p))
        # mu([x, y]) = rho(x) mu(y) - mu(y) rho(x)
        + _pair("mu-bracket", _along(b, m), _prod(p, m) - _swap(_prod(m, p)))
    )


def check_ap_rep(rep: RepresentationData) -> CheckReport:
    _need(rep, ("almost-poisson",), "check_ap_rep")
    return CheckReport("ap-rep", tuple(_ap_rep_violations(rep)))


def check_awb_rep(rep: RepresentationData) -> CheckReport:
    """Bimodule axioms plus the three bracket conditions:

    ``L(x) l(y) = l({x,y}) + l(y) L(x)``,
    ``L(x) r(y) = r(y) L(x) + r({x,y})``,
    ``R(x.y) = r(y) R(x) + l(x) R(y)``.
    """
    _need(rep, ("awb",), "check_awb_rep")
    if rep.base.bracket is None:
        raise InputError("AWB representation needs a base bracket")
    c = rep.base.product.array
    b = rep.base.bracket.array
    l, r, L, R = (rep.stack(n) for n in ("l", "r", "L", "R"))
    found = (
        _bimodule_violations(c, l, r)
        + _pair("bracket-l", _prod(L, l), _along(b, l) + _swap(_prod(l, L)))
        + _pair("bracket-r", _prod(L, r), _swap(_prod(r, L)) + _along(b, r))
        + _pair("R-product", _along(c, R), _swap(_prod(r, R)) + _prod(l, R))
    )
    return CheckReport("awb-rep", tuple(found))


def check_rep(rep: RepresentationData) -> CheckReport:
    """Dispatch on the profile."""
    if rep.profile == "assoc":
        return check_assoc_rep(rep)
    if rep.profile == "almost-poisson":
        return check_ap_rep(rep)
    return check_awb_rep(rep)


def dual_rep(rep: RepresentationData) -> RepresentationData:
    """``(V*, -mu*)`` for the associative profile, ``(V*, rho*, -mu*)`` for the almost Poisson one."""
    _need(rep, ("assoc", "almost-poisson"), "dual_rep")
    mu = dualize_action(rep.mu, sign=-1)
    rho = None if rep.rho is None else dualize_action(rep.rho, sign=1)
    return RepresentationData(rep.base, rep.carrier_dim, mu=mu, rho=rho)


def _guard(total):
    if total > MAX_DIM:
        raise InputError(f"direct sum of dimension {total} exceeds the limit {MAX_DIM}")


def _place(out: np.ndarray, fam: np.ndarray, n: int, left: bool, sign=1):
    """Write the action block ``theta(e_i) v_a`` into constants on A + V.

    ``left=True`` fills slots (e_i, v_a); otherwise (v_a, e_i).
    """
    if fam.size == 0:
        return
    block = sign * fam.transpose(0, 2, 1)  # (i, a, out)
    if left:
        out[:n, n:, n:] += block
    else:
        out[n:, :n, n:] += block.transpose(1, 0, 2)


def semidirect_ap(rep: RepresentationData) -> AlgebraData:
    """``A + V`` with ``(x+u).(y+v) = x.y + mu(x)v + mu(y)u`` and
    ``[x+u, y+v] = [x,y] + rho(x)v - rho(y)u``."""
    _need(rep, ("almost-poisson",), "semidirect_ap")
    a = rep.base
    n, d = a.dim, rep.carrier_dim
    _guard(n + d)
    prod = zeros(n + d, n + d, n + d)
    br = zeros(n + d, n + d, n + d)
    prod[:n, :n, :n] = a.product.array
    br[:n, :n, :n] = a.zero_bracket().array
    m, p = rep.stack("mu"), rep.stack("rho")
    _place(prod, m, n, left=True)
    _place(prod, m, n, left=False)
    _place(br, p, n, left=True)
    _place(br, p, n, left=False, sign=-1)
    prod, br = StructureConstants(prod), StructureConstants(br)
    return AlgebraData(prod, br, infer_kind(prod, br, "almost-poisson"))


def awb_semidirect(rep: RepresentationData) -> AlgebraData:
    """``A + V`` with ``(x+u).(y+v) = x.y + l(x)v + r(y)u`` and
    ``{x+u, y+v} = {x,y} + L(x)v + R(y)u``."""
    _need(rep, ("awb",), "awb_semidirect")
    a = rep.base
    n, d = a.dim, rep.carrier_dim
    _guard(n + d)
    prod = zeros(n + d, n + d, n + d)
    br = zeros(n + d, n + d, n + d)
    prod[:n, :n, :n] = a.product.array
    br[:n, :n, :n] = a.zero_bracket().array
    _place(prod, rep.stack("l"), n, left=True)
    _place(prod, rep.stack("r"), n, left=False)
    _place(br, rep.stack("L"), n, left=True)
    _place(br, rep.stack("R"), n, left=False)
    return AlgebraData(StructureConstants(prod), StructureConstants(br), "awb-left")


def hemisemi_direct(rep: RepresentationData) -> AlgebraData:
    """One-sided product ``(x+u).(y+v) = x.y + mu(x)v``; with rho present also
    ``{x+u, y+v} = [x,y] + rho(x)v``, giving a left AWB."""
    _need(rep, ("assoc", "almost-poisson"), "hemisemi_direct")
    a = rep.base
    n, d = a.dim, rep.carrier_dim
    _guard(n + d)
    prod = zeros(n + d, n + d, n + d)
    prod[:n, :n, :n] = a.product.array
    _place(prod, rep.stack("mu"), n, left=True)
    if rep.rho is None:
        return AlgebraData(StructureConstants(prod), None, "assoc")
    br = zeros(n + d, n + d, n + d)
    br[:n, :n, :n] = a.zero_bracket().array
    _place(br, rep.stack("rho"), n, left=True)
    return AlgebraData(StructureConstants(prod), StructureConstants(br), "awb-left")


def _module_product(cv, fam):
    """theta(x)(a.b) and (theta(x)a).b as (i, a, b, out) arrays."""
    on_product = contract("abm,ikm->iabk", cv, fam)
    on_left = contract("ima,mbk->iabk", fam, cv)
    return on_product, on_left


def check_module_comm_assoc(m: ModuleAlgebraData) -> CheckReport:
    """Commutative associative carrier, ``mu`` a representation, and
    ``mu(x)(a.b) = (mu(x)a).b``."""
    from .algebras import check_comm_assoc

    rep = m.rep
    _need(rep, ("assoc", "almost-poisson"), "check_module_comm_assoc")
    cv = m.carrier_product.array
    on_product, on_left = _module_product(cv, rep.stack("mu"))
    carrier = check_comm_assoc(AlgebraData(m.carrier_product, None, "assoc"))
    found = (
        [_carrier(v) for v in carrier.violations]
        + _assoc_rep_violations(rep.base.product.array, rep.stack("mu"))
        + compare("module-product", on_product, on_left, 3)
    )
    return CheckReport("module-comm-assoc", tuple(found))


def _carrier(v):
    from .algebras import Violation

    return Violation("carrier-" + v.identity, v.indices, v.lhs, v.rhs)


def check_module_ap(m: ModuleAlgebraData) -> CheckReport:
    """Module commutative associative algebra conditions, ``(V, rho, mu)`` an
    almost Poisson representation, an almost Poisson carrier, and

    ``rho(x)(a.b) = (rho(x)a).b + a.(rho(x)b)``,
    ``[a, mu(x)b] = -(rho(x)a).b + mu(x)[a, b]``.
    """
    rep = m.rep
    _need(rep, ("almost-poisson",), "check_module_ap")
    if m.carrier_bracket is None:
        raise InputError("check_module_ap needs a carrier bracket")
    cv = m.carrier_product.array
    bv = m.carrier_bracket.array
    mu, rho = rep.stack("mu"), rep.stack("rho")
    carrier = check_almost_poisson(AlgebraData(m.carrier_product, m.carrier_bracket, "assoc"))
    mu_on_product, mu_on_left = _module_product(cv, mu)
    rho_on_product, rho_on_left = _module_product(cv, rho)
    rho_on_right = contract("imb,amk->iabk", rho, cv)
    bracket_mu = contract("imb,amk->iabk", mu, bv)
    mu_on_bracket = contract("abm,ikm->iabk", bv, mu)
    found = (
        [_carrier(v) for v in carrier.violations]
        + _ap_rep_violations(rep)
        + compare("module-product", mu_on_product, mu_on_left, 3)
        + compare("module-rho-derivation", rho_on_product, rho_on_left + rho_on_right, 3)
        + compare("module-bracket-mu", bracket_mu, mu_on_bracket - rho_on_left, 3)
    )
    return CheckReport("module-ap", tuple(found))


def check_module(m: ModuleAlgebraData) -> CheckReport:
    if m.rep.profile == "almost-poisson" and m.carrier_bracket is not None:
        return check_module_ap(m)
    return check_module_comm_assoc(m)


def conjugate(rep: RepresentationData, p) -> RepresentationData:
    """Same representation written in the carrier basis given by the columns of ``p``."""
    from .exact import inverse, rational_array

    p = rational_array(p, ndim=2)
    pinv = inverse(p)
    out = {}
    for name in _ACTIONS:
        fam = getattr(rep, name)
        if fam is not None:
            out[name] = tuple(LinearMap(pinv.dot(mat.array).dot(p)) for mat in fam)
    return RepresentationData(rep.base, rep.carrier_dim, **out)
