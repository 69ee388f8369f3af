"""Random valid and perturbed instances for the randomized suites.

All generators take a :class:`random.Random` so that runs are reproducible.
Valid instances come from constructions known to succeed (basis changes of
fixtures, adjoint and dual actions, splits of semi-direct products, ...);
perturbed ones add a small integer to one entry.  Dimensions stay at most 3
per factor.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .algebras import AlgebraData, left_multiplications
from .bialgebras import CoalgebraData, encode_coalgebra
from .exact import LinearMap, StructureConstants, change_basis, solve, zeros
from .matched_pairs import MatchedPairData, matched_pair_from_split
from .operators import OperatorData
from .representations import (
    RepresentationData,
    adjoint_rep,
    awb_regular_rep,
    conjugate,
    dual_rep,
    semidirect_ap,
    zero_rep,
)

SMALL = (-1, 0, 0, 1)


def _eye(n):
    return LinearMap.identity(n).array.copy()


def unimodular(rng: random.Random, n: int) -> np.ndarray:
    """A random integer matrix of determinant +-1 (product of elementary moves)."""
    p = _eye(n)
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        p[i] = p[i] + rng.choice((-1, 1)) * p[j]
    if rng.random() < 0.5 and n > 1:
        i, j = rng.sample(range(n), 2)
        p[[i, j]] = p[[j, i]]
    return p


def _skew(rng, n, values=SMALL, rows=None):
    b = zeros(n, n, n)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n) if rows is None else rows:
                v = Fraction(rng.choice(values))
                b[i, j, k] = v
                b[j, i, k] = -v
    return b


def random_ap_algebra(rng: random.Random, dim: int | None = None) -> AlgebraData:
    """A random almost Poisson algebra of dimension 1..3.

    Families used: zero product with any skew bracket; a unit plus a
    square-zero radical with a central unit and any bracket on the radical.
    Either is then written in a random unimodular basis.
    """
    n = dim or rng.randint(1, 3)
    if rng.random() < 0.5:
        prod = zeros(n, n, n)
        br = _skew(rng, n)
    else:
        prod = zeros(n, n, n)
        prod[0, 0, 0] = 1
        for i in range(1, n):
            prod[0, i, i] = prod[i, 0, i] = 1
        br = zeros(n, n, n)
        if n > 1:
            sub = _skew(rng, n, rows=range(1, n))
            sub[0, :, :] = 0
            sub[:, 0, :] = 0
            br = sub
    p = unimodular(rng, n)
    prod = change_basis(StructureConstants(prod), p)
    br = change_basis(StructureConstants(br), p)
    return AlgebraData(prod, br, "almost-poisson")


def random_awb(rng: random.Random) -> AlgebraData:
    """A left AWB: the four-parameter 2D family, or an almost Poisson algebra."""
    if rng.random() < 0.5:
        return random_ap_algebra(rng)
    al, be = (Fraction(rng.choice((-2, -1, 1, 2))) for _ in range(2))
    ga, nu = (Fraction(rng.choice((-1, 0, 1, 2))) for _ in range(2))
    prod = zeros(2, 2, 2)
    prod[0, 0, 0] = prod[0, 1, 1] = al
    prod[1, 0, 0] = prod[1, 1, 1] = be
    br = zeros(2, 2, 2)
    br[0, 0] = [ga, -al * ga / be]
    br[0, 1] = [nu, -al * nu / be]
    br[1, 0] = [be * ga / al, -ga]
    br[1, 1] = [be * nu / al, -nu]
    p = unimodular(rng, 2)
    return AlgebraData(change_basis(StructureConstants(prod), p), change_basis(StructureConstants(br), p), "awb-left")


def _perturb_family(rng, fam):
    mats = [m.array.copy() for m in fam]
    if not mats or mats[0].size == 0:
        return tuple(fam)
    q = rng.randrange(len(mats))
    r, c = rng.randrange(mats[q].shape[0]), rng.randrange(mats[q].shape[1])
    mats[q][r, c] += rng.choice((-1, 1))
    return tuple(LinearMap(m) for m in mats)


def perturb_rep(rng: random.Random, rep: RepresentationData) -> RepresentationData:
    names = [n for n in ("mu", "rho", "l", "r", "L", "R") if getattr(rep, n) is not None]
    name = rng.choice(names)
    fams = {n: getattr(rep, n) for n in names}
    fams[name] = _perturb_family(rng, fams[name])
    return RepresentationData(rep.base, rep.carrier_dim, **fams)


def random_ap_rep(rng: random.Random, a: AlgebraData | None = None) -> RepresentationData:
    """A valid almost Poisson representation: adjoint, its dual, or zero, in a random carrier basis."""
    a = a or random_ap_algebra(rng)
    choice = rng.random()
    if choice < 0.4:
        rep = adjoint_rep(a)
    elif choice < 0.8:
        rep = dual_rep(adjoint_rep(a))
    else:
        rep = zero_rep(a, rng.randint(0, 2))
    if rep.carrier_dim:
        rep = conjugate(rep, unimodular(rng, rep.carrier_dim))
    return rep


def random_awb_rep(rng: random.Random) -> RepresentationData:
    a = random_awb(rng)
    if rng.random() < 0.8:
        rep = awb_regular_rep(a)
        return conjugate(rep, unimodular(rng, rep.carrier_dim))
    return zero_rep(a, rng.randint(1, 2), "awb")


def random_matched_pair(rng: random.Random) -> MatchedPairData:
    """Split of a semi-direct product ``A + V`` into its two subalgebras."""
    a = random_ap_algebra(rng, rng.randint(1, 2))
    rep = random_ap_rep(rng, a)
    if rep.carrier_dim == 0 or rep.carrier_dim > 2:
        rep = adjoint_rep(a)
    return matched_pair_from_split(semidirect_ap(rep), a.dim)


def perturb_matched_pair(rng: random.Random, mp: MatchedPairData) -> MatchedPairData:
    names = [n for n in ("mu1", "mu2", "rho1", "rho2") if getattr(mp, n) is not None and len(getattr(mp, n))]
    name = rng.choice(names)
    fams = {n: getattr(mp, n) for n in ("mu1", "mu2", "rho1", "rho2")}
    fams[name] = _perturb_family(rng, fams[name])
    return MatchedPairData(mp.a1, mp.a2, **fams)


def random_tensor(rng: random.Random, n: int, values=SMALL) -> np.ndarray:
    t = zeros(n, n, n)
    for idx in np.ndindex(n, n, n):
        t[idx] = Fraction(rng.choice(values))
    return t


def structured_cotensors(rng: random.Random, n: int) -> CoalgebraData:
    """Delta symmetric and delta skew in the tensor legs, entries in {-1, 0, 1}."""
    D = zeros(n, n, n)
    E = zeros(n, n, n)
    for k in range(n):
        for i in range(n):
            for j in range(i, n):
                v = Fraction(rng.choice((-1, 0, 0, 1)))
                D[k, i, j] = D[k, j, i] = v
            for j in range(i + 1, n):
                v = Fraction(rng.choice((-1, 0, 1)))
                E[k, i, j], E[k, j, i] = v, -v
    return CoalgebraData(D, E)


def random_coalgebra(rng: random.Random) -> CoalgebraData:
    """Half valid (an almost Poisson algebra read on the dual), half raw random tensors."""
    if rng.random() < 0.5:
        return encode_coalgebra(random_ap_algebra(rng))
    n = rng.randint(1, 2)
    return CoalgebraData(random_tensor(rng, n), random_tensor(rng, n))


def unital_ap(rng: random.Random) -> AlgebraData:
    """Unit plus square-zero radical; ``K(x) = f(x) 1`` is averaging on these."""
    while True:
        a = random_ap_algebra(rng, rng.randint(1, 3))
        if unit_of(a) is not None:
            return a


def unit_of(a: AlgebraData):
    """The unit element, when the product has one."""
    n = a.dim
    # u with L(u) = id: sum_i u_i c[i, j, k] = delta_jk
    rows = a.product.array.reshape(n, n * n).T
    target = _eye(n).reshape(n * n)
    return solve(rows, target)


def random_averaging(rng: random.Random) -> OperatorData:
    """A map over the adjoint representation: averaging by construction about
    half the time (``K(x) = f(x) 1`` on a unital algebra, or zero), otherwise a
    random small matrix."""
    if rng.random() < 0.5:
        a = unital_ap(rng)
        one = unit_of(a)
        f = [Fraction(rng.choice((-1, 0, 1, 2))) for _ in range(a.dim)]
        k = np.outer(one, np.array(f, dtype=object))
        if rng.random() < 0.2:
            k = zeros(a.dim, a.dim)
    else:
        a = random_ap_algebra(rng)
        k = zeros(a.dim, a.dim)
        for idx in np.ndindex(a.dim, a.dim):
            k[idx] = Fraction(rng.choice(SMALL))
    return OperatorData(LinearMap(k), adjoint_rep(a))


def regular_assoc_rep(a: AlgebraData) -> RepresentationData:
    return RepresentationData(a, a.dim, mu=left_multiplications(a.product))
