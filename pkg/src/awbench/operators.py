"""Rota-Baxter type and averaging operators, dendrification, duplication into AWBs.

An operator ``K: V -> A`` is a LinearMap of shape (dim A, dim V).  Its context
is a module algebra (Rota-Baxter) or a representation (averaging); the weight
is present exactly in the Rota-Baxter case.
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
    require,
)
from .errors import InputError
from .exact import LinearMap, StructureConstants, contract, in_column_span, to_rational, zeros
from .representations import ModuleAlgebraData, RepresentationData, check_module, hemisemi_direct


@dataclass(frozen=True)
class OperatorData:
    map: LinearMap
    context: ModuleAlgebraData | RepresentationData
    weight: object = None

    def __post_init__(self):
        if not isinstance(self.map, LinearMap):
            object.__setattr__(self, "map", LinearMap(self.map))
        rep = self.rep
        if self.map.shape != (rep.base.dim, rep.carrier_dim):
            raise InputError(
                f"operator shape {self.map.shape} does not map a {rep.carrier_dim}-dimensional carrier"
                f" to a {rep.base.dim}-dimensional algebra"
            )
        if isinstance(self.context, ModuleAlgebraData):
            if self.weight is None:
                raise InputError("a Rota-Baxter operator needs a weight")
            object.__setattr__(self, "weight", to_rational(self.weight))
        elif isinstance(self.context, RepresentationData):
            if self.weight is not None:
                raise InputError("an averaging operator takes no weight")
        else:
            raise InputError("operator context must be a module algebra or a representation")

    @property
    def rep(self) -> RepresentationData:
        return self.context.rep if isinstance(self.context, ModuleAlgebraData) else self.context

    @property
    def is_rota_baxter(self) -> bool:
        return isinstance(self.context, ModuleAlgebraData)

    @property
    def source_dim(self) -> int:
        return self.map.cols

    @property
    def target_dim(self) -> int:
        return self.map.rows


def _image_product(k, c):
    """``K(e_a) o K(e_b)`` as an (a, b, out) array."""
    return contract("ia,jb,ijk->abk", k, k, c)


def _induced(k, fam):
    """``theta(K(e_a)) e_b`` as an (a, b, out) array."""
    return contract("ia,ixb->abx", k, fam)


def _apply(k, t):
    return contract("kx,abx->abk", k, t)


def check_weighted_rrb(op: OperatorData) -> CheckReport:
    """``R(a).R(b) = R(mu(R(a))b + mu(R(b))a + w a._V b)`` and, with a bracket,
    ``[R(a),R(b)] = R(rho(R(a))b - rho(R(b))a + w [a,b]_V)``, on carrier basis pairs."""
    if not op.is_rota_baxter:
        raise InputError("check_weighted_rrb needs a module algebra context and a weight")
    m = op.context
    rep = m.rep
    k = op.map.array
    lam = op.weight
    mu = rep.stack("mu")
    by_mu = _induced(k, mu)
    found = compare(
        "rb-product",
        _image_product(k, rep.base.product.array),
        _apply(k, by_mu + by_mu.transpose(1, 0, 2) + lam * m.carrier_product.array),
        2,
    )
    if rep.rho is not None and m.carrier_bracket is not None and rep.base.bracket is not None:
        by_rho = _induced(k, rep.stack("rho"))
        found += compare(
            "rb-bracket",
            _image_product(k, rep.base.bracket.array),
            _apply(k, by_rho - by_rho.transpose(1, 0, 2) + lam * m.carrier_bracket.array),
            2,
        )
    return CheckReport("weighted-rrb", tuple(found))


def check_relative_averaging(op: OperatorData, bracket_form: str = "rho") -> CheckReport:
    """``K(u).K(v) = K(mu(K(u))v)`` and, with rho present,
    ``[K(u),K(v)] = K(rho(K(u))v)``.

    ``bracket_form="mu"`` swaps rho for mu in the bracket condition, for comparison.
    """
    if op.is_rota_baxter:
        raise InputError("check_relative_averaging needs a representation context")
    if bracket_form not in ("rho", "mu"):
        raise InputError(f"bracket_form must be 'rho' or 'mu', got {bracket_form!r}")
    rep = op.rep
    if rep.profile not in ("assoc", "almost-poisson"):
        raise InputError(f"averaging operators need a mu or mu,rho representation, got {rep.profile}")
    k = op.map.array
    found = compare(
        "averaging-product",
        _image_product(k, rep.base.product.array),
        _apply(k, _induced(k, rep.stack("mu"))),
        2,
    )
    if rep.rho is not None:
        if rep.base.bracket is None:
            raise InputError("averaging bracket condition needs a base bracket")
        fam = rep.stack("rho" if bracket_form == "rho" else "mu")
        found += compare(
            f"averaging-bracket-{bracket_form}",
            _image_product(k, rep.base.bracket.array),
            _apply(k, _induced(k, fam)),
            2,
        )
    return CheckReport("relative-averaging", tuple(found))


def _nijenhuis(name, n, c):
    lhs = contract("xi,yj,xyk->ijk", n, n, c)
    inside = contract("xi,xjk->ijk", n, c) + contract("yj,iyk->ijk", n, c) - contract("kx,ijx->ijk", n, c)
    return compare(name, lhs, contract("kx,ijx->ijk", n, inside), 2)


def check_nijenhuis_awb(n: LinearMap, a: AlgebraData) -> CheckReport:
    """``N(x).N(y) = N(N(x).y + x.N(y) - N(x.y))`` and the same rule for the bracket."""
    if not isinstance(n, LinearMap):
        n = LinearMap(n)
    if n.shape != (a.dim, a.dim):
        raise InputError(f"Nijenhuis map of shape {n.shape} on a {a.dim}-dimensional algebra")
    arr = n.array
    found = _nijenhuis("nijenhuis-product", arr, a.product.array)
    if a.bracket is not None:
        found += _nijenhuis("nijenhuis-bracket", arr, a.bracket.array)
    return CheckReport("nijenhuis", tuple(found))


def nijenhuis_from_operator(op: OperatorData) -> tuple:
    """``N_K(x + u) = K(u)`` on the hemisemi-direct product, with that product."""
    if op.is_rota_baxter:
        raise InputError("nijenhuis_from_operator needs a representation context")
    rep = op.rep
    n, d = rep.base.dim, rep.carrier_dim
    hemi = hemisemi_direct(rep)
    big = zeros(n + d, n + d)
    big[:n, n:] = op.map.array
    return LinearMap(big), hemi


def graph_subalgebra_check(op: OperatorData) -> CheckReport:
    """Closure of ``span{K(e_a) + e_a}`` under both hemisemi-direct operations.

    A violation reports the offending product ``w`` and the graph element
    ``K(v) + v`` with the same V-component, which ``w`` would have to equal.
    """
    if op.is_rota_baxter:
        raise InputError("graph_subalgebra_check needs a representation context")
    rep = op.rep
    n, d = rep.base.dim, rep.carrier_dim
    hemi = hemisemi_direct(rep)
    k = op.map.array
    graph = zeros(n + d, d)
    graph[:n, :] = k
    for a in range(d):
        graph[n + a, a] = 1
    ops = [("graph-closure-product", hemi.product.array)]
    if hemi.bracket is not None:
        ops.append(("graph-closure-bracket", hemi.bracket.array))
    found = []
    for name, c in ops:
        values = contract("ia,jb,ijk->abk", graph, graph, c)
        for a in range(d):
            for b in range(d):
                w = values[a, b]
                if not in_column_span(graph, w):
                    target = np.concatenate([k.dot(w[n:]), w[n:]])
                    found.append(Violation(name, (a + 1, b + 1), tuple(w), tuple(target)))
    return CheckReport("graph-subalgebra", tuple(found))


@dataclass(frozen=True)
class TridendriformData:
    bracket_part: StructureConstants
    diamond: StructureConstants
    dot_part: StructureConstants
    triangle: StructureConstants

    def __post_init__(self):
        shapes = {x.shape for x in (self.bracket_part, self.diamond, self.dot_part, self.triangle)}
        if len(shapes) != 1:
            raise InputError(f"tridendriform operations have differing shapes {sorted(shapes)}")
        n = self.dot_part.dim_out
        if self.dot_part.shape != (n, n, n):
            raise InputError("tridendriform operations must be cubic")
        if not self.dot_part.is_symmetric():
            raise InputError("dot part must be symmetric")
        if not self.bracket_part.is_antisymmetric():
            raise InputError("bracket part must be antisymmetric")

    @property
    def dim(self) -> int:
        return self.dot_part.dim_out

    def induced(self) -> tuple:
        """``x o y = x|>y + y|>x + x.y`` and ``{x,y}_c = x<>y - y<>x + {x,y}``."""
        t = self.triangle.array
        dm = self.diamond.array
        circ = t + t.transpose(1, 0, 2) + self.dot_part.array
        bc = dm - dm.transpose(1, 0, 2) + self.bracket_part.array
        return StructureConstants(circ), StructureConstants(bc)


def check_tridendriform(t: TridendriformData) -> CheckReport:
    """Almost Poisson ``(V, {,}, .)``, the two trialgebra rules

    ``(x o y)|>z = x|>(y|>z)``, ``(x|>y).z = x|>(y.z)``,

    and the four compatibilities, with ``o`` and ``{,}_c`` the induced operations:

    ``x<>(y.z) = (x<>y).z + y.(x<>z)``,
    ``{x, z|>y} = z|>{x,y} - y.(z<>x)``,
    ``(y o z)<>x = z|>(y<>x) + y|>(z<>x)``,
    ``{x,z}_c |> y = x<>(z|>y) - z|>(x<>y)``.

    Indices are reported as (x, y, z).
    """
    B, Dm, C, T = (op.array for op in (t.bracket_part, t.diamond, t.dot_part, t.triangle))
    circ, bc = (op.array for op in t.induced())
    e = contract
    base = check_almost_poisson(AlgebraData(t.dot_part, t.bracket_part, "almost-poisson"))
    found = list(base.violations) + (
        compare("comm-dendr-1", e("ijm,mkn->ijkn", circ, T), e("jkm,imn->ijkn", T, T), 3)
        + compare("comm-dendr-2", e("ijm,mkn->ijkn", T, C), e("jkm,imn->ijkn", C, T), 3)
        + compare(
            "post-cond-1",
            e("jkm,imn->ijkn", C, Dm),
            e("ijm,mkn->ijkn", Dm, C) + e("ikm,jmn->ijkn", Dm, C),
            3,
        )
        + compare(
            "post-cond-2",
            e("kjm,imn->ijkn", T, B),
            e("ijm,kmn->ijkn", B, T) - e("kim,jmn->ijkn", Dm, C),
            3,
        )
        + compare(
            "post-cond-3",
            e("jkm,min->ijkn", circ, Dm),
            e("jim,kmn->ijkn", Dm, T) + e("kim,jmn->ijkn", Dm, T),
            3,
        )
        + compare(
            "post-cond-4",
            e("ikm,mjn->ijkn", bc, T),
            e("kjm,imn->ijkn", T, Dm) - e("ijm,kmn->ijkn", Dm, T),
            3,
        )
    )
    return CheckReport("tridendriform", tuple(found))


def dendrify(op: OperatorData) -> TridendriformData:
    """``{a,b} = w[a,b]_V``, ``a<>b = rho(R(a))b``, ``a.b = w a._V b``, ``a|>b = mu(R(a))b``.

    Raises PreconditionError unless the module and the operator identities hold.
    """
    if not op.is_rota_baxter:
        raise InputError("dendrify needs a module algebra context and a weight")
    m = op.context
    if m.rep.rho is None or m.carrier_bracket is None:
        raise InputError("dendrify needs an almost Poisson module algebra")
    require(check_module(m), "the context is not a module almost Poisson algebra")
    require(check_weighted_rrb(op), "the operator is not a weighted relative Rota-Baxter operator")
    k = op.map.array
    lam = op.weight
    return TridendriformData(
        StructureConstants(lam * m.carrier_bracket.array),
        StructureConstants(_induced(k, m.rep.stack("rho"))),
        StructureConstants(lam * m.carrier_product.array),
        StructureConstants(_induced(k, m.rep.stack("mu"))),
    )


def associated_ap(t: TridendriformData) -> AlgebraData:
    """``(V, o, {,}_c)``; raises PreconditionError if ``t`` fails its check."""
    require(check_tridendriform(t), "not an almost tridendriform Poisson algebra")
    circ, bc = t.induced()
    return AlgebraData(circ, bc, "almost-poisson")


def check_homomorphism(f: LinearMap, src: AlgebraData, dst: AlgebraData) -> CheckReport:
    """``f(x o y) = f(x).f(y)`` and, when both carry brackets, ``f({x,y}) = [f(x),f(y)]``."""
    if not isinstance(f, LinearMap):
        f = LinearMap(f)
    if f.shape != (dst.dim, src.dim):
        raise InputError(f"map of shape {f.shape} cannot go from dimension {src.dim} to {dst.dim}")
    arr = f.array
    pairs = [("hom-product", src.product.array, dst.product.array)]
    if src.bracket is not None and dst.bracket is not None:
        pairs.append(("hom-bracket", src.bracket.array, dst.bracket.array))
    found = []
    for name, cs, cd in pairs:
        found += compare(name, contract("kx,ijx->ijk", arr, cs), contract("xi,yj,xyk->ijk", arr, arr, cd), 2)
    return CheckReport("homomorphism", tuple(found))


def induced_awb(op: OperatorData) -> AlgebraData:
    """``u ._K v = mu(K(u))v`` and ``{u, v}_K = rho(K(u))v``; a left AWB when K is averaging."""
    rep = op.rep
    if op.is_rota_baxter or rep.profile != "almost-poisson":
        raise InputError("induced_awb needs an averaging operator over a mu,rho representation")
    require(check_relative_averaging(op), "the operator is not a relative averaging operator")
    k = op.map.array
    return AlgebraData(
        StructureConstants(_induced(k, rep.stack("mu"))),
        StructureConstants(_induced(k, rep.stack("rho"))),
        "awb-left",
    )


def rota_baxter_on(a: AlgebraData, r, weight) -> OperatorData:
    """A weighted Rota-Baxter operator on ``a`` itself: the adjoint module context."""
    from .representations import adjoint_module

    return OperatorData(LinearMap(r) if not isinstance(r, LinearMap) else r, adjoint_module(a), weight)


def averaging_on(a: AlgebraData, k) -> OperatorData:
    """An averaging operator on ``a``: the adjoint representation context."""
    from .representations import adjoint_rep

    return OperatorData(LinearMap(k) if not isinstance(k, LinearMap) else k, adjoint_rep(a))
