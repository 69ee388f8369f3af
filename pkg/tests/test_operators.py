from fractions import Fraction

import numpy as np
import pytest

from awbench.algebras import AlgebraData, check_almost_poisson, check_awb
from awbench.errors import InputError, PreconditionError
from awbench.exact import LinearMap, StructureConstants, zeros
from awbench.operators import (
    OperatorData,
    TridendriformData,
    associated_ap,
    averaging_on,
    check_homomorphism,
    check_nijenhuis_awb,
    check_relative_averaging,
    check_tridendriform,
    check_weighted_rrb,
    dendrify,
    graph_subalgebra_check,
    induced_awb,
    nijenhuis_from_operator,
    rota_baxter_on,
)
from awbench.representations import adjoint_module, adjoint_rep, hemisemi_direct, regular_rep
from conftest import fixture_names
from oracles import averaging_failures, bil, lists, subspace_closed

AP_PASSING = [n for n in fixture_names("algebra", "pass") if n.startswith("ap")]


def located(report):
    return {(v.identity, v.indices) for v in report.violations}


# weighted relative Rota-Baxter operators

@pytest.mark.parametrize("weight", [0, 1, -3])
def test_zero_rb(fixture, weight):
    assert check_weighted_rrb(rota_baxter_on(fixture("ap3d-unit"), zeros(3, 3), weight)).passed


@pytest.mark.parametrize("name", AP_PASSING)
def test_identity_weight_minus_one(fixture, name):
    a = fixture(name)
    assert check_weighted_rrb(rota_baxter_on(a, LinearMap.identity(a.dim), -1)).passed


def test_identity_weight_zero_fails(fixture):
    report = check_weighted_rrb(rota_baxter_on(fixture("ap3d-unit"), LinearMap.identity(3), 0))
    assert "rb-product" in report.failed_identities()


def test_rb_fixtures(fixture):
    assert check_weighted_rrb(fixture("rb-projection-3d")).passed
    assert check_weighted_rrb(fixture("rb-identity-3d")).passed


def test_rb_needs_weight(fixture):
    with pytest.raises(InputError):
        OperatorData(LinearMap.identity(3), adjoint_module(fixture("ap3d-unit")))
    with pytest.raises(InputError):
        OperatorData(LinearMap.identity(3), adjoint_rep(fixture("ap3d-unit")), 1)
    with pytest.raises(InputError):
        OperatorData(LinearMap.identity(2), adjoint_rep(fixture("ap3d-unit")))


# averaging operators

def test_averaging_example(fixture):
    op = fixture("avg-3d")
    assert check_relative_averaging(op).passed
    assert not averaging_failures(op.map, op.rep)


def test_averaging_mu_form_differs(fixture):
    report = check_relative_averaging(fixture("avg-3d"), bracket_form="mu")
    assert not report.passed and report.first.indices == (1, 1)


def test_zero_averaging(fixture):
    assert check_relative_averaging(averaging_on(fixture("ap3d-source"), zeros(3, 3))).passed


def test_identity_averaging_matches_oracle(fixture):
    for name in ("ap2d-idem", "ap2d-unit", "ap2d-lie", "ap3d-unit"):
        op = averaging_on(fixture(name), LinearMap.identity(fixture(name).dim))
        assert located(check_relative_averaging(op)) == averaging_failures(op.map, op.rep), name


def test_unit_functional_is_averaging(fixture):
    assert check_relative_averaging(fixture("avg-unit-3d")).passed


def test_averaging_shape(fixture):
    with pytest.raises(InputError):
        averaging_on(fixture("ap3d-unit"), zeros(2, 3))


def test_assoc_only_averaging(fixture):
    a = fixture("comm2d")
    op = OperatorData(LinearMap([[1, 0], [0, 0]]), regular_rep(a))
    assert located(check_relative_averaging(op)) == averaging_failures(op.map, op.rep)


# Nijenhuis and graph criteria

def test_nijenhuis_trivial(fixture):
    a = fixture("awb2d")
    assert check_nijenhuis_awb(LinearMap.identity(2), a).passed
    assert check_nijenhuis_awb(LinearMap.zeros(2), a).passed


def test_nijenhuis_diag():
    a = AlgebraData.build(2, [(1, 2, 2, 1)])
    assert check_nijenhuis_awb(LinearMap([[1, 0], [0, 2]]), a).passed
    perturbed = AlgebraData.build(2, [(1, 2, 2, 1), (2, 2, 1, 1)])
    report = check_nijenhuis_awb(LinearMap([[1, 0], [0, 2]]), perturbed)
    n = [[1, 0], [0, 2]]
    c = lists(perturbed.product)
    e = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    N = lambda v: [sum(Fraction(n[r][s]) * v[s] for s in range(2)) for r in range(2)]  # noqa: E731
    bad = set()
    for i in range(2):
        for j in range(2):
            x, y = e[i], e[j]
            inside = [p + q - r for p, q, r in zip(bil(c, N(x), y), bil(c, x, N(y)), N(bil(c, x, y)))]
            if bil(c, N(x), N(y)) != N(inside):
                bad.add(("nijenhuis-product", (i + 1, j + 1)))
    assert located(report) == bad and bad


def test_nijenhuis_shape(fixture):
    with pytest.raises(InputError):
        check_nijenhuis_awb(LinearMap.identity(3), fixture("awb2d"))


def test_criteria_on_example(fixture):
    op = fixture("avg-3d")
    n, hemi = nijenhuis_from_operator(op)
    assert check_nijenhuis_awb(n, hemi).passed
    assert graph_subalgebra_check(op).passed


def test_zero_operator_criteria(fixture):
    op = averaging_on(fixture("ap3d-unit"), zeros(3, 3))
    n, hemi = nijenhuis_from_operator(op)
    assert n.is_zero() and check_nijenhuis_awb(n, hemi).passed
    assert graph_subalgebra_check(op).passed


def test_graph_matches_oracle(fixture):
    a = fixture("ap2d-unit")
    for k in ([[1, 0], [0, 0]], [[0, 1], [0, 0]], [[1, 1], [0, 1]], [[0, 0], [1, 0]]):
        op = averaging_on(a, k)
        hemi = hemisemi_direct(op.rep)
        graph = [[Fraction(k[r][s]) for r in range(2)] + [Fraction(int(t == s)) for t in range(2)] for s in range(2)]
        closed = subspace_closed(graph, lists(hemi.product)) and subspace_closed(graph, lists(hemi.bracket))
        assert graph_subalgebra_check(op).passed == closed
        assert check_relative_averaging(op).passed == closed


# dendrification

def test_dendrify_identity(fixture):
    a = fixture("ap2d-unit")
    t = dendrify(rota_baxter_on(a, LinearMap.identity(2), -1))
    assert t.diamond == a.bracket and t.triangle == a.product
    assert t.bracket_part == a.bracket.scaled(-1) and t.dot_part == a.product.scaled(-1)
    assert check_tridendriform(t).passed
    assert associated_ap(t) == a


def test_dendrify_zero_operator(fixture):
    m = adjoint_module(fixture("ap3d-unit"))
    t = dendrify(OperatorData(LinearMap.zeros(3), m, 2))
    assert t.diamond.is_zero() and t.triangle.is_zero()
    assert t.dot_part == m.carrier_product.scaled(2)
    t1 = dendrify(OperatorData(LinearMap.zeros(3), m, 1))
    assoc = associated_ap(t1)
    assert assoc.product == m.carrier_product and assoc.bracket == m.carrier_bracket


def test_dendrify_rota_baxter_on_algebra(fixture):
    """Projection onto <e1> along <e2, e3>, weight -1: the four operations are
    -[x,y], [R(x),y], -x.y and R(x).y."""
    op = fixture("rb-projection-3d")
    a = op.rep.base
    t = dendrify(op)
    R = op.map.array
    for i in range(3):
        for j in range(3):
            x, y = np.eye(3, dtype=object)[i], np.eye(3, dtype=object)[j]
            rx = R.dot(x)
            assert list(t.diamond.array[i, j]) == list(a.br(rx, y))
            assert list(t.triangle.array[i, j]) == list(a.mul(rx, y))
    assert t.bracket_part == a.bracket.scaled(-1) and t.dot_part == a.product.scaled(-1)
    assert check_tridendriform(t).passed
    assert check_homomorphism(op.map, associated_ap(t), a).passed


def test_tridendriform_zero_and_flip(fixture):
    z = StructureConstants.zeros(2)
    assert check_tridendriform(TridendriformData(z, z, z, z)).passed
    assert associated_ap(TridendriformData(z, z, z, z)).product.is_zero()
    t = fixture("tridend-3d")
    assert check_tridendriform(t).passed
    dm = t.diamond.array.copy()
    i, j, k = next(iter(zip(*dm.nonzero())))
    dm[i, j, k] = -dm[i, j, k]
    flipped = TridendriformData(t.bracket_part, StructureConstants(dm), t.dot_part, t.triangle)
    report = check_tridendriform(flipped)
    assert "post-cond-4" in report.failed_identities()
    with pytest.raises(PreconditionError):
        associated_ap(flipped)


def test_tridendriform_symmetry_errors():
    z = StructureConstants.zeros(2)
    skew = StructureConstants.from_entries((2, 2, 2), [(0, 1, 0, 1)])
    with pytest.raises(InputError):
        TridendriformData(z, z, skew, z)
    with pytest.raises(InputError):
        TridendriformData(skew, z, z, z)


def test_dendrify_preconditions(fixture):
    with pytest.raises(PreconditionError):
        dendrify(rota_baxter_on(fixture("ap3d-unit"), LinearMap.identity(3), 0))
    with pytest.raises(PreconditionError):
        dendrify(rota_baxter_on(fixture("ap3d-source"), LinearMap.identity(3), -1))


def test_homomorphism_trivial(fixture):
    a = fixture("ap3d-unit")
    assert check_homomorphism(LinearMap.identity(3), a, a).passed
    # the zero map sends both sides to zero
    assert check_homomorphism(LinearMap.zeros(3), fixture("ap3d-nonjacobi"), a).passed
    assert not check_homomorphism(LinearMap.identity(3), fixture("ap3d-nonjacobi"), a).passed
    with pytest.raises(InputError):
        check_homomorphism(LinearMap.identity(2), a, a)


# duplication

def test_induced_awb_example(fixture):
    awb = induced_awb(fixture("avg-3d"))
    expected_product = {(0, i, i): 1 for i in range(3)}
    expected_bracket = {(0, 1, 1): 1, (0, 2, 2): -1}
    assert {k: v for k, v in np.ndenumerate(awb.product.array) if v} == expected_product
    assert {k: v for k, v in np.ndenumerate(awb.bracket.array) if v} == expected_bracket
    assert check_awb(awb, "left").passed
    # the ambient data itself is not almost Poisson; duplication still works
    assert not check_almost_poisson(fixture("ap3d-source")).passed


def test_induced_awb_zero(fixture):
    awb = induced_awb(averaging_on(fixture("ap3d-unit"), zeros(3, 3)))
    assert awb.product.is_zero() and awb.bracket.is_zero()


def test_induced_awb_precondition(fixture):
    with pytest.raises(PreconditionError):
        induced_awb(averaging_on(fixture("ap2d-unit"), [[1, 1], [0, 1]]))
