import random

import numpy as np
import pytest

from awbench.algebras import AlgebraData, check_almost_poisson
from awbench.bialgebras import (
    BialgebraData,
    BilinearForm,
    CoalgebraData,
    build_double,
    build_dual_maps,
    check_coalgebra,
    check_dbialgebra,
    check_infinitesimal,
    check_manin_triple,
    dualize_coalgebra,
    encode_coalgebra,
    equivalence_report,
    standard_split,
)
from awbench.errors import InputError, PreconditionError
from awbench.exact import StructureConstants, zeros
from awbench.sampling import random_coalgebra
from oracles import ap_failures_raw, dual_constants, lists


def coalgebra(n, Delta=(), delta=()):
    D, E = zeros(n, n, n), zeros(n, n, n)
    for k, i, j, v in Delta:
        D[k - 1, i - 1, j - 1] = v
    for k, i, j, v in delta:
        E[k - 1, i - 1, j - 1] = v
    return CoalgebraData(D, E)


def test_zero_coalgebra():
    assert check_coalgebra(CoalgebraData.zero(3)).passed
    dual = dualize_coalgebra(CoalgebraData.zero(2))
    assert dual.product.is_zero() and check_almost_poisson(dual).passed


def test_1d_coalgebra():
    c = coalgebra(1, [(1, 1, 1, 1)])
    assert check_coalgebra(c).passed
    assert dualize_coalgebra(c).product.array[0, 0, 0] == 1


def test_noncocommutative(fixture):
    report = check_coalgebra(coalgebra(2, [(1, 1, 2, 1)]))
    assert "cocommutativity" in report.failed_identities()
    assert not check_coalgebra(fixture("coalg-noncocomm-2d")).passed


def test_shape_mismatch():
    with pytest.raises(InputError):
        CoalgebraData(zeros(2, 2, 2), zeros(3, 3, 3))


def test_coalgebra_matches_dual_oracle():
    rng = random.Random(11)
    seen = set()
    for _ in range(60):
        c = random_coalgebra(rng)
        verdict = not ap_failures_raw(*(dual_constants(lists(t)) for t in (c.Delta, c.delta)))
        assert check_coalgebra(c).passed == verdict
        assert check_almost_poisson(dualize_coalgebra(c)).passed == verdict
        seen.add(verdict)
    assert seen == {True, False}


def test_encode_roundtrip(fixture):
    a = fixture("ap3d-unit")
    assert dualize_coalgebra(encode_coalgebra(a)) == a
    c = coalgebra(2, [(1, 1, 2, 1), (2, 2, 2, -1)], [(1, 1, 2, 1), (1, 2, 1, -1)])
    assert encode_coalgebra(dualize_coalgebra(c)) == c


def test_infinitesimal(fixture):
    a = fixture("ap2d-unit")
    assert check_infinitesimal(BialgebraData(a, CoalgebraData.zero(2))).passed
    zero_product = fixture("ap2d-lie")
    c = coalgebra(2, [(1, 1, 1, 1), (2, 1, 2, 1), (2, 2, 1, 1)])
    assert check_infinitesimal(BialgebraData(zero_product, c)).passed
    one = AlgebraData.build(1, [(1, 1, 1, 1)], [], "almost-poisson")
    report = check_infinitesimal(BialgebraData(one, coalgebra(1, [(1, 1, 1, 1)])))
    assert not report.passed
    v = report.first
    assert v.indices == (1, 1) and v.lhs == (1,) and v.rhs == (2,)


@pytest.mark.parametrize("name", ["ap2d-lie", "ap2d-unit", "ap3d-unit", "ap3d-nonjacobi"])
def test_zero_cobracket_passes(fixture, name):
    b = BialgebraData(fixture(name), CoalgebraData.zero(fixture(name).dim))
    assert check_dbialgebra(b).passed
    result = equivalence_report(b)
    assert result.verdicts == (True, True, True)


def test_poisson_bialgebra_fixture(fixture):
    b = fixture("poisson-bialg-2d")
    assert check_dbialgebra(b).passed
    assert all(equivalence_report(b).verdicts)


def test_failing_bi4_located(fixture):
    a = fixture("ap2d-unit")
    c = coalgebra(2, [], [(1, 1, 2, 1), (1, 2, 1, -1)])
    report = check_dbialgebra(BialgebraData(a, c))
    assert not report.passed
    assert "Bi4" in report.failed_identities()
    assert not any(equivalence_report(BialgebraData(a, c)).verdicts)


def test_precondition_gate(fixture):
    with pytest.raises(PreconditionError) as info:
        check_dbialgebra(fixture("bialg-coassoc-broken"))
    assert "coassociativity" in info.value.report.failed_identities()
    with pytest.raises(PreconditionError):
        equivalence_report(fixture("bialg-coassoc-broken"))
    with pytest.raises(PreconditionError):
        check_dbialgebra(BialgebraData(fixture("ap2d-idem"), CoalgebraData.zero(2)))


def test_dual_maps_zero_coalgebra(fixture):
    a = fixture("ap2d-unit")
    mp = build_dual_maps(BialgebraData(a, CoalgebraData.zero(2)))
    assert all(m.is_zero() for m in mp.mu2 + mp.rho2)
    for m, lm in zip(mp.mu1, a.product.array):
        assert (m.array == lm).all()  # -(-L^T) with L = c[p].T
    for m, adm in zip(mp.rho1, a.bracket.array):
        assert (m.array == -adm).all()


def test_dual_maps_explicit(fixture):
    """ap2d-lie with delta(e2) = e1 (x) e2 - e2 (x) e1: the dual bracket is
    [xi1, xi2] = xi2, so rho2 matrices are -ad^T of that bracket."""
    mp = build_dual_maps(fixture("poisson-bialg-2d"))
    assert [m.array.tolist() for m in mp.rho2] == [[[0, 0], [0, -1]], [[0, 1], [0, 0]]]
    assert [m.array.tolist() for m in mp.rho1] == [[[0, 0], [0, -1]], [[0, 1], [0, 0]]]


def test_double_block_recovers_algebra(fixture):
    b = fixture("poisson-bialg-2d")
    double, form = build_double(b)
    assert (double.product.array[:2, :2, :2] == b.algebra.product.array).all()
    assert (double.bracket.array[:2, :2, :2] == b.algebra.bracket.array).all()
    assert form.gram.tolist() == [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    assert check_almost_poisson(double).passed


def test_manin_triple_clauses(fixture):
    b = BialgebraData(fixture("ap2d-lie"), CoalgebraData.zero(2))
    double, form = build_double(b)
    assert check_manin_triple(double, standard_split(2), form).passed
    report = check_manin_triple(double, (range(4), ()), form)
    assert "isotropy-1" in report.failed_identities()
    br = double.bracket.array.copy()
    br[0, 1, 1] += 1
    br[1, 0, 1] -= 1
    perturbed = AlgebraData(double.product, StructureConstants(br), "almost-poisson")
    assert "invariance-bracket" in check_manin_triple(perturbed, standard_split(2), form).failed_identities()
    with pytest.raises(InputError):
        check_manin_triple(double, ((0, 1), (1, 2, 3)), form)


def test_form_validation():
    with pytest.raises(InputError):
        BilinearForm([[0, 1], [0, 0]])
    g = BilinearForm.standard(2)
    assert g(np.array([1, 0, 0, 0], dtype=object), np.array([0, 0, 1, 0], dtype=object)) == 1
