"""Acceptance suite: eight end-to-end criteria, one pass/fail line each.

Run under pytest (the lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import io
import json
import random
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from awbench import sampling  # noqa: E402
from awbench.algebras import check_almost_poisson, check_awb  # noqa: E402
from awbench.bialgebras import (  # noqa: E402
    BialgebraData,
    check_coalgebra,
    dualize_coalgebra,
    encode_coalgebra,
    equivalence_report,
)
from awbench.cli import main  # noqa: E402
from awbench.errors import PreconditionError  # noqa: E402
from awbench.exact import LinearMap  # noqa: E402
from awbench.interchange import FIXTURE_DIR, load_document, parse_document  # noqa: E402
from awbench.matched_pairs import bowtie, check_matched_pair  # noqa: E402
from awbench.operators import (  # noqa: E402
    associated_ap,
    check_homomorphism,
    check_nijenhuis_awb,
    check_relative_averaging,
    check_tridendriform,
    dendrify,
    graph_subalgebra_check,
    nijenhuis_from_operator,
    rota_baxter_on,
)
from awbench.representations import awb_semidirect, check_rep, dual_rep, semidirect_ap  # noqa: E402
from oracles import ap_failures  # noqa: E402

RESULTS = {}
TRIALS = 150


def record(number, title, ok, detail):
    RESULTS[number] = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    return ok


def cli(*argv):
    out = io.StringIO()
    return main(list(argv), out), out.getvalue()


def fixtures(kind):
    docs = [load_document(str(p)) for p in sorted(FIXTURE_DIR.glob("*.json"))]
    return [d for d in docs if d.kind == kind]


def criterion_1():
    code, text = cli("check", "awb2d", "--format", "machine")
    payload = json.loads(text)
    ok = code == 0 and payload["verdict"] == "pass" and payload["violations"] == []
    return record(1, "2D AWB example passes check", ok, f"exit {code}, {len(payload['violations'])} violations")


def criterion_2():
    names = ("alpha", "beta", "gamma", "nu")
    verdicts = []
    for values in [(1, 1, 1, 1), (2, 3, 5, 7), (1, -1, 0, 4)]:
        a = load_document("awb2d-param", {k: str(v) for k, v in zip(names, values)}).value
        verdicts.append(check_awb(a, "left").passed)
    return record(2, "parametric family instances are left AWBs", all(verdicts), f"{sum(verdicts)}/3 pass")


def criterion_3():
    code, text = cli("derive", "awb", "avg-3d")
    awb = parse_document(text).value
    product = {k: v for k, v in np.ndenumerate(awb.product.array) if v}
    bracket = {k: v for k, v in np.ndenumerate(awb.bracket.array) if v}
    table_ok = product == {(0, 0, 0): 1, (0, 1, 1): 1, (0, 2, 2): 1} and bracket == {(0, 1, 1): 1, (0, 2, 2): -1}
    emitted_ok = check_awb(awb, "left").passed
    source = load_document("ap3d-source").value
    oracle = ap_failures(source)
    # pinned: the symmetrized source data fails Leibniz, first at (e2, e1, e1)
    pinned = ("leibniz", (2, 1, 1)) in oracle and {v.indices for v in check_almost_poisson(source).violations} == {
        idx for _, idx in oracle
    }
    first = check_almost_poisson(source).first
    pinned = pinned and first.indices == (2, 1, 1) and first.lhs == (0, -1, 0) and first.rhs == (0, -2, 0)
    ok = code == 0 and table_ok and emitted_ok and pinned
    detail = f"table {'matches' if table_ok else 'differs'}, emitted AWB {'passes' if emitted_ok else 'fails'}, source Leibniz failures {len(oracle)} incl. (2,1,1)"
    return record(3, "averaging duplication of the 3D example", ok, detail)


def criterion_4(seed=0):
    a = load_document("ap2d-lie").value
    while True:
        rng = random.Random(seed)
        agree = passes = fails = trials = 0
        draws = 0
        while trials < TRIALS:
            draws += 1
            c = sampling.structured_cotensors(rng, 2)
            if not check_coalgebra(c).passed:
                continue
            result = equivalence_report(BialgebraData(a, c))
            trials += 1
            agree += result.agree
            if result.agree:
                passes += result.verdicts[0]
                fails += not result.verdicts[0]
        if passes >= 5 and fails >= 5:
            break
        seed += 1
    ok = agree == trials
    detail = f"seed {seed}, {agree}/{trials} agree, {passes} pass, {fails} fail, {draws} draws"
    return record(4, "three bialgebra verdicts agree", ok, detail)


def criterion_5(seed=1):
    rng = random.Random(seed)
    agree = total = 0
    seen = set()
    for trial in range(TRIALS):
        kind = trial % 3
        perturb = rng.random() < 0.5
        if kind == 0:
            rep = sampling.random_ap_rep(rng)
            rep = sampling.perturb_rep(rng, rep) if perturb else rep
            pair = (check_rep(rep).passed, check_almost_poisson(semidirect_ap(rep)).passed)
        elif kind == 1:
            mp = sampling.random_matched_pair(rng)
            mp = sampling.perturb_matched_pair(rng, mp) if perturb else mp
            pair = (check_matched_pair(mp).passed, check_almost_poisson(bowtie(mp)).passed)
        else:
            rep = sampling.random_awb_rep(rng)
            rep = sampling.perturb_rep(rng, rep) if perturb else rep
            pair = (check_rep(rep).passed, check_awb(awb_semidirect(rep), "left").passed)
        total += 1
        agree += pair[0] == pair[1]
        seen.add(pair[0])
    ok = agree == total and seen == {True, False}
    return record(5, "semi-direct and bowtie outputs pass iff inputs do", ok, f"{agree}/{total} agree")


def criterion_6():
    names = []
    ok = True
    for doc in fixtures("algebra"):
        a = doc.value
        if a.kind != "almost-poisson" or doc.meta.get("expect") != "pass":
            continue
        names.append(doc.meta["name"])
        op = rota_baxter_on(a, LinearMap.identity(a.dim), -1)
        t = dendrify(op)
        back = associated_ap(t)
        exact = (
            back.kind == a.kind
            and np.array_equal(back.product.array, a.product.array)
            and np.array_equal(back.bracket.array, a.bracket.array)
        )
        ok = ok and check_tridendriform(t).passed and exact and check_homomorphism(op.map, back, a).passed
    ok = ok and len(names) >= 4
    return record(6, "dendrification of R = id, weight -1", ok, f"{len(names)} almost Poisson fixtures: {', '.join(names)}")


def criterion_7(seed=2):
    rng = random.Random(seed)
    agree = passes = 0
    for _ in range(TRIALS):
        op = sampling.random_averaging(rng)
        v1 = check_relative_averaging(op).passed
        n, hemi = nijenhuis_from_operator(op)
        v2 = check_nijenhuis_awb(n, hemi).passed
        v3 = graph_subalgebra_check(op).passed
        agree += v1 == v2 == v3
        passes += v1
    ok = agree == TRIALS and 0 < passes < TRIALS
    return record(7, "averaging, Nijenhuis and graph criteria agree", ok, f"{agree}/{TRIALS} agree, {passes} averaging")


def criterion_8(seed=3):
    rng = random.Random(seed)
    reps = [d.value for d in fixtures("representation") if d.value.profile != "awb" and check_rep(d.value).passed]
    reps += [sampling.random_ap_rep(rng) for _ in range(TRIALS)]
    dual_ok = all(check_rep(dual_rep(r)).passed for r in reps)
    roundtrip = all(dual_rep(dual_rep(r)) == r for r in reps)
    matches = 0
    seen = set()
    for _ in range(TRIALS):
        c = sampling.random_coalgebra(rng)
        dual = dualize_coalgebra(c)
        verdict = check_coalgebra(c).passed
        matches += verdict == check_almost_poisson(dual).passed
        roundtrip = roundtrip and encode_coalgebra(dual) == c
        seen.add(verdict)
    ok = dual_ok and roundtrip and matches == TRIALS and seen == {True, False}
    detail = f"{len(reps)} duals pass: {dual_ok}, coalgebra verdicts {matches}/{TRIALS} match, round trips exact: {roundtrip}"
    return record(8, "duality", ok, detail)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_criterion(criterion):
    assert criterion(), RESULTS.get(CRITERIA.index(criterion) + 1)


if __name__ == "__main__":
    failed = 0
    for run in CRITERIA:
        try:
            failed += not run()
        except PreconditionError as exc:
            failed += 1
            RESULTS[CRITERIA.index(run) + 1] = f"criterion {CRITERIA.index(run) + 1} FAIL: {exc}"
        print(RESULTS[CRITERIA.index(run) + 1])
    sys.exit(1 if failed else 0)
