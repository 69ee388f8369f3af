"""Command line front end.

Exit codes: 0 when every verified identity holds, 1 when one fails (or an
operation's precondition fails), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebras import CheckReport, check_for_kind
from .bialgebras import build_double, check_coalgebra, check_dbialgebra, dualize_coalgebra, equivalence_report
from .errors import InputError, PreconditionError
from .exact import zero_family
from .interchange import FIXTURE_DIR, Document, dumps, load_document, serialize_document
from .matched_pairs import MatchedPairData, bowtie, check_matched_pair
from .operators import (
    associated_ap,
    check_relative_averaging,
    check_tridendriform,
    check_weighted_rrb,
    dendrify,
    induced_awb,
)
from .representations import (
    awb_semidirect,
    check_module,
    check_rep,
    dual_rep,
    hemisemi_direct,
    semidirect_ap,
)

CONSTRUCTIONS = ("semidirect", "hemisemi", "bowtie", "double", "dendrify", "awb", "dual-rep", "dual-coalgebra", "associated")


def check_document(doc: Document, bracket_form="rho") -> CheckReport:
    """The checker a document's kind calls for."""
    v = doc.value
    if doc.kind == "algebra":
        return check_for_kind(v)
    if doc.kind == "representation":
        return check_rep(v)
    if doc.kind == "module-algebra":
        return check_module(v)
    if doc.kind == "matched-pair":
        return check_matched_pair(v)
    if doc.kind == "coalgebra":
        return check_coalgebra(v)
    if doc.kind == "bialgebra":
        return check_dbialgebra(v)
    if doc.kind == "operator":
        if v.is_rota_baxter:
            return check_weighted_rrb(v)
        return check_relative_averaging(v, bracket_form)
    if doc.kind == "tridendriform":
        return check_tridendriform(v)
    raise InputError(f"nothing to check for kind {doc.kind}")


def _need(doc: Document, *kinds):
    if doc.kind not in kinds:
        raise InputError(f"expected a {' or '.join(kinds)} document, got {doc.kind}")


def derive(construction: str, docs: list) -> Document:
    if construction not in CONSTRUCTIONS:
        raise InputError(f"unknown construction {construction!r}; choose from {', '.join(CONSTRUCTIONS)}")
    if construction == "bowtie" and len(docs) == 2:
        # two algebras and no actions: the direct product
        for d in docs:
            _need(d, "algebra")
        a1, a2 = docs[0].value, docs[1].value
        z12, z21 = zero_family(a1.dim, a2.dim), zero_family(a2.dim, a1.dim)
        with_rho = a1.bracket is not None and a2.bracket is not None
        mp = MatchedPairData(a1, a2, z12, z21, z12 if with_rho else None, z21 if with_rho else None)
        return Document("algebra", bowtie(mp))
    if len(docs) != 1:
        raise InputError(f"derive {construction} takes one document")
    doc = docs[0]
    v = doc.value
    if construction == "semidirect":
        _need(doc, "representation")
        if v.profile == "awb":
            return Document("algebra", awb_semidirect(v))
        return Document("algebra", semidirect_ap(v))
    if construction == "hemisemi":
        _need(doc, "representation", "operator")
        rep = v if doc.kind == "representation" else v.rep
        return Document("algebra", hemisemi_direct(rep))
    if construction == "bowtie":
        _need(doc, "matched-pair")
        return Document("algebra", bowtie(v))
    if construction == "double":
        _need(doc, "bialgebra")
        algebra, _ = build_double(v)
        meta = {"description": f"double on A + A* ({v.dim} + {v.dim}); the form pairs e_i with e_(n+i)"}
        return Document("algebra", algebra, meta=meta)
    if construction == "dendrify":
        _need(doc, "operator")
        return Document("tridendriform", dendrify(v))
    if construction == "awb":
        _need(doc, "operator")
        return Document("algebra", induced_awb(v))
    if construction == "dual-rep":
        _need(doc, "representation")
        return Document("representation", dual_rep(v))
    if construction == "dual-coalgebra":
        _need(doc, "coalgebra", "bialgebra")
        return Document("algebra", dualize_coalgebra(v if doc.kind == "coalgebra" else v.coalgebra))
    _need(doc, "tridendriform", "operator")
    return Document("algebra", associated_ap(v if doc.kind == "tridendriform" else dendrify(v)))


def _render(report: CheckReport, label: str, fmt: str, out):
    if fmt == "machine":
        out.write(json.dumps({"file": label, **report.to_dict()}) + "\n")
        return
    out.write(f"{label}: {report.name}: {report.verdict}\n")
    for v in report.violations:
        out.write(f"  {v.describe()}\n")


def _precondition(exc: PreconditionError, label, fmt, out):
    if fmt == "machine":
        inner = exc.report.to_dict() if exc.report is not None else None
        out.write(json.dumps({"file": label, "verdict": "precondition-failed", "message": str(exc), "report": inner}) + "\n")
    else:
        out.write(f"{label}: precondition failed: {exc}\n")
        if exc.report is not None:
            for v in exc.report.violations:
                out.write(f"  {v.describe()}\n")


def _cmd_check(args, out) -> int:
    doc = load_document(args.file, args.params)
    try:
        report = check_document(doc, args.bracket_form)
    except PreconditionError as exc:
        _precondition(exc, args.file, args.format, out)
        return 1
    _render(report, args.file, args.format, out)
    return 0 if report.passed else 1


def _cmd_derive(args, out) -> int:
    docs = [load_document(f, args.params) for f in args.files]
    try:
        result = derive(args.construction, docs)
    except PreconditionError as exc:
        _precondition(exc, " ".join(args.files), "text", sys.stderr)
        return 1
    out.write(serialize_document(result) + "\n")
    return 0


def _cmd_equiv(args, out) -> int:
    doc = load_document(args.file, args.params)
    if doc.kind != "bialgebra":
        raise InputError(f"equiv needs a bialgebra document, got {doc.kind}")
    try:
        result = equivalence_report(doc.value)
    except PreconditionError as exc:
        _precondition(exc, args.file, args.format, out)
        return 1
    labels = ("d-bialgebra", "matched-pair", "manin-triple")
    if args.format == "machine":
        payload = {"file": args.file, "agree": result.agree}
        payload.update({lab: r.to_dict() for lab, r in zip(labels, result.reports())})
        out.write(json.dumps(payload) + "\n")
    else:
        for lab, r in zip(labels, result.reports()):
            out.write(f"{lab}: {r.verdict}\n")
            for v in r.violations:
                out.write(f"  {v.describe()}\n")
        if not result.agree:
            out.write("verdicts disagree\n")
    return 0 if result.agree and all(result.verdicts) else 1


def _cmd_report(args, out) -> int:
    """Check every fixture and compare with its recorded expectation."""
    files = args.files or sorted(str(p) for p in FIXTURE_DIR.glob("*.json"))
    rows = []
    for name in files:
        doc = load_document(name, args.params)
        try:
            verdict = check_document(doc).verdict
        except PreconditionError:
            verdict = "precondition-failed"
        expect = doc.meta.get("expect")
        rows.append({"fixture": doc.meta.get("name", name), "kind": doc.kind, "verdict": verdict, "expect": expect})
    mismatched = [r for r in rows if r["expect"] is not None and r["expect"] != r["verdict"]]
    if args.format == "machine":
        out.write(dumps({"fixtures": rows, "mismatches": len(mismatched)}) + "\n")
    else:
        width = max((len(r["fixture"]) for r in rows), default=0)
        for r in rows:
            mark = "" if r["expect"] in (None, r["verdict"]) else f"  (expected {r['expect']})"
            out.write(f"{r['fixture']:<{width}}  {r['kind']:<15} {r['verdict']}{mark}\n")
        out.write(f"{len(rows)} fixtures, {len(mismatched)} unexpected verdicts\n")
    return 1 if mismatched else 0


def _param(text):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    name, value = text.split("=", 1)
    return name.strip(), value.strip()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="awbench", description="Exact checks and constructions for almost Poisson algebras and AWBs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--param", action="append", type=_param, default=[], metavar="NAME=VALUE",
                        help="value of a document parameter (repeatable)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="verify the identities a document's kind calls for")
    p.add_argument("file")
    p.add_argument("--bracket-form", choices=("rho", "mu"), default="rho",
                   help="bracket condition used for averaging operators")
    p.set_defaults(run=_cmd_check)

    p = sub.add_parser("derive", parents=[common], help="build a derived structure and print its document")
    p.add_argument("construction", choices=CONSTRUCTIONS)
    p.add_argument("files", nargs="+")
    p.set_defaults(run=_cmd_derive)

    p = sub.add_parser("equiv", parents=[common], help="the three equivalent bialgebra verdicts")
    p.add_argument("file")
    p.set_defaults(run=_cmd_equiv)

    p = sub.add_parser("report", parents=[common], help="check the fixture corpus against recorded verdicts")
    p.add_argument("files", nargs="*")
    p.set_defaults(run=_cmd_report)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    raw = dict(args.param)
    try:
        args.params = raw
        return args.run(args, out)
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
