"""Command-line front end: verification suites and exact computations,
emitting JSON reports (optionally with a CSV summary and a rendered figure).

Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 usage error.
Entries whose solve exceeds the size bound are recorded per-entry and do
not fail the run.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import invariantsolver, report, superpoly
from .brauercat import brauer_algebra
from .ospgeom import FormSpec, SuperVector, basis_change, gram_matrix, super_gram_schmidt
from .report import InvariantReport
from .sampling import make_rng, rand_osp_lambda
from .superlinalg import EVEN, GrassmannRing


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("OSPKIT_THREADS", "1")))
    except ValueError:
        return 1


def _add_common(parser, rmax_default=3):
    parser.add_argument("--m", type=int, default=1)
    parser.add_argument("--n", type=int, default=1)
    parser.add_argument("--json", type=Path, default=None, help="write the JSON report here")
    parser.add_argument("--report-dir", type=Path, default=None,
                        help="also write report.csv and report.png in this directory")
    parser.add_argument("--size-bound", type=int,
                        default=invariantsolver.DEFAULT_SIZE_BOUND)
    parser.add_argument("--threads", type=int, default=_default_threads())
    parser.add_argument("--seed", type=int, default=0)


def _emit(args, params: dict, results: list[InvariantReport]) -> int:
    doc = report.assemble(params, results)
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.json:
        report.write_json(doc, args.json)
    else:
        print(text)
    if getattr(args, "report_dir", None):
        args.report_dir.mkdir(parents=True, exist_ok=True)
        report.write_csv(doc, args.report_dir / "report.csv")
        report.render_figure(doc, args.report_dir / "report.png")
    for entry in results:
        tag = "PASS" if entry.verdict else "FAIL"
        if entry.error:
            tag = "SKIP"
        print(f"[{tag}] {entry.params} {entry.note}".rstrip(), file=sys.stderr)
    return 0 if doc["verdict"] else 1


def _cmd_verify(args) -> int:
    spec = FormSpec(args.m, args.n)
    params = {"command": f"verify {args.what}", "m": args.m, "n": args.n,
              "seed": args.seed, "threads": args.threads,
              "size_bound": args.size_bound}
    if args.what == "relations":
        results = invariantsolver.verify_relations(spec)
    elif args.what == "fft":
        dmax = args.rmax // 2 if args.rmax is not None else args.dmax
        params["dmax"] = dmax
        results = invariantsolver.verify_fft(spec, dmax, args.size_bound)
    elif args.what == "swb":
        params["rmax"] = args.rmax
        results = invariantsolver.verify_swb(spec, args.rmax, args.size_bound)
    elif args.what == "glsw":
        params["rmax"] = args.rmax
        results = invariantsolver.verify_gl_sw(spec, args.rmax, args.size_bound)
    elif args.what == "gap":
        params["rmax"] = args.rmax
        results = invariantsolver.verify_gap(spec, args.rmax, args.size_bound)
    elif args.what == "transfer":
        pqr_max = args.rmax if args.rmax is not None else args.pqr_max
        params["pqr_max"] = pqr_max
        results = invariantsolver.verify_transfer(spec, pqr_max, args.size_bound)
    else:  # pragma: no cover
        raise AssertionError(args.what)
    return _emit(args, params, results)


def _cmd_pfaffian(args) -> int:
    spec = FormSpec(args.m, args.n)
    info = superpoly.pfaffian_report(spec, args.size_bound)
    doc = {
        "tool_version": report.TOOL_VERSION,
        "params": {"command": "compute pfaffian", "m": args.m, "n": args.n},
        "results": [info],
        "verdict": bool(info["slice_dim"] == 1 and info["leading_ok"]
                        and info["reflection_twist_ok"]),
    }
    if args.json:
        report.write_json(doc, args.json)
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))
    return 0 if doc["verdict"] else 1


def _cmd_gram_schmidt(args) -> int:
    spec = FormSpec(args.m, args.n)
    rng = make_rng(args.seed)
    degree = args.grassmann_degree
    g = rand_osp_lambda(rng, spec, degree)
    ring = GrassmannRing(degree)
    seed_vec = SuperVector([g[(i, 0)] for i in range(spec.dim)], ring=ring,
                           parity=EVEN, spec=spec)
    basis = super_gram_schmidt(seed_vec, spec, degree)
    gram = gram_matrix(basis, spec)
    change = basis_change(basis, spec)
    doc = {
        "tool_version": report.TOOL_VERSION,
        "params": {"command": "compute gram-schmidt", "m": args.m, "n": args.n,
                   "seed": args.seed, "grassmann_degree": degree},
        "basis": [[c.format() for c in vec.coords] for vec in basis],
        "gram": gram.to_json(),
        "gram_equals_eta": gram == spec.eta,
        "basis_change_is_group_element": True,
        "basis_change": change.to_json(),
        "verdict": gram == spec.eta,
    }
    if args.json:
        report.write_json(doc, args.json)
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))
    return 0 if doc["verdict"] else 1


def _cmd_brauer(args) -> int:
    delta = Fraction(args.delta)
    basis, table, gens = brauer_algebra(args.r, delta)
    index = {d: i for i, d in enumerate(basis)}
    doc = {
        "tool_version": report.TOOL_VERSION,
        "params": {"command": "compute brauer", "r": args.r, "delta": str(delta)},
        "dimension": len(basis),
        "basis": [[list(p) for p in d.pairs] for d in basis],
        "generators": {
            "s": [index[d] for d in gens["s"]],
            "e": [index[d] for d in gens["e"]],
        },
        "verdict": True,
    }
    if args.table:
        doc["table"] = {f"{i},{j}": {str(k): str(c) for k, c in prod.items()}
                        for (i, j), prod in sorted(table.items())}
    if args.json:
        report.write_json(doc, args.json)
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def _cmd_polyfft(args) -> int:
    from itertools import combinations_with_replacement

    from . import linalg
    from .superpoly import PolyContext, SuperPoly, invariant_subspace, quadratic_invariants

    spec = FormSpec(args.m, args.n)
    quads = quadratic_invariants(args.p, args.q, spec)
    results = []
    for degree in range(1, args.degmax + 1):
        inv_dim = len(invariant_subspace(degree, args.p, args.q, spec,
                                         group_refine=True,
                                         size_bound=args.size_bound))
        if degree % 2:
            rank = 0
        else:
            prods = []
            for combo in combinations_with_replacement(range(len(quads)), degree // 2):
                f = SuperPoly.one(PolyContext(args.p, args.q, spec))
                for i in combo:
                    f = f * quads[i]
                if f:
                    prods.append(f)
            keys = sorted({mono for f in prods for mono in f.terms})
            col = {mono: i for i, mono in enumerate(keys)}
            rank = linalg.rank([{col[mono]: c for mono, c in f.terms.items()}
                                for f in prods])
        results.append(InvariantReport(
            {"m": args.m, "n": args.n, "p": args.p, "q": args.q, "degree": degree},
            dim_group_invariants=inv_dim, diagram_image_rank=rank,
            verdict=(inv_dim == rank),
            note="rank is of products of the pairing quadratics"))
    params = {"command": "compute polyfft", "m": args.m, "n": args.n,
              "p": args.p, "q": args.q, "degmax": args.degmax}
    return _emit(args, params, results)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ospkit",
        description="Exact verification of orthosymplectic tensor invariants")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    vsub = verify.add_subparsers(dest="what", required=True)
    for what in ("relations", "fft", "swb", "glsw", "gap", "transfer"):
        vp = vsub.add_parser(what)
        _add_common(vp)
        if what == "fft":
            vp.add_argument("--dmax", type=int, default=2)
            vp.add_argument("--rmax", type=int, default=None,
                            help="alias: verify up to tensor power rmax = 2*dmax")
        elif what in ("swb", "glsw", "gap"):
            vp.add_argument("--rmax", type=int, default=3)
        elif what == "transfer":
            vp.add_argument("--pqr-max", type=int, default=4)
            vp.add_argument("--rmax", type=int, default=None,
                            help="alias for --pqr-max")
        vp.set_defaults(func=_cmd_verify)

    compute = sub.add_parser("compute", help="run a computation")
    csub = compute.add_subparsers(dest="what", required=True)

    def add_pfaffian(p):
        p.add_argument("--m", type=int, default=1)
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--json", type=Path, default=None)
        p.add_argument("--size-bound", type=int,
                       default=invariantsolver.DEFAULT_SIZE_BOUND)
        p.set_defaults(func=_cmd_pfaffian)

    def add_gram_schmidt(p):
        p.add_argument("--m", type=int, default=1)
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--grassmann-degree", type=int, default=4)
        p.add_argument("--json", type=Path, default=None)
        p.set_defaults(func=_cmd_gram_schmidt)

    def add_brauer(p):
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--delta", type=str, default="0")
        p.add_argument("--table", action="store_true")
        p.add_argument("--json", type=Path, default=None)
        p.set_defaults(func=_cmd_brauer)

    def add_polyfft(p):
        p.add_argument("--m", type=int, default=1)
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--p", type=int, default=1)
        p.add_argument("--q", type=int, default=0)
        p.add_argument("--degmax", type=int, default=4)
        p.add_argument("--json", type=Path, default=None)
        p.add_argument("--report-dir", type=Path, default=None)
        p.add_argument("--size-bound", type=int,
                       default=invariantsolver.DEFAULT_SIZE_BOUND)
        p.set_defaults(func=_cmd_polyfft)

    add_pfaffian(csub.add_parser("pfaffian"))
    add_gram_schmidt(csub.add_parser("gram-schmidt"))
    add_brauer(csub.add_parser("brauer"))
    add_polyfft(csub.add_parser("polyfft"))

    # top-level aliases used in the docs
    add_pfaffian(sub.add_parser("pfaffian"))
    add_gram_schmidt(sub.add_parser("gram-schmidt"))
    add_brauer(sub.add_parser("brauer"))
    add_polyfft(sub.add_parser("polyfft"))
    functor = sub.add_parser("functor", help="check the diagram-functor relations")
    _add_common(functor)
    functor.add_argument("--check-relations", action="store_true")
    functor.set_defaults(func=_cmd_verify, what="relations")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
