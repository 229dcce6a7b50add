"""Command-line front end: verification suites, seeded construction, sweeps.

`prym6 verify` replays every frozen numerical claim with exact arithmetic and
exits nonzero on the first discrepancy; `prym6 construct` builds and certifies
one seeded conic-bundle instance; `prym6 sweep` runs the net-and-pencil
pipeline.  All reports are deterministic JSON for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import chow, conicbundle, moduli


@dataclass(frozen=True)
class Check:
    identifier: str
    anchor: str
    expected: Fraction
    compute: Callable[[], Fraction]


def _chow_checks() -> list[Check]:
    table = chow.blowup_intersection_table()
    S = chow.del_pezzo_ring()
    P = chow.projective_bundle_ring(S, chow.conic_bundle_chern_data(S))
    kp, kb = chow.canonical_classes()
    checks = [
        Check("chow.blowup.N4", "exceptional quartic self-intersection",
              Fraction(-4), lambda: table[(4, 0, 0, 0)]),
        Check("chow.blowup.N3H", "cubic exceptional against anticanonical",
              Fraction(4), lambda: table[(3, 1, 0, 0)]),
        Check("chow.blowup.N3H1", "cubic exceptional against line class",
              Fraction(0), lambda: table[(3, 0, 1, 0)]),
        Check("chow.blowup.N3H2", "cubic exceptional against fiber hyperplane",
              Fraction(0), lambda: table[(3, 0, 0, 1)]),
        Check("chow.blowup.N2H2", "square exceptional against pullbacks",
              Fraction(0), lambda: table[(2, 2, 0, 0)]),
        Check("chow.blowup.N2H1sq", "square exceptional against pullbacks",
              Fraction(0), lambda: table[(2, 0, 2, 0)]),
        Check("chow.blowup.N2H2sq", "square exceptional against pullbacks",
              Fraction(0), lambda: table[(2, 0, 0, 2)]),
        Check("chow.deg_h.blowup", "degree of the double cover, blow-up route",
              Fraction(2), lambda: chow.verify_deg_h_two_ways()[0]),
        Check("chow.deg_h.segre", "degree of the double cover, Segre route",
              Fraction(2), lambda: chow.verify_deg_h_two_ways()[1]),
        Check("chow.canonical.KP_H1", "canonical class of the bundle",
              Fraction(-3), lambda: kp.get("H1", Fraction(0))),
        Check("chow.canonical.KP_H2", "canonical class of the bundle",
              Fraction(-3), lambda: kp.get("H2", Fraction(0))),
        Check("chow.canonical.KP_N", "canonical class of the bundle",
              Fraction(3), lambda: kp.get("N", Fraction(0))),
        Check("chow.KB_squared", "canonical square of the base surface",
              Fraction(8), chow.kb_squared),
        Check("chow.hrr.chi_O", "structure-sheaf Euler characteristic",
              Fraction(1), lambda: chow.hrr_chi(P, 0)),
        Check("chow.hrr.chi_1", "sections of the half-anticanonical bundle",
              Fraction(5), lambda: chow.hrr_chi(P, 1)),
        Check("chow.hrr.chi_2", "sections of the conic-bundle system",
              Fraction(16), lambda: chow.hrr_chi(P, 2)),
        Check("chow.koszul.chi_B", "chi(O) of the pencil base surface",
              Fraction(6), lambda: chow.koszul_chi_B(P)),
    ]
    return checks


def _counts_checks() -> list[Check]:
    eul = chow.euler_numbers()
    chain = moduli.chi_of_Y_chain()
    return [
        Check("counts.euler.S", "Euler number of the del Pezzo surface",
              Fraction(7), lambda: eul["e_S"]),
        Check("counts.euler.genus_C", "genus of the discriminant curve",
              Fraction(6), lambda: eul["g_C"]),
        Check("counts.euler.C", "Euler number of the discriminant curve",
              Fraction(-10), lambda: eul["e_C"]),
        Check("counts.euler.Q", "Euler number of a smooth member",
              Fraction(4), lambda: eul["e_Q"]),
        Check("counts.euler.Q0", "Euler number of a one-nodal member",
              Fraction(5), lambda: eul["e_Q0"]),
        Check("counts.euler.P", "Euler number of the ambient bundle",
              Fraction(21), lambda: eul["e_P"]),
        Check("counts.euler.B", "second Chern number of the base surface",
              Fraction(64), lambda: eul["e_B"]),
        Check("counts.singular_members", "singular members of a pencil",
              Fraction(77), lambda: eul["singular_members"]),
        Check("counts.chiY.omega_h1", "dualizing class of the family surface",
              Fraction(3), lambda: chain["omega_class"][0]),
        Check("counts.chiY.omega_h2", "dualizing class of the family surface",
              Fraction(1), lambda: chain["omega_class"][1]),
        Check("counts.chiY.h0_ambient", "ambient sections of the dualizing class",
              Fraction(20), lambda: chain["h0_omega_ambient"]),
        Check("counts.chiY.chi", "chi(O) of the family surface",
              Fraction(13), lambda: chain["chi"]),
        Check("counts.lambda_degree", "lambda-degree of the pencil",
              Fraction(18), moduli.lambda_degree_from_family),
        Check("counts.double_lines", "double-line members of a pencil",
              Fraction(32), moduli.solve_double_line_count),
        Check("counts.double_lines_unreduced", "same count, unreduced relation",
              Fraction(32), lambda: moduli.solve_double_line_count(unreduced=True)),
        Check("counts.degree_nine", "triple-product intersection number",
              Fraction(9), moduli.degree_nine_lemma),
        Check("counts.psi_degree", "point-class degree on the sweeping curve",
              Fraction(9), moduli.psi_degree_via_Z),
    ]


def _slope_checks() -> list[Check]:
    curves = moduli.pencil_curve_numbers()
    single, triple = curves["single"], curves["triple"]
    return [
        Check("slope.pairing.delta0", "pencil against the boundary pullback",
              Fraction(141), lambda: single.pair(moduli.pullback_delta0())),
        Check("slope.triple.lambda", "triple-pencil lambda-degree",
              Fraction(54), lambda: triple["lambda"]),
        Check("slope.triple.delta0_prime", "triple-pencil boundary degree",
              Fraction(231), lambda: triple["delta0_prime"]),
        Check("slope.triple.delta0_dblprime", "triple-pencil boundary degree",
              Fraction(0), lambda: triple["delta0_dblprime"]),
        Check("slope.triple.delta0_ram", "triple-pencil ramified degree",
              Fraction(96), lambda: triple["delta0_ram"]),
        Check("slope.full.lambda1", "sweeping curve against the Hodge class",
              Fraction(30), lambda: moduli.slope_bound("full")[0]),
        Check("slope.full.boundary", "sweeping curve against the boundary",
              Fraction(159), lambda: moduli.slope_bound("full")[1]),
        Check("slope.full.bound", "slope bound on the full space",
              Fraction(53, 10), lambda: moduli.slope_bound("full")[2]),
        Check("slope.u4.boundary", "restricted variant boundary degree",
              Fraction(195), lambda: moduli.slope_bound("u4")[1]),
        Check("slope.u4.bound", "slope bound on the four-point locus",
              Fraction(13, 2), lambda: moduli.slope_bound("u4")[2]),
    ]


SUITES = {
    "chow": _chow_checks,
    "counts": _counts_checks,
    "slope": _slope_checks,
}


def run_checks(suite: str) -> dict:
    names = list(SUITES) if suite == "all" else [suite]
    checks: list[Check] = []
    for name in names:
        checks.extend(SUITES[name]())
    checks.sort(key=lambda c: c.identifier)
    results = []
    for c in checks:
        start = time.perf_counter()
        computed = Fraction(c.compute())
        millis = round((time.perf_counter() - start) * 1000, 3)
        results.append({
            "identifier": c.identifier,
            "anchor": c.anchor,
            "expected": [c.expected.numerator, c.expected.denominator],
            "computed": [computed.numerator, computed.denominator],
            "pass": computed == c.expected,
            "millis": millis,
        })
    return {"suite": suite, "checks": results,
            "pass": all(r["pass"] for r in results)}


def _dump(data: dict, path: str | None) -> None:
    text = json.dumps(data, sort_keys=True, indent=2)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_verify(args) -> int:
    report = run_checks(args.suite)
    _dump(report, args.json)
    if args.json:
        status = "ok" if report["pass"] else "FAILED"
        print(f"{args.suite}: {len(report['checks'])} checks {status}")
    return 0 if report["pass"] else 1


def cmd_construct(args) -> int:
    try:
        inst = conicbundle.construct_instance(
            args.seed, exact_elimination=args.exact_elimination)
    except conicbundle.GenericityError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return 1
    text = inst.to_json()
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"instance written to {args.json}")
    else:
        print(text)
    return 0


def _frac_json(v: Fraction):
    return [v.numerator, v.denominator]


def cmd_sweep(args) -> int:
    try:
        report = conicbundle.sweep(args.seed, args.samples,
                                   exact_elimination=args.exact_elimination)
    except conicbundle.GenericityError as exc:
        print(f"sweep failed: {exc}", file=sys.stderr)
        return 1
    net = report["net"]
    data = {
        "seed": args.seed,
        "net_dimension": net.system.dim,
        "base_point": [_frac_json(c) for c in net.o],
        "cubic_node": [_frac_json(c) for c in report["cubic"]["node"]],
        "samples": [
            {
                "line_dual": [_frac_json(c) for c in s["line"].dual],
                "certified_nodes": len(s["instance"].node_certificates),
                "sections": [
                    {"index": sec["index"],
                     "residual_dual": [_frac_json(c) for c in sec["residual"]],
                     "point": None if sec["point"] is None
                     else [_frac_json(c) for c in sec["point"]]}
                    for sec in s["sections"]],
            }
            for s in report["samples"]],
    }
    _dump(data, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prym6",
        description="exact verification toolkit for genus-6 Prym conic bundles")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", choices=["all", *SUITES], default="all")
    p_verify.add_argument("--json", metavar="PATH", default=None,
                          help="write the report to a file instead of stdout")
    p_verify.set_defaults(func=cmd_verify)

    p_construct = sub.add_parser("construct",
                                 help="build and certify a seeded instance")
    p_construct.add_argument("--seed", type=int, required=True)
    p_construct.add_argument("--json", metavar="PATH", default=None)
    p_construct.add_argument("--exact-elimination", action="store_true",
                             help="use exact elimination instead of a random "
                                  "large prime for the completeness check")
    p_construct.set_defaults(func=cmd_construct)

    p_sweep = sub.add_parser("sweep", help="run the net-and-pencil pipeline")
    p_sweep.add_argument("--seed", type=int, required=True)
    p_sweep.add_argument("--samples", type=int, default=3)
    p_sweep.add_argument("--json", metavar="PATH", default=None)
    p_sweep.add_argument("--exact-elimination", action="store_true")
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
