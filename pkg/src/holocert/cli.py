"""Batch front end: parameter files in, certificates and reports out.

Commands
    expand          print the c_d / S_d table
    conditions      print the obstruction polynomials F_3..F_6
    eliminate       run the resultant chain, emit the certificate JSON
    verify-numeric  run the holonomy cross-checks, emit the report JSON
    certify         everything; exit 0 only for verdict UNIQUE with all
                    numeric checks passing

Exit codes: 0 success, 1 INCONCLUSIVE verdict or failed numeric check,
2 input/configuration errors (including exact genericity violations).
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .conditions import build_condition_set
from .elimination import EliminationError, VERDICT_UNIQUE, certify
from .gaussian import GaussianRationalError
from .mpoly import MPolyError
from .normalform import DMAX, FoliationParams, expand_normal_form, validate_genericity
from .numerics.checks import numeric_summary, run_numeric_verification
from .numerics.odepath import ODEError
from .obstruction import GenericityError

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_CONFIG = 2


class ConfigError(Exception):
    pass


def _load_params(path: str | None) -> FoliationParams:
    try:
        if path is None:
            with resources.files("holocert.data").joinpath("testpoint.json").open("r") as fh:
                return FoliationParams.from_dict(json.load(fh))
        return FoliationParams.from_json_file(path)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read parameters ({path or 'bundled test point'}): {exc}") from exc


def _require_genericity(p: FoliationParams) -> None:
    rep = validate_genericity(p)
    if not rep.exact_ok:
        raise ConfigError(
            "exact genericity violated: "
            + ("lambdas not pairwise distinct; " if not rep.pairwise_distinct else "")
            + ", ".join(rep.lattice_failures)
        )


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {out}: {exc}") from exc


def emit_report(payload: dict, out: str | None) -> None:
    """Canonical JSON emission: sorted keys, byte-stable for equal inputs."""
    _write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", out)


def cmd_expand(args) -> int:
    p = _load_params(args.params)
    _require_genericity(p)
    e = expand_normal_form(p)
    lines = [f"lambda3 = {p.lambda3}", f"sigma = {p.sigma}", f"eta = {p.eta}", ""]
    for d in range(1, args.dmax + 1):
        lines.append(f"c{d} = {e.c[d]}")
    lines.append("")
    for d in range(2, args.dmax + 1):
        lines.append(f"S{d} = {e.S[d]}")
    _write_text("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_conditions(args) -> int:
    p = _load_params(args.params)
    _require_genericity(p)
    cs = build_condition_set(p)
    lines = []
    for d in (3, 4, 5, 6):
        lines.append(f"F{d} = {cs.F[d]}")
    _write_text("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_eliminate(args) -> int:
    p = _load_params(args.params)
    _require_genericity(p)
    cert = certify(p)
    emit_report(cert.to_dict(), args.out)
    return EXIT_OK if cert.verdict == VERDICT_UNIQUE else EXIT_INCONCLUSIVE


def cmd_verify_numeric(args) -> int:
    p = _load_params(args.params)
    _require_genericity(p)
    report = run_numeric_verification(
        p, radius=args.radius, rtol=args.rtol, seed=args.seed, n_samples=args.samples
    )
    emit_report(report, args.out)
    return EXIT_OK if report["all_pass"] else EXIT_INCONCLUSIVE


def cmd_certify(args) -> int:
    p = _load_params(args.params)
    _require_genericity(p)
    cs = build_condition_set(p)
    cert = certify(p, conditions=cs)
    if not args.skip_numeric:
        report = run_numeric_verification(
            p, radius=args.radius, rtol=args.rtol, seed=args.seed, n_samples=args.samples
        )
        cert.numeric = numeric_summary(report)
    emit_report(cert.to_dict(), args.out)
    ok = cert.verdict == VERDICT_UNIQUE and (args.skip_numeric or cert.numeric.get("all_pass", False))
    if not ok:
        print(f"verdict: {cert.verdict}; reasons: {list(cert.reasons)}", file=sys.stderr)
        if cert.numeric and not cert.numeric.get("all_pass", True):
            print(f"failed numeric checks: {cert.numeric['failed']}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_INCONCLUSIVE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="holocert", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--params", default=None, help="parameter JSON file (default: bundled test point)")
        sp.add_argument("--out", default=None, help="output path (default: stdout)")

    sp = sub.add_parser("expand", help="print the c_d / S_d table")
    common(sp)
    sp.add_argument("--dmax", type=int, default=DMAX, choices=range(1, DMAX + 1))
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("conditions", help="print F_3..F_6")
    common(sp)
    sp.set_defaults(func=cmd_conditions)

    sp = sub.add_parser("eliminate", help="run the resultant chain, emit certificate")
    common(sp)
    sp.set_defaults(func=cmd_eliminate)

    def numeric_flags(sp):
        sp.add_argument("--radius", type=float, default=0.5)
        sp.add_argument("--rtol", type=float, default=1e-12)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=20, help="samples per integral-lemma family")

    sp = sub.add_parser("verify-numeric", help="holonomy cross-validation report")
    common(sp)
    numeric_flags(sp)
    sp.set_defaults(func=cmd_verify_numeric)

    sp = sub.add_parser("certify", help="exact certificate plus numeric verification")
    common(sp)
    numeric_flags(sp)
    sp.add_argument("--skip-numeric", action="store_true")
    sp.set_defaults(func=cmd_certify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"holocert: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (EliminationError, GenericityError) as exc:
        print(f"holocert: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (MPolyError, GaussianRationalError, ODEError, ValueError) as exc:
        print(f"holocert: internal failure: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
