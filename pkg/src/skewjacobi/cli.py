"""``skewjacobi`` command line: checks, evaluation, canonicalization of form files.

Reports go to stdout as JSON lines sorted by check name; a one-line summary
goes to stderr. Exit codes: 0 all pass, 1 a check failed, 2 malformed input
file, 3 invariant violation in an input file, 64 unknown subcommand.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

import numpy as np

from . import checks
from .forms_io import FormInvariantError, FormSchemaError, dumps_form, load_form, loads_form, save_form
from .isomorphism import ThetaComponents, full_iso_jacobi_to_plus, full_iso_plus_to_jacobi
from .jacobi_skew import SkewJacobiExpansion, jacobi_tail_bound
from .metaplectic import VectorValuedExpansion
from .scalar_maass import ScalarMaassExpansion

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA, EXIT_INVARIANT, EXIT_USAGE = 0, 1, 2, 3, 64

CHECK_NAMES = checks.CHECKS + ("eval",)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_m(text: str) -> list[int]:
    """'3', '1,2,5' or '1..7'."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError(f"bad index list {text!r}")
    return out


def parse_complex(text: str) -> complex:
    """Accept 'i', '2i', '0.5+i', '1-0.5j' and plain reals."""
    s = text.strip().replace(" ", "").replace("i", "j")
    s = re.sub(r"(^|[+-])j", r"\g<1>1j", s)
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from None


def _build_parser() -> _Parser:
    parser = _Parser(prog="skewjacobi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    chk = sub.add_parser("check", help="run a verification check")
    chk.add_argument("name", help="one of: " + ", ".join(CHECK_NAMES))
    chk.add_argument("--m", type=parse_m, default=None, help="index or range, e.g. 3 or 1..7")
    chk.add_argument("--k", type=int, default=None)
    chk.add_argument("--tol", type=float, default=None)
    chk.add_argument("--points", type=int, default=5)
    chk.add_argument("--truncation", type=int, default=200)
    chk.add_argument("--count", type=int, default=None, help="number of random tables")
    chk.add_argument("--dual", action="store_true")
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--in", dest="infile", default=None)
    chk.add_argument("--out", dest="outfile", default=None)
    chk.add_argument("--tau", type=parse_complex, default=1j)
    chk.add_argument("--z", type=parse_complex, default=0j)
    chk.add_argument("--unsafe-composite", action="store_true", help="allow composite m in the isomorphism")
    chk.add_argument("--timing", action="store_true", help="add runtime_ms (makes output nondeterministic)")

    ev = sub.add_parser("eval", help="evaluate a form file at a point")
    ev.add_argument("--in", dest="infile", required=True)
    ev.add_argument("--tau", type=parse_complex, required=True)
    ev.add_argument("--z", type=parse_complex, default=0j)

    canon = sub.add_parser("canonicalize", help="load a form file and save it canonically")
    canon.add_argument("--in", dest="infile", required=True)
    canon.add_argument("--out", dest="outfile", default=None)

    weil = sub.add_parser("weil-matrices", help="print rho_m(T~) and rho_m(S~)")
    weil.add_argument("--m", type=parse_m, default=[1])
    weil.add_argument("--dual", action="store_true")
    return parser


def evaluate(form, tau: complex, z: complex) -> tuple[object, float]:
    """Value and tail bound of any form type."""
    if isinstance(form, SkewJacobiExpansion):
        return complex(form(tau, z)), jacobi_tail_bound(form, tau, z)
    if isinstance(form, ScalarMaassExpansion):
        return form(tau), form.tail_bound(tau)
    if isinstance(form, VectorValuedExpansion):
        return form(tau), sum(c.tail_bound(tau) for c in form.components)
    if isinstance(form, ThetaComponents):
        t = tau if form.mode == "g" else -tau.conjugate()
        return form(tau), sum(c.tail_bound(t) for c in form.components)
    raise TypeError(f"cannot evaluate {type(form).__name__}")


def _json_value(value) -> list:
    arr = np.atleast_1d(np.asarray(value, dtype=complex))
    pairs = [[float(w.real), float(w.imag)] for w in arr]
    return pairs[0] if np.ndim(value) == 0 else pairs


def _form_reports(args, form) -> list[checks.Report]:
    """roundtrip / iso on a user-supplied form file."""
    tol = 0.0 if args.tol is None else args.tol
    text = dumps_form(form)
    reports = [checks.Report("roundtrip", {"in": args.infile, "mode": "save-load"}, float(dumps_form(loads_form(text)) != text), tol)]
    composite = args.unsafe_composite
    if args.name == "iso" and isinstance(form, SkewJacobiExpansion):
        back = full_iso_plus_to_jacobi(full_iso_jacobi_to_plus(form, composite), form.k, form.m, composite)
        reports.append(checks.Report("iso", {"in": args.infile}, float(back != form), tol))
    elif args.name == "iso" and isinstance(form, ScalarMaassExpansion):
        m, k = form.level // 4, (form.weight.twice + 1) // 2
        back = full_iso_jacobi_to_plus(full_iso_plus_to_jacobi(form, k, m, composite), composite)
        reports.append(checks.Report("iso", {"in": args.infile}, float(back != form), tol))
    return reports


def run_check(args) -> list[checks.Report]:
    name = args.name
    if name not in CHECK_NAMES:
        raise UsageError(f"unknown check {name!r}; choose from {', '.join(CHECK_NAMES)}")
    tol = args.tol
    kw = {} if tol is None else {"tol": tol}
    ms = args.m
    if name == "weil-relations":
        return checks.weil_relations(ms or range(1, 8), args.dual, **kw)
    if name == "theta-transform":
        return checks.theta_transform(ms or [1, 2, 3], args.truncation, tol)
    if name == "heat":
        return checks.heat(ms or [1, 2, 3, 4, 5], args.points, **kw)
    if name == "eval":
        if args.infile is None:
            raise UsageError("check eval needs --in")
        form = load_form(args.infile)
        value, bound = evaluate(form, args.tau, args.z)
        params = {"in": args.infile, "tau": _json_value(args.tau), "z": _json_value(args.z), "value": _json_value(value)}
        return [checks.Report("eval", params, bound, 1e-10 if tol is None else tol)]
    if name in ("roundtrip", "iso") and args.infile is not None:
        return _form_reports(args, load_form(args.infile))
    k = 3 if args.k is None else args.k
    reports = []
    for m in ms or [1]:
        if name == "casimir":
            reports += checks.casimir(k, m, args.seed, args.count or 20, args.points, **kw)
        elif name == "laplacian":
            reports += checks.laplacian(k, m, args.seed, args.count or 20, args.points, **kw)
        elif name == "cocycle":
            reports += checks.cocycle(k, m, args.seed, args.count or 25, **kw)
        elif name == "roundtrip":
            reports += checks.roundtrip(k, m, args.seed, args.count or 100, args.unsafe_composite)
        elif name == "iso":
            reports += checks.iso(k, m, args.seed, args.count or 100, args.unsafe_composite)
            reports += checks.decomposition_consistency(k, m, args.seed, args.count or 20, args.points)
    return reports


def _emit(reports: Sequence[checks.Report], timing: bool, stream) -> None:
    for rep in sorted(reports, key=lambda r: r.check):
        stream.write(json.dumps(rep.as_dict(timing), sort_keys=True) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        if args.command == "check":
            reports = run_check(args)
            if args.outfile:
                with open(args.outfile, "w", encoding="utf-8") as fh:
                    _emit(reports, args.timing, fh)
            else:
                _emit(reports, args.timing, sys.stdout)
            failed = sum(not r.passed for r in reports)
            print(f"{args.name}: {len(reports) - failed}/{len(reports)} passed", file=sys.stderr)
            return EXIT_FAIL if failed else EXIT_OK
        if args.command == "eval":
            form = load_form(args.infile)
            value, bound = evaluate(form, args.tau, args.z)
            print(json.dumps({"value": _json_value(value), "tail_bound": bound}))
            return EXIT_OK
        if args.command == "canonicalize":
            form = load_form(args.infile)
            if args.outfile:
                save_form(form, args.outfile)
            else:
                sys.stdout.write(dumps_form(form))
            return EXIT_OK
        if args.command == "weil-matrices":
            from .metaplectic import WeilRepContext

            for m in args.m:
                ctx = WeilRepContext(m, args.dual)
                row = {
                    "m": m,
                    "dual": args.dual,
                    "T": [_json_value(r) for r in ctx.T_matrix],
                    "S": [_json_value(r) for r in ctx.S_matrix],
                }
                print(json.dumps(row))
            return EXIT_OK
    except UsageError as exc:
        print(f"skewjacobi: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormSchemaError as exc:
        print(f"skewjacobi: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except FormInvariantError as exc:
        print(f"skewjacobi: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except OSError as exc:
        print(f"skewjacobi: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except ValueError as exc:
        # the form is well formed but outside the domain of the requested map
        print(f"skewjacobi: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
