"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 invalid input file or flag values,
3 internal invariant violation (for instance the two contact routes
disagreeing).  Reports go to stdout as JSON, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import arithmetic, cfk, cone, contact, hkm, invariants
from .errors import DecisionMismatch, HFConeError, ValidationError
from .io import parse_complex

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _frac(f: Fraction) -> dict:
    return {"num": f.numerator, "den": f.denominator}


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _load(args) -> cfk.KnotComplex:
    c = parse_complex(args.file)
    if getattr(args, "mirror", False):
        c = cfk.mirror(c)
    return c


def _coeffs(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    try:
        c = parse_complex(args.file)
    except ValidationError as e:
        _emit({"valid": False, "diagnostics": e.diagnostics})
        for d in e.diagnostics:
            print(d, file=sys.stderr)
        return EXIT_INPUT
    _emit({"valid": True, "name": c.name, "generators": len(c), "arrows": len(c.arrows),
           "involution": c.involution is not None})
    return EXIT_OK


def cmd_invariants(args) -> int:
    _emit(invariants.invariant_report(_load(args)).to_dict())
    return EXIT_OK


def cmd_cone(args) -> int:
    c = _load(args)
    slope = cone.SurgerySlope(args.p, args.q)
    X = cone.build_cone(c, slope, args.window)
    dims = [{"residue": r, "dim": X.block_homology(r).dim} for r in X.residues()]
    _emit({
        "p": slope.p,
        "q": slope.q,
        "window": X.window,
        "total_dim": sum(d["dim"] for d in dims),
        "residues": dims,
    })
    return EXIT_OK


def cmd_contact(args) -> int:
    L = contact.LegendrianData(args.tb, args.rot, _load(args))
    c = contact.ContactCoefficient(args.x, args.y)
    report, _, _ = contact.contact_report(L, c)
    _emit(report)
    return EXIT_OK


def cmd_dgs(args) -> int:
    plan = arithmetic.dgs_plan(contact.LegendrianData(args.tb, args.rot), contact.ContactCoefficient(args.x, args.y))
    _emit(plan.to_dict())
    return EXIT_OK


def cmd_dinv(args) -> int:
    L = arithmetic.LensSpace(args.q, args.r)
    _emit([_frac(d) for d in arithmetic.lens_d_invariants(L)])
    return EXIT_OK


def cmd_hkm(args) -> int:
    _emit(hkm.verify_hkm_strong(args.coeffs).to_dict())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hfcone", description="Surgery mapping cone and contact invariant calculator.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a knot complex file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", help="tau, nu, epsilon and width")
    p.add_argument("file")
    p.add_argument("--mirror", action="store_true")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("cone", help="homology of the p/q surgery mapping cone")
    p.add_argument("file")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--mirror", action="store_true")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("contact", help="contact invariant of contact x/y surgery")
    p.add_argument("file")
    for flag in ("--tb", "--rot", "--x"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--y", type=int, default=1)
    p.add_argument("--mirror", action="store_true")
    p.set_defaults(func=cmd_contact)

    p = sub.add_parser("dgs", help="stabilization plan for contact x/y surgery")
    for flag in ("--tb", "--rot", "--x"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--y", type=int, default=1)
    p.set_defaults(func=cmd_dgs)

    p = sub.add_parser("dinv", help="d-invariants of L(q, r)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_dinv)

    p = sub.add_parser("hkm", help="certify the HKM-strong property")
    p.add_argument("--coeffs", type=_coeffs, required=True)
    p.set_defaults(func=cmd_hkm)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except _UsageError as e:
        print(f"hfcone: {e}", file=sys.stderr)
        ap.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except DecisionMismatch as e:
        print(f"hfcone: internal disagreement: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except HFConeError as e:
        print(f"hfcone: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as e:  # pragma: no cover - bug signal
        print(f"hfcone: internal assertion failed: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
