"""Command-line front end.

Exit status is 0 when every requested check passes, 1 when any fails and 2 on
a usage error. Usage errors are detected before any computation starts.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import identities as ident
from .errors import LegsqError, UsageError
from .exact import QuadExt, parse_scalar
from .modular import U_RADIUS, eisenstein_combo_check, pi_check
from .polynomial import PolyQ
from .report import VerifyReport
from .sequences import aux_sequence, inner_coefficients, inner_sum, legendre, u_value
from .table1 import ROW_IDS, eval_at_row, eval_main1_at, get_row, parametrised_rows, w_bridge_check

DEFAULT_ORDER = 40
DEFAULT_DIGITS = 40


@dataclass(frozen=True)
class Check:
    id: str
    run: object  # callable(order, digits) -> VerifyReport
    min_order: int = 1
    min_digits: int = 10
    description: str = ""


def _registry() -> dict[str, Check]:
    checks = [
        Check("main1", lambda n, p: ident.verify_main1(n), description="squared Legendre generating function vs sum u_n w^n"),
        Check("equivalent-pn", lambda n, p: ident.verify_equivalent_pn_form(n), description="P_n(y)^2 form, two assembly paths"),
        Check("satellite", lambda n, p: ident.verify_satellite(n), description="companion identity, all coefficients zero"),
        Check("ode", lambda n, p: ident.verify_ode_annihilation(n), 4, description="third-order operator kills both sides"),
        Check("derivative", lambda n, p: ident.verify_derivative_identity(n), description="v-derivative identity, denominators cleared"),
        Check("bailey", lambda n, p: ident.verify_bailey_wan("bailey", order=n), description="bilinear Legendre sum at (3/5, 4/5)"),
        Check("wan", lambda n, p: ident.verify_bailey_wan("wan", order=n), description="bilinear Legendre sum at (3/5, 4/5)"),
        Check("cooper-forms", lambda n, p: ident.verify_cooper_forms(n), 7, description="u_n series vs two 3F2 forms in h"),
        Check("an-chain-1", lambda n, p: ident.verify_an_chain("first", n), description="A_n chain with Apery, Domb and (3n)! forms"),
        Check("an-chain-2", lambda n, p: ident.verify_an_chain("second", n), description="A_n identity with 1+10v+27v^2"),
        Check("table1", lambda n, p: ident.verify_table1_exact(), description="exact x, z, w relations on the table rows"),
        Check("quartic", lambda n, p: ident.verify_quartic_example(p), min_digits=30, description="quartic roots give the sqrt(11) values"),
    ]
    for row in parametrised_rows():
        checks.append(
            Check(
                f"eisenstein:{row.id}",
                lambda n, p, row=row: eisenstein_combo_check(row.tau, p, label=row.id),
                min_digits=20,
                description=f"sum u_n w(tau)^n vs E_2 combination at tau = {row.tau}",
            )
        )
    return {c.id: c for c in checks}


CHECKS = _registry()


def _scalar(text: str):
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse scalar {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="legsq", description="Verify squared-Legendre generating-function identities.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, order=False):
        if order:
            p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="series order N (default 40)")
        p.add_argument("--digits", type=int, default=DEFAULT_DIGITS, help="decimal digits P (default 40)")
        p.add_argument("--json", action="store_true", help="emit a JSON array of reports")

    p = sub.add_parser("verify", help="run identity checks")
    p.add_argument("ids", nargs="+", help="check ids, or 'all'")
    common(p, order=True)

    p = sub.add_parser("seq", help="print sequence values")
    p.add_argument("family", choices=["u", "legendre", "inner", "A_poly", "apery", "domb", "threefac"])
    p.add_argument("--n", type=int, default=10, help="largest index (default 10)")
    p.add_argument("--method", choices=["sum1", "sum2", "recurrence"], default="recurrence")
    p.add_argument("--x", type=_scalar, default=None, help="evaluate polynomial families at this scalar")

    p = sub.add_parser("modular", help="eta-quotient and Eisenstein checks at a table row")
    p.add_argument("--row", required=True)
    common(p)

    p = sub.add_parser("pi-check", help="sum (a+bn) u_n w^n against 1/(pi sqrt 7)")
    p.add_argument("--a", type=_scalar, required=True)
    p.add_argument("--b", type=_scalar, required=True)
    p.add_argument("--w", type=_scalar, required=True)
    common(p)

    p = sub.add_parser("eval", help="numeric check of the v-parametrised identity")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--row", help="use a table row's tabulated z and w")
    g.add_argument("--v", type=_scalar, help="use an arbitrary parameter v")
    common(p)

    sub.add_parser("list", help="list check ids and table rows")
    return ap


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


def _plan_verify(args) -> list[Check]:
    wanted = sorted(CHECKS) if args.ids == ["all"] else args.ids
    unknown = [i for i in wanted if i not in CHECKS]
    _need(not unknown, f"unknown check id(s): {', '.join(unknown)}; try 'legsq list'")
    plan = [CHECKS[i] for i in sorted(set(wanted))]
    for c in plan:
        _need(args.order >= c.min_order, f"{c.id} needs --order >= {c.min_order}")
        _need(args.digits >= c.min_digits, f"{c.id} needs --digits >= {c.min_digits}")
    return plan


def _row_with_tau(row_id: str):
    row = get_row(row_id)
    _need(row.parametrised, f"row {row_id} has no v, w or tau")
    return row


def _below_radius(w) -> bool:
    if isinstance(w, QuadExt):
        return abs(w) < U_RADIUS
    return abs(Fraction(w)) < U_RADIUS


def emit(reports: list[VerifyReport], as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(dumps_reports(reports) + "\n")
    else:
        for r in reports:
            out.write(r.line() + "\n")


def dumps_reports(reports: list[VerifyReport]) -> str:
    return json.dumps([r.to_json() for r in reports], separators=(",", ":"))


def _seq(args) -> None:
    _need(args.n >= 0, "--n must be >= 0")
    for n in range(args.n + 1):
        if args.family == "u":
            val = u_value(n, args.method)
        elif args.family == "legendre":
            val = legendre(n) if args.x is None else legendre(n)(args.x)
        elif args.family == "inner":
            val = PolyQ(inner_coefficients(n)) if args.x is None else inner_sum(n, args.x)
        else:
            val = aux_sequence(n, args.family, args.x)
        print(f"{n} {val}")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "list":
            for c in CHECKS.values():
                print(f"{c.id:<18} {c.description}")
            print("rows: " + " ".join(ROW_IDS))
            return 0
        if args.command == "seq":
            _seq(args)
            return 0

        if args.command == "verify":
            plan = _plan_verify(args)
            jobs = [lambda c=c: c.run(args.order, args.digits) for c in plan]
        elif args.command == "modular":
            _need(args.digits >= 20, "--digits must be >= 20")
            row = _row_with_tau(args.row)
            jobs = [
                lambda: eisenstein_combo_check(row.tau, args.digits, label=row.id),
                lambda: w_bridge_check(row, args.digits),
            ]
        elif args.command == "pi-check":
            _need(args.digits >= 20, "--digits must be >= 20")
            _need(_below_radius(args.w), "--w must satisfy |w| < 1/27")
            jobs = [lambda: pi_check(args.a, args.b, args.w, args.digits)]
        else:  # eval
            _need(args.digits >= 20, "--digits must be >= 20")
            if args.row is not None:
                row = _row_with_tau(args.row)
                jobs = [lambda: eval_at_row(row, args.digits)]
            else:
                v = args.v
                _need(_below_radius(v / (1 + 4 * v) ** 3), "v gives |w| >= 1/27")
                jobs = [lambda: eval_main1_at(v, args.digits)]
    except UsageError as exc:
        print(f"legsq: error: {exc}", file=sys.stderr)
        return 2

    reports = []
    for job in jobs:
        try:
            reports.append(job())
        except LegsqError as exc:
            print(f"legsq: error: {exc}", file=sys.stderr)
            emit(reports, args.json)
            return 1
    emit(reports, args.json)
    return 0 if all(r.passed for r in reports) else 1


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
