"""Command-line front end.

Every subcommand prints one document: in JSON an object
``{"meta": {...}, "data": ...}`` (or ``"error"`` instead of ``"data"``).
Exit codes: 0 success, 2 precondition or usage error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mp

from . import __version__
from . import constants as K
from .bounds import (crossover, log_ratio, matsuoka_bound, theorem1_bound,
                     verify_proof_constants)
from .characters import MAX_MODULUS, character, enumerate_characters
from .errors import (PreconditionError, ResourceLimit, StieltjesKitError,
                     UnsupportedCharacter, BoundViolated)
from .lfunc import (application_a_bound, hurwitz_zeta, l_eval, verify_application_a,
                    zeta_laurent_eval)
from .numerics import PrecisionContext, render
from .stieltjes import MAX_N, StieltjesTable, build_table, gamma_chi, gamma_hurwitz
from .zerofree import check_improvement, find_t0, minorant

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 2, 3
FAULTS = ("gamma1",)


@dataclass
class RunConfig:
    precision_digits: int = 50
    output_format: str = "json"
    deterministic: bool = True
    max_q: int = MAX_MODULUS
    max_n: int = MAX_N
    test_hooks: bool = False
    fault: str | None = None

    @property
    def ctx(self) -> PrecisionContext:
        return PrecisionContext(self.precision_digits)


@dataclass
class Outcome:
    data: dict
    rows: list[dict] | None = None
    exit_code: int = EXIT_OK
    columns: list[str] | None = field(default=None)


class UsageError(PreconditionError):
    pass


def parse_range(text: str) -> list[int]:
    """'3' or 'a..b' (inclusive)."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _num(x, cfg: RunConfig):
    if isinstance(x, mpmath.mpc):
        return {"re": render(x.real, cfg.precision_digits), "im": render(x.imag, cfg.precision_digits)}
    if isinstance(x, mpmath.mpf):
        return render(x, cfg.precision_digits)
    return x


def _check_limits(cfg: RunConfig, q: int | None = None, n: int | None = None) -> None:
    if q is not None and q > cfg.max_q:
        raise ResourceLimit(f"q = {q} exceeds the limit {cfg.max_q}")
    if n is not None and n > cfg.max_n:
        raise ResourceLimit(f"n = {n} exceeds the limit {cfg.max_n}")


def _faulty_zeta_table(table: StieltjesTable, cfg: RunConfig) -> StieltjesTable:
    if cfg.fault == "gamma1" and 1 in table:
        with mp.workdps(cfg.precision_digits):
            return table.with_entry(1, table[1] * 1000, note="fault: gamma_1 inflated 1000x")
    return table


# ---------------------------------------------------------------- commands

def cmd_gamma(args, cfg: RunConfig) -> Outcome:
    ns = args.n
    _check_limits(cfg, n=max(ns))
    ctx = cfg.ctx
    if args.kind == "zeta":
        table = build_table("zeta", ns, ctx)
    elif args.kind == "hurwitz":
        table = build_table("hurwitz", ns, ctx, a=Fraction(args.a))
    else:
        if args.q is None:
            raise UsageError("gamma char needs --q")
        _check_limits(cfg, q=args.q)
        chi = character(args.q, args.index)
        table = build_table("character", ns, ctx, chi=chi)
    rows = []
    for n in table.n_values:
        v = table[n]
        rows.append({"n": n, "value_re": _num(v.real, cfg),
                     "value_im": _num(v.imag, cfg),
                     "error_estimate": _num(table.error_estimates[n], cfg)})
    data = {"table": table.describe(), "entries": rows}
    return Outcome(data, rows)


def cmd_chars(args, cfg: RunConfig) -> Outcome:
    _check_limits(cfg, q=args.q)
    rows = [{"index": chi.index, "conductor": chi.conductor,
             "parity": "odd" if chi.parity else "even",
             "primitive": chi.is_primitive, "principal": chi.is_principal,
             "order": chi.order}
            for chi in enumerate_characters(args.q)]
    return Outcome({"q": args.q, "characters": rows}, rows)


def cmd_bound(args, cfg: RunConfig) -> Outcome:
    ctx = cfg.ctx
    if args.crossover:
        found = crossover(args.q, args.n_max, ctx)
        data = {"q": args.q, "n_max": args.n_max, "crossover": found,
                "reported": K.REPORTED_CROSSOVER,
                "agrees_with_reported": found == K.REPORTED_CROSSOVER}
        return Outcome(data)
    if args.n is None:
        raise UsageError("bound needs --n (or --crossover)")
    _check_limits(cfg, n=args.n)
    b = theorem1_bound(args.n, args.q, ctx)
    data = {"n": b.n, "q": b.q, "theta": _num(b.theta, cfg), "c_term": _num(b.c_term, cfg),
            "d_term": _num(b.d_term, cfg), "h_value": _num(b.h_value, cfg),
            "combined": _num(b.combined, cfg)}
    if args.q == 1 and args.n >= K.MATSUOKA_MIN_N:
        data["matsuoka"] = _num(matsuoka_bound(args.n, ctx), cfg)
        data["log_ratio"] = _num(log_ratio(args.n, ctx), cfg)
    return Outcome(data)


def cmd_taylor(args, cfg: RunConfig) -> Outcome:
    _check_limits(cfg, q=args.q)
    ctx = cfg.ctx
    application_a_bound(args.q, ctx)
    chi = character(args.q, args.index)
    if chi.is_principal or not chi.is_primitive:
        raise UnsupportedCharacter(f"character {args.index} mod {args.q} is not primitive")
    try:
        reports = verify_application_a(chi, args.samples, ctx, include_center=True)
        failed = None
    except BoundViolated as exc:
        reports, failed = [exc.report], exc
    rows = [{"s_re": _num(r.s.real, cfg), "s_im": _num(r.s.imag, cfg),
             "measured_remainder": _num(r.measured_remainder, cfg),
             "certified_bound": _num(r.certified_bound, cfg), "pass": r.passed}
            for r in reports]
    data = {"q": args.q, "index": args.index, "samples": rows,
            "all_pass": failed is None and all(r.passed for r in reports)}
    return Outcome(data, rows, EXIT_OK if data["all_pass"] else EXIT_VERIFY)


def _zeta_table(cfg: RunConfig, nmax: int = K.HEAD_TERMS) -> StieltjesTable:
    return _faulty_zeta_table(build_table("zeta", range(nmax + 1), cfg.ctx), cfg)


def _certificate_data(cert, cfg: RunConfig) -> dict:
    return {"t0": _num(cert.t0, cfg), "head": _num(cert.head, cfg), "tail": _num(cert.tail, cfg),
            "margin": _num(cert.margin, cfg), "valid": cert.valid,
            "gamma_precision": cert.gamma_precision.working_digits}


def cmd_zerofree(args, cfg: RunConfig) -> Outcome:
    ctx = cfg.ctx
    table = _zeta_table(cfg)
    if args.at is not None:
        cert = minorant(args.at, table, ctx)
        data = _certificate_data(cert, cfg)
        return Outcome(data, exit_code=EXIT_OK if cert.valid else EXIT_VERIFY)
    report = check_improvement(table, args.tol, ctx)
    data = _certificate_data(report.certificate, cfg)
    data.update(prior_radius=_num(report.prior_radius, cfg), exceeds_prior=True,
                area_ratio=_num(report.area_ratio, cfg))
    return Outcome(data)


def _oracle_checks(cfg: RunConfig, table: StieltjesTable) -> list[dict]:
    ctx = cfg.ctx
    out = []
    with mp.workdps(ctx.internal_digits):
        tol = mpmath.mpf(10) ** (-(ctx.working_digits // 2))
        for s in (mpmath.mpf("1.5"), mpmath.mpc("1.2", "0.3"), mpmath.mpf("0.7")):
            diff = abs(zeta_laurent_eval(s, 40, table, ctx) - hurwitz_zeta(s, 1, ctx))
            out.append({"name": f"laurent_vs_direct(s={mpmath.nstr(s, 4)})",
                        "passed": bool(diff < tol), "worst_margin": tol - diff})
        diff = abs(gamma_hurwitz(0, Fraction(1, 2), ctx) - (mpmath.euler + 2 * mpmath.log(2)))
        out.append({"name": "gamma0(1/2)", "passed": bool(diff < tol), "worst_margin": tol - diff})
        chi4 = character(4, 1)
        diff = abs(gamma_chi(0, chi4, ctx) - mpmath.pi / 4)
        out.append({"name": "gamma0(chi_4)", "passed": bool(diff < tol), "worst_margin": tol - diff})
        diff = abs(l_eval(2, chi4, ctx) - mpmath.catalan)
        out.append({"name": "L(2,chi_4)", "passed": bool(diff < tol), "worst_margin": tol - diff})
    return out


def cmd_verify(args, cfg: RunConfig) -> Outcome:
    ctx = cfg.ctx
    rows = []
    report = verify_proof_constants(K.TAIL_START_N, args.n_max, ctx=ctx)
    for check in report.checks:
        rows.append({"name": check.name, "passed": check.passed,
                     "worst_margin": check.worst_margin, "worst_at": str(check.worst_at),
                     "failures": len(check.failures), "points": check.points})

    table = _zeta_table(cfg, nmax=40)
    n_hi = min(40, max(args.n_max, K.MIN_N))
    worst, worst_at, ok = None, None, True
    with mp.workdps(ctx.internal_digits):
        for n in range(K.MIN_N, n_hi + 1):
            margin = theorem1_bound(n, 1, ctx).combined - abs(table[n]) / mpmath.factorial(n)
            if worst is None or margin < worst:
                worst, worst_at = margin, n
            ok = ok and margin >= 0
    rows.append({"name": f"bound_validity(2..{n_hi})", "passed": ok, "worst_margin": worst,
                 "worst_at": str(worst_at), "failures": 0 if ok else 1, "points": n_hi - 1})

    for row in _oracle_checks(cfg, table):
        rows.append({**row, "worst_at": "", "failures": 0 if row["passed"] else 1, "points": 1})

    try:
        imp = check_improvement(table, "1e-6", ctx)
        rows.append({"name": "zero_free_radius_exceeds_sqrt2", "passed": True,
                     "worst_margin": imp.radius - imp.prior_radius, "worst_at": "",
                     "failures": 0, "points": 1})
    except StieltjesKitError as exc:
        rows.append({"name": "zero_free_radius_exceeds_sqrt2", "passed": False,
                     "worst_margin": None, "worst_at": str(exc), "failures": 1, "points": 1})

    for row in rows:
        row["worst_margin"] = _num(row["worst_margin"], cfg) if row["worst_margin"] is not None else None
    all_pass = all(r["passed"] for r in rows)
    data = {"n_max": args.n_max, "checks": rows, "all_pass": all_pass}
    if cfg.fault:
        data["fault"] = cfg.fault
    return Outcome(data, rows, EXIT_OK if all_pass else EXIT_VERIFY)


# ---------------------------------------------------------------- plumbing

def _default_precision() -> int:
    env = os.environ.get("SK_PRECISION")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return 50


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=None,
                        help="working precision in decimal digits (default 50, or $SK_PRECISION)")
    common.add_argument("--format", choices=("json", "csv", "plain"), default="json")
    common.add_argument("--max-q", type=int, default=MAX_MODULUS)
    common.add_argument("--max-n", type=int, default=MAX_N)
    common.add_argument("--test-hooks", action="store_true", help=argparse.SUPPRESS)
    common.add_argument("--inject-fault", choices=FAULTS, default=None, help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="sk", description="Laurent-Stieltjes constants, explicit bounds and zero-free disks")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gamma", help="Stieltjes constants")
    gsub = g.add_subparsers(dest="kind", required=True)
    for kind in ("zeta", "hurwitz", "char"):
        p = gsub.add_parser(kind, parents=[common])
        p.add_argument("--n", type=parse_range, default=[0], help="index or inclusive range a..b")
        if kind == "hurwitz":
            p.add_argument("--a", default="1", help="rational parameter in (0, 1], e.g. 1/3")
        if kind == "char":
            p.add_argument("--q", type=int, required=True)
            p.add_argument("--index", type=int, default=1)
        p.set_defaults(func=cmd_gamma)

    c = sub.add_parser("chars", help="Dirichlet characters")
    csub = c.add_subparsers(dest="action", required=True)
    p = csub.add_parser("list", parents=[common])
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_chars)

    p = sub.add_parser("bound", parents=[common], help="explicit bound and the prior bound")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--crossover", action="store_true")
    p.add_argument("--n-max", type=int, default=100)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("taylor", parents=[common], help="truncated Taylor certificate")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--index", type=int, default=1)
    p.add_argument("--samples", type=int, default=16)
    p.set_defaults(func=cmd_taylor)

    p = sub.add_parser("zerofree", parents=[common], help="zero-free disk for zeta")
    p.add_argument("--tol", default="1e-6")
    p.add_argument("--at", default=None, help="evaluate the minorant at this radius")
    p.set_defaults(func=cmd_zerofree)

    p = sub.add_parser("verify", parents=[common], help="run the consolidated checks")
    p.add_argument("--n-max", type=int, default=500)
    p.set_defaults(func=cmd_verify)
    return parser


def _config(args) -> RunConfig:
    prec = args.prec if args.prec is not None else _default_precision()
    if prec < 10:
        raise UsageError("--prec must be at least 10")
    if args.inject_fault and not args.test_hooks:
        raise UsageError("--inject-fault requires --test-hooks")
    return RunConfig(precision_digits=prec, output_format=args.format,
                     max_q=args.max_q, max_n=args.max_n,
                     test_hooks=args.test_hooks, fault=args.inject_fault)


def _scalar(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, dict):
        return " ".join(f"{k}={_scalar(x)}" for k, x in v.items())
    return str(v)


def emit(doc: dict, fmt: str, rows: list[dict] | None, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(doc, indent=2) + "\n")
        return
    payload = doc.get("data", doc.get("error", {}))
    if fmt == "csv":
        buf = io.StringIO()
        if not rows:
            rows = [{k: v for k, v in payload.items() if not isinstance(v, (list, dict))}]
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _scalar(v) for k, v in row.items()})
        stream.write(buf.getvalue())
        return
    for key, value in payload.items():
        if isinstance(value, list):
            continue
        stream.write(f"{key}: {_scalar(value)}\n")
    if rows:
        cols = list(rows[0])
        stream.write("\t".join(cols) + "\n")
        for row in rows:
            stream.write("\t".join(_scalar(row[c]) for c in cols) + "\n")


def main(argv=None, stream=None) -> int:
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", "json")
    meta = {"version": __version__, "precision": None}
    try:
        cfg = _config(args)
        meta["precision"] = cfg.precision_digits
        outcome = args.func(args, cfg)
    except StieltjesKitError as exc:
        code = EXIT_USAGE if isinstance(exc, PreconditionError) else EXIT_VERIFY
        error = {"type": type(exc).__name__, "message": str(exc)}
        if hasattr(exc, "hypothesis"):
            error["hypothesis"] = exc.hypothesis
        emit({"meta": meta, "error": error}, fmt, None, stream)
        return code
    except (ValueError, IndexError, ZeroDivisionError) as exc:
        emit({"meta": meta, "error": {"type": "UsageError", "message": str(exc)}}, fmt, None, stream)
        return EXIT_USAGE
    except Exception as exc:  # keep the exit-code contract even on internal failures
        emit({"meta": meta, "error": {"type": "InternalError", "message": repr(exc)}}, fmt, None, stream)
        return EXIT_VERIFY
    emit({"meta": meta, "data": outcome.data}, fmt, outcome.rows, stream)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
