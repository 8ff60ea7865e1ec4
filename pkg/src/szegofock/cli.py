"""Command-line surface: evaluation, sweeps, verification, table emission.

Exit codes: 0 success, 1 computation error (error name on stderr),
2 usage error (grammar on stderr), 3 verification suite with failures.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass

import numpy as np

from .boundary import BoundaryPoint
from .errors import SzegofockError
from .numerics import QuadConfig
from .profile import (
    bergman_gaussian_closed,
    bergman_profile,
    duality_finiteness_criterion,
    inner_integral,
    laplace_asymptotic,
    sandwich_bounds_check,
    szego_gaussian_closed,
    szego_profile,
)
from .radial import bergman_radial_series, szego_radial_closed, szego_radial_via_laplace
from .verify import SUITE_NAMES, run_suite
from .weights import (
    WeightFamily,
    inverse_derivative,
    parse_weight,
    young_conjugate_closed,
    young_conjugate_numeric,
)

GRAMMAR = """subcommands:
  bergman --weight <spec> --tau <f> --z <re,im> --w <re,im> [--method series|quadrature|closed] [--format json|csv]
  szego --weight <spec> --zt <re,im,t> --ws <re,im,s> [--method closed|laplace|triple] [--format ...]
  conjugate --weight <spec> --eta <f> [--method closed|numeric]
  mu --weight <spec> --eta <f>
  inner-integral --weight <spec> --tau <f> --eta <f>
  bounds --weight <spec> --tau <f> --lambda <f> --eta-grid <min:max:count>
  asymptotics --weight <spec> --eta <f> --tau-grid <min:max:count>
  duality --tau <f> --tau0 <f> --tau1 <f>
  verify --suite normalization|reproducing|crosscheck|bounds|asymptotics|all [--report <path>]
weights: radial:alpha=<float> | profile:alpha=<float> | gaussian
shared flags: --abs-tol <f> --rel-tol <f> --max-subdiv <n> --decay-threshold <f>
"""


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class OutputRecord:
    """One result row; round-trips losslessly through json and csv."""

    command: str
    params: dict
    value_re: float
    value_im: float
    abs_err: float
    method: str

    def as_dict(self):
        return {
            "command": self.command,
            "params": {k: str(v) for k, v in self.params.items()},
            "value_re": self.value_re,
            "value_im": self.value_im,
            "abs_err": self.abs_err,
            "method": self.method,
        }


def _parse_complex(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("expected re,im pair, got %r" % text)
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise UsageError("expected re,im pair, got %r" % text)


def _parse_boundary(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError("expected re,im,t triple, got %r" % text)
    try:
        return BoundaryPoint(complex(float(parts[0]), float(parts[1])), float(parts[2]))
    except ValueError:
        raise UsageError("expected re,im,t triple, got %r" % text)


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("expected min:max:count grid, got %r" % text)
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError("expected min:max:count grid, got %r" % text)
    if count < 2 or hi <= lo:
        raise UsageError("grid needs max > min and count >= 2")
    return np.linspace(lo, hi, count)


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # values like -4:4:17 or -1,0 are data, not options
        self._negative_number_matcher = re.compile(r"^-[\d.].*$")

    def error(self, message):
        raise UsageError(message)


def _add_shared(p):
    p.add_argument("--abs-tol", type=float, default=1e-10)
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--max-subdiv", type=int, default=2000)
    p.add_argument("--decay-threshold", type=float, default=1e-16)
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser():
    top = _Parser(prog="szegofock", add_help=True)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bergman", add_help=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--method", choices=("series", "quadrature", "closed"))
    _add_shared(p)

    p = sub.add_parser("szego", add_help=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--zt", required=True)
    p.add_argument("--ws", required=True)
    p.add_argument("--method", choices=("closed", "laplace", "triple"))
    _add_shared(p)

    p = sub.add_parser("conjugate", add_help=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--method", choices=("closed", "numeric"), default="closed")
    _add_shared(p)

    p = sub.add_parser("mu", add_help=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--eta", type=float, required=True)
    _add_shared(p)

    p = sub.add_parser("inner-integral", add_help=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--eta", type=float, required=True)
    _add_shared(p)

    p = sub.add_parser("bounds", add_help=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--eta-grid", required=True)
    _add_shared(p)

    p = sub.add_parser("asymptotics", add_help=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--tau-grid", required=True)
    _add_shared(p)

    p = sub.add_parser("duality", add_help=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--tau0", type=float, required=True)
    p.add_argument("--tau1", type=float, required=True)
    _add_shared(p)

    p = sub.add_parser("verify", add_help=True)
    p.add_argument("--suite", choices=SUITE_NAMES, required=True)
    p.add_argument("--report")
    _add_shared(p)

    return top


def _config(args) -> QuadConfig:
    return QuadConfig(abs_tol=args.abs_tol, rel_tol=args.rel_tol,
                      max_subdivisions=args.max_subdiv,
                      truncation_decay_threshold=args.decay_threshold)


def _record(command, params, value, abs_err, method):
    value = complex(value)
    return OutputRecord(command, params, value.real, value.imag,
                        float(abs_err), method)


def _cmd_bergman(args, cfg):
    spec = parse_weight(args.weight)
    z = _parse_complex(args.z)
    w = _parse_complex(args.w)
    method = args.method
    if method is None:
        method = "series" if spec.family is WeightFamily.RADIAL_POWER else "quadrature"
    params = {"weight": args.weight, "tau": args.tau, "z": args.z, "w": args.w}
    if method == "series":
        if spec.family is not WeightFamily.RADIAL_POWER:
            raise UsageError("method series requires a radial weight")
        res = bergman_radial_series(spec.alpha, args.tau, z, w, cfg)
        return [_record("bergman", params, res.value, res.abs_err_estimate, res.method)]
    if method == "quadrature":
        if not spec.is_profile:
            raise UsageError("method quadrature requires a profile weight")
        res = bergman_profile(spec, args.tau, z, w, cfg)
        return [_record("bergman", params, res.value, res.abs_err_estimate, res.method)]
    if spec.family is not WeightFamily.GAUSSIAN_PROFILE:
        raise UsageError("method closed is valid only for the gaussian weight")
    value = bergman_gaussian_closed(args.tau, z, w)
    return [_record("bergman", params, value, 1e-15 * abs(value), "closed")]


def _cmd_szego(args, cfg):
    spec = parse_weight(args.weight)
    p1 = _parse_boundary(args.zt)
    p2 = _parse_boundary(args.ws)
    method = args.method
    if method is None:
        method = "triple" if spec.family is WeightFamily.PROFILE_POWER else "closed"
    params = {"weight": args.weight, "zt": args.zt, "ws": args.ws}
    if method == "closed":
        if spec.family is WeightFamily.RADIAL_POWER:
            res = szego_radial_closed(spec.alpha, p1, p2)
            return [_record("szego", params, res.value, res.abs_err_estimate, res.method)]
        if spec.family is WeightFamily.GAUSSIAN_PROFILE:
            value = szego_gaussian_closed(p1, p2)
            return [_record("szego", params, value, 1e-15 * abs(value), "closed")]
        raise UsageError("no closed form for profile power weights")
    if method == "laplace":
        if spec.family is not WeightFamily.RADIAL_POWER:
            raise UsageError("method laplace requires a radial weight")
        res = szego_radial_via_laplace(spec.alpha, p1, p2, cfg)
        return [_record("szego", params, res.value, res.abs_err_estimate, res.method)]
    if not spec.is_profile:
        raise UsageError("method triple requires a profile weight")
    res = szego_profile(spec, p1, p2, cfg)
    return [_record("szego", params, res.value, res.abs_err_estimate, res.method)]


def _cmd_conjugate(args, cfg):
    spec = parse_weight(args.weight)
    params = {"weight": args.weight, "eta": args.eta}
    if args.method == "closed":
        value = young_conjugate_closed(spec, args.eta)
        return [_record("conjugate", params, value, 0.0, "closed")]
    tol = max(cfg.abs_tol, 1e-12)
    value = young_conjugate_numeric(spec, args.eta, tol)
    return [_record("conjugate", params, value, tol, "numeric")]


def _cmd_mu(args, cfg):
    spec = parse_weight(args.weight)
    value = inverse_derivative(spec, args.eta)
    return [_record("mu", {"weight": args.weight, "eta": args.eta}, value, 0.0, "closed")]


def _cmd_inner(args, cfg):
    spec = parse_weight(args.weight)
    res = inner_integral(spec, args.tau, args.eta, cfg)
    return [_record("inner-integral",
                    {"weight": args.weight, "tau": args.tau, "eta": args.eta},
                    res.value, res.abs_err_estimate, res.method)]


def _cmd_bounds(args, cfg):
    spec = parse_weight(args.weight)
    grid = _parse_grid(args.eta_grid)
    rep = sandwich_bounds_check(spec, args.tau, args.lam, grid, cfg)
    records = []
    for i, eta in enumerate(rep.eta_grid):
        params = {"weight": args.weight, "tau": args.tau, "lambda": args.lam,
                  "eta": eta, "upper_bounded": rep.upper_bounded,
                  "lower_bounded": rep.lower_bounded}
        records.append(_record("bounds", params,
                               complex(rep.upper_log_gap[i], rep.lower_log_gap[i]),
                               0.0, "bounds-sweep"))
    return records


def _cmd_asymptotics(args, cfg):
    spec = parse_weight(args.weight)
    grid = _parse_grid(args.tau_grid)
    rep = laplace_asymptotic(spec, args.eta, grid, cfg)
    records = []
    for i, tau in enumerate(rep.tau_grid):
        params = {"weight": args.weight, "eta": args.eta, "tau": tau,
                  "converged": rep.converged,
                  "printed_prefactor_ratio": rep.printed_prefactor_ratios[i]}
        records.append(_record("asymptotics", params, rep.ratios[i], 0.0,
                               "laplace-asymptotic"))
    return records


def _cmd_duality(args, cfg):
    ok = duality_finiteness_criterion(args.tau, args.tau0, args.tau1)
    params = {"tau": args.tau, "tau0": args.tau0, "tau1": args.tau1,
              "finite": ok}
    return [_record("duality", params, 1.0 if ok else 0.0, 0.0, "quadratic-form")]


def _cmd_verify(args, cfg):
    report = run_suite(args.suite, cfg)
    records = []
    for c in report.cases:
        params = {"suite": report.suite, "expected_re": c.expected.real,
                  "expected_im": c.expected.imag, "tolerance": c.tolerance,
                  "passed": c.passed, "case": c.name}
        records.append(_record("verify", params, c.actual,
                               abs(c.expected - c.actual), "verify-case"))
    return records, report


_DISPATCH = {
    "bergman": _cmd_bergman,
    "szego": _cmd_szego,
    "conjugate": _cmd_conjugate,
    "mu": _cmd_mu,
    "inner-integral": _cmd_inner,
    "bounds": _cmd_bounds,
    "asymptotics": _cmd_asymptotics,
    "duality": _cmd_duality,
}


def _emit(records, fmt, stream):
    if fmt == "json":
        json.dump([r.as_dict() for r in records], stream, indent=2)
        stream.write("\n")
        return
    keys = sorted({k for r in records for k in r.params})
    writer = csv.writer(stream)
    writer.writerow(["command", *keys, "value_re", "value_im", "abs_err", "method"])
    for r in records:
        writer.writerow([r.command, *(str(r.params.get(k, "")) for k in keys),
                         repr(r.value_re), repr(r.value_im), repr(r.abs_err),
                         r.method])


def run(argv, stdout=None, stderr=None) -> int:
    """Parse argv, execute, emit records; returns the process exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # --help and friends
            return int(exc.code or 0)
        cfg = _config(args)
        if args.command == "verify":
            records, report = _cmd_verify(args, cfg)
            _emit(records, args.format, stdout)
            if args.report:
                with open(args.report, "w", encoding="utf-8") as fh:
                    buf = io.StringIO()
                    _emit(records, args.format, buf)
                    fh.write(buf.getvalue())
                    for note in report.notes:
                        fh.write("# %s\n" % note)
            for note in report.notes:
                print("# %s" % note, file=stderr)
            return 0 if report.all_passed else 3
        records = _DISPATCH[args.command](args, cfg)
        _emit(records, args.format, stdout)
        return 0
    except (UsageError, ValueError) as exc:
        print("usage error: %s" % exc, file=stderr)
        print(GRAMMAR, file=stderr)
        return 2
    except SzegofockError as exc:
        print("%s: %s" % (type(exc).__name__, exc), file=stderr)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
