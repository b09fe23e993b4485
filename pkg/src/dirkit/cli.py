"""Command line entry point.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad input or usage,
3 a quadrature error estimate exceeded its tolerance.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import batteries
from .dirichlet import (AllowableTuple, DiscMeasure, boundedness_check, backward_shift_monotonicity,
                        d_measure, multiplication_monotonicity, tuple_form, verify_difference_formula,
                        verify_dilation_bound, verify_local_douglas, verify_one_step_up)
from .greens import green_k, sandwich_bounds, u_local
from .operators import (OperatorModel, classify_order, extract_tuple, verify_analytic_model_inequality,
                        verify_norm_formula)
from .poly import Polynomial
from .quadrature import QuadratureAccuracyError, QuadratureSpec, dirichlet_quadrature
from .reports import CheckRecord, jsonable

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ACCURACY = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- run reports

@dataclass
class RunReport:
    command: list
    seed: int | None
    inputs_digest: str
    records: list = field(default_factory=list)
    accuracy_failures: list = field(default_factory=list)
    elapsed: float | None = None

    @property
    def failures(self) -> list:
        return [r.name for r in self.records if not r.passed]

    @property
    def exit_code(self) -> int:
        if self.accuracy_failures:
            return EXIT_ACCURACY
        return EXIT_FAIL if self.failures else EXIT_OK

    def lines(self) -> list[dict]:
        head = {"type": "run", "command": self.command, "seed": self.seed, "inputs_digest": self.inputs_digest}
        body = [{"type": "check", **r.to_dict()} for r in self.records]
        summary = {"type": "summary", "total": len(self.records),
                   "passed": len(self.records) - len(self.failures), "failed": len(self.failures),
                   "failing": self.failures, "accuracy_failures": self.accuracy_failures,
                   "exit_code": self.exit_code}
        if self.elapsed is not None:
            summary["elapsed_s"] = round(self.elapsed, 3)
        return [head, *body, summary]


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(jsonable(obj), sort_keys=True).encode()).hexdigest()[:16]


def _threads() -> int:
    raw = os.environ.get("DIRKIT_THREADS")
    if raw is None:
        return min(4, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError as exc:
        raise UsageError(f"DIRKIT_THREADS must be an integer, got {raw!r}") from exc
    return max(1, n)


def _run_battery(name: str, seed: int, cfg: batteries.SuiteConfig):
    rng = np.random.default_rng([seed, zlib.crc32(name.encode())])
    try:
        return name, batteries.lookup(name)(rng, cfg), None
    except QuadratureAccuracyError as exc:
        return name, [], f"{name}: {exc}"


def run_suite(name: str, seed: int = 0, config: batteries.SuiteConfig | None = None,
              command: list | None = None, timing: bool = False) -> RunReport:
    """Run a verification suite (``green``, ``douglas``, ``identities``, ``operators`` or ``all``)."""
    cfg = config or batteries.SuiteConfig()
    if name != "all" and name not in batteries.SUITES:
        raise UsageError(f"unknown suite {name!r}")
    names = batteries.battery_names(name, cfg)
    t0 = time.perf_counter()
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(lambda n: _run_battery(n, seed, cfg), names))
    report = RunReport(command or ["verify", name], seed, _digest({"suite": name, "config": cfg.to_dict()}))
    for _, recs, err in sorted(results, key=lambda r: r[0]):
        report.records.extend(recs)
        if err:
            report.accuracy_failures.append(err)
    if timing:
        report.elapsed = time.perf_counter() - t0
    return report


# ---------------------------------------------------------------- parsing helpers

def parse_complex(text: str) -> complex:
    """``"RE,IM"`` or a Python complex literal such as ``0.3+0.4j``."""
    text = text.strip()
    try:
        if "," in text:
            re_, im_ = text.split(",")
            return complex(float(re_), float(im_))
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from exc


def parse_coeffs(text: str) -> Polynomial:
    """JSON ``[[re, im], ...]`` or a comma list of complex literals (``1,0,2+1j``)."""
    text = text.strip()
    try:
        if text.startswith("["):
            data = json.loads(text)
            return Polynomial([complex(*c) if isinstance(c, list) else complex(c) for c in data])
        return Polynomial([complex(t.strip()) for t in text.split(",")])
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse coefficients {text!r}") from exc


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _poly(data) -> Polynomial:
    return Polynomial.from_json(data)


def _zeta(data) -> complex:
    return complex(*data) if isinstance(data, list) else complex(data)


def _measure_or_tuple(data: dict):
    if "tuple" in data:
        return AllowableTuple.from_json(data["tuple"])
    if "measure" in data:
        return DiscMeasure.from_json(data["measure"])
    raise UsageError("input needs a 'measure' or a 'tuple'")


# ---------------------------------------------------------------- commands

def cmd_green_eval(args) -> tuple[object, int]:
    k, z, zeta = args.k, args.z, args.zeta
    out = {"k": k, "z": [z.real, z.imag], "zeta": [zeta.real, zeta.imag],
           "gk": green_k(k, z, zeta), "u_local": u_local(k, zeta, z)}
    if k >= 2:
        lo, hi = sandwich_bounds(k, z, zeta)
        out["sandwich_lower"], out["sandwich_upper"] = float(lo), float(hi)
    else:
        out["sandwich_lower"] = out["sandwich_upper"] = None
    return out, EXIT_OK


def cmd_quad_dirichlet(args) -> tuple[object, int]:
    spec = QuadratureSpec(args.radial, args.angular, args.annuli, args.grade)
    try:
        res = dirichlet_quadrature(args.f, args.k, args.zeta, spec, tol=args.tol)
    except QuadratureAccuracyError as exc:
        return {"error": str(exc), "value": jsonable(exc.value), "error_estimate": exc.estimate}, EXIT_ACCURACY
    return {"value": res.value.real, "error_estimate": res.error_estimate}, EXIT_OK


def cmd_dirichlet_eval(args) -> tuple[object, int]:
    data = _load_json(args.input)
    f = _poly(data["f"])
    g = _poly(data["g"]) if "g" in data else f
    target = _measure_or_tuple(data)
    if isinstance(target, AllowableTuple):
        value = tuple_form(f, g, target)
        return {"kind": "tuple", "value": jsonable(value)}, EXIT_OK
    k = int(data["k"])
    return {"kind": "measure", "k": k, "value": jsonable(d_measure(f, g, k, target))}, EXIT_OK


def cmd_dirichlet_douglas(args) -> tuple[object, int]:
    data = _load_json(args.input) if args.input else {}
    f = _poly(data["f"]) if "f" in data else args.f
    k = int(data.get("k", args.k or 0))
    zeta = _zeta(data["zeta"]) if "zeta" in data else args.zeta
    if f is None or zeta is None or k < 1:
        raise UsageError("douglas needs f, k >= 1 and zeta")
    spec = QuadratureSpec(args.radial, args.angular, args.annuli, args.grade)
    rec = verify_local_douglas(f, k, zeta, spec, tol=args.tol)
    return [rec], None


def cmd_dirichlet_identities(args) -> tuple[object, int]:
    data = _load_json(args.input)
    f = _poly(data["f"])
    k = int(data["k"])
    mu = _measure_or_tuple(data)
    if isinstance(mu, AllowableTuple):
        raise UsageError("identities act on a single measure")
    r = float(data.get("r", 0.5))
    recs = [verify_difference_formula(f, k, mu), verify_one_step_up(f, k, mu),
            backward_shift_monotonicity(f, k, mu), multiplication_monotonicity(f, k, mu),
            verify_dilation_bound(f, k, mu, r)]
    if k >= 2:
        recs.append(boundedness_check(f, k, mu))
    return recs, None


def _model(args) -> OperatorModel:
    return OperatorModel.from_json(_load_json(args.input))


def cmd_op_classify(args):
    rep = classify_order(_model(args), args.m_max, args.deg, args.tol)
    return rep.to_dict(), EXIT_OK


def cmd_op_extract(args):
    ext = extract_tuple(_model(args), args.m, args.deg)
    return ext.to_dict(), EXIT_OK if ext.ok else EXIT_FAIL


def cmd_op_norm(args):
    rng = np.random.default_rng([args.seed, zlib.crc32(b"verify-norm-formula")])
    return verify_norm_formula(_model(args), args.m, args.deg, rng=rng, tol=args.tol), None


def cmd_op_analytic(args):
    rep = verify_analytic_model_inequality(_model(args), args.m, args.deg, args.tol)
    return rep.to_dict(), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify(args):
    cfg = batteries.SuiteConfig()
    for item in args.tol_override or []:
        name, _, value = item.partition("=")
        try:
            cfg.override(name, float(value))
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad --tol-override {item!r}: {exc}") from exc
    if args.k:
        cfg.douglas_ks = tuple(args.k)
        cfg.orders_only = True
    if args.samples is not None:
        cfg.douglas_samples = args.samples
    cfg.exact_only = bool(args.exact)
    return run_suite(args.suite, args.seed, cfg, command=["verify", args.suite], timing=args.timing)


# ---------------------------------------------------------------- output

def _records_to_csv(records: list[CheckRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "lhs", "rhs", "abs_err", "rel_err", "tolerance", "verdict"])
    for r in records:
        d = r.to_dict()
        w.writerow([d["name"], json.dumps(d["lhs"]), json.dumps(d["rhs"]), d["abs_err"], d["rel_err"],
                    d["tolerance"], d["verdict"]])
    return buf.getvalue()


def _render(result, fmt: str, command: list, seed) -> tuple[str, int]:
    if isinstance(result, RunReport):
        if fmt == "csv":
            return _records_to_csv(result.records), result.exit_code
        return "".join(json.dumps(line, sort_keys=True) + "\n" for line in result.lines()), result.exit_code
    payload, code = result
    if isinstance(payload, list):  # check records
        report = RunReport(command, seed, _digest(command), payload)
        return _render(report, fmt, command, seed)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        flat = jsonable(payload)
        w.writerow(list(flat))
        w.writerow([json.dumps(v) for v in flat.values()])
        return buf.getvalue(), code
    return json.dumps(jsonable(payload), sort_keys=True) + "\n", code


# ---------------------------------------------------------------- parser

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="global seed for randomised checks")
    p.add_argument("--tol-override", action="append", metavar="NAME=VALUE",
                   help="replace a named tolerance (repeatable)")
    p.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return p


def _quad_flags(p):
    p.add_argument("--radial", type=int, default=48)
    p.add_argument("--angular", type=int, default=256)
    p.add_argument("--annuli", type=int, default=8)
    p.add_argument("--grade", type=float, default=3.0)
    p.add_argument("--tol", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="dirkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="group", required=True)

    green = sub.add_parser("green", help="Green kernel evaluation").add_subparsers(dest="action", required=True)
    p = green.add_parser("eval", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--z", type=parse_complex, required=True, metavar="RE,IM")
    p.add_argument("--zeta", type=parse_complex, required=True, metavar="RE,IM")
    p.set_defaults(func=cmd_green_eval)

    quad = sub.add_parser("quad", help="disc quadrature").add_subparsers(dest="action", required=True)
    p = quad.add_parser("dirichlet", parents=[common])
    p.add_argument("--f", type=parse_coeffs, required=True, metavar="COEFFS")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--zeta", type=parse_complex, required=True, metavar="RE,IM")
    _quad_flags(p)
    p.set_defaults(func=cmd_quad_dirichlet)

    dsub = sub.add_parser("dirichlet", help="closed-form Dirichlet forms").add_subparsers(dest="action", required=True)
    p = dsub.add_parser("eval", parents=[common])
    p.add_argument("--in", dest="input", required=True, metavar="FILE.json")
    p.set_defaults(func=cmd_dirichlet_eval)
    p = dsub.add_parser("douglas", parents=[common])
    p.add_argument("--in", dest="input", metavar="FILE.json")
    p.add_argument("--f", type=parse_coeffs, metavar="COEFFS")
    p.add_argument("--k", type=int)
    p.add_argument("--zeta", type=parse_complex, metavar="RE,IM")
    _quad_flags(p)
    p.set_defaults(func=cmd_dirichlet_douglas)
    p = dsub.add_parser("identities", parents=[common])
    p.add_argument("--in", dest="input", required=True, metavar="FILE.json")
    p.set_defaults(func=cmd_dirichlet_identities)

    osub = sub.add_parser("op", help="operator models").add_subparsers(dest="action", required=True)
    p = osub.add_parser("classify", parents=[common])
    p.add_argument("--in", dest="input", required=True, metavar="FILE.json")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_op_classify)
    for name, func, tol in (("extract", cmd_op_extract, 1e-10),
                            ("verify-norm-formula", cmd_op_norm, 1e-8),
                            ("analytic-inequality", cmd_op_analytic, 1e-10)):
        p = osub.add_parser(name, parents=[common])
        p.add_argument("--in", dest="input", required=True, metavar="FILE.json")
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--deg", type=int, required=True)
        p.add_argument("--tol", type=float, default=tol)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=("green", "douglas", "identities", "operators", "all"))
    p.add_argument("--k", type=int, action="append", help="douglas suite: only the random-polynomial batteries of these orders")
    p.add_argument("--samples", type=int, help="random samples per order in the douglas suite")
    p.add_argument("--exact", action="store_true", help="identities: only the exact-arithmetic checks")
    p.add_argument("--timing", action="store_true", help="add wall-clock time to the summary")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.func is not cmd_verify and args.tol_override:
            raise UsageError("--tol-override applies to 'verify' only")
        result = args.func(args)
        text, code = _render(result, args.format, argv, args.seed)
    except (UsageError, KeyError, ValueError, TypeError) as exc:
        print(f"dirkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
