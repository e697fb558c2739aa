"""Benchmark command line: evaluate, sweep, and compare quadrature methods.

Subcommands
-----------
eval
    One integral, one method; prints a JSON object with the value and
    solver diagnostics.
sweep-w
    One method list over a comma-separated w list; CSV output.
sweep-n
    One method list over a comma-separated n list; CSV output.
compare
    Levin vs the composite baseline (where applicable) vs the oracle at a
    single configuration; CSV output with errors against the reference.

Reference values for error columns come from the brute-force oracle when
|w| g(a) is within its cap and from the highest-order Levin result
(n = 32, s = 2) above it; the choice is reported as ``ref_kind``.

Exit codes: 0 success, 2 bad arguments, 3 capability refusal, 4 accuracy
failure, 5 I/O failure.  A plain-text ``key=value`` config file can seed
any long option; explicit flags override it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .baselines import ORACLE_PHASE_CAP, reference_oracle
from .errors import AccuracyError, CapabilityError, ParameterError
from .problem import (
    Amplitude,
    Oscillator,
    ProblemSpec,
    SingKind,
    build_problem,
    builtin_problem,
    delta_alpha,
)
from .quadrature import Method, compute

__all__ = ["RunRecord", "write_csv", "run_command", "main", "CSV_HEADER"]

CSV_HEADER = "problem,method,kind,alpha,s,n,w,value_re,value_im,abs_err,rel_err,scaled_err,time_ns"

_REF_N = 32
_REF_S = 2


@dataclass(frozen=True)
class RunRecord:
    """One benchmark measurement, matching the CSV columns."""

    problem: str
    method: str
    kind: str
    alpha: float
    s: int
    n: int
    w: float
    value_re: float
    value_im: float
    abs_err: float
    rel_err: float
    scaled_err: float
    time_ns: int


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_csv(records, sink) -> None:
    """Write records as CSV in input order, streaming row by row.

    Floats are rendered in shortest round-trip decimal form.
    """
    sink.write(CSV_HEADER + "\n")
    for r in records:
        row = ",".join(
            _fmt(v)
            for v in (
                r.problem,
                r.method,
                r.kind,
                r.alpha,
                r.s,
                r.n,
                r.w,
                r.value_re,
                r.value_im,
                r.abs_err,
                r.rel_err,
                r.scaled_err,
                r.time_ns,
            )
        )
        sink.write(row + "\n")


def parse_csv(text: str) -> list:
    """Inverse of write_csv, for round-trip checks."""
    lines = [ln for ln in text.splitlines() if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ParameterError("missing or unexpected CSV header")
    out = []
    for ln in lines[1:]:
        p = ln.split(",")
        out.append(
            RunRecord(
                problem=p[0],
                method=p[1],
                kind=p[2],
                alpha=float(p[3]),
                s=int(p[4]),
                n=int(p[5]),
                w=float(p[6]),
                value_re=float(p[7]),
                value_im=float(p[8]),
                abs_err=float(p[9]),
                rel_err=float(p[10]),
                scaled_err=float(p[11]),
                time_ns=int(p[12]),
            )
        )
    return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    return str(obj)


def _resolve_method(name: str, s: int) -> Method:
    key = name.strip().lower()
    if key == "levin":
        return Method.LEVIN_PHYSICAL if s == 0 else Method.LEVIN_FREQ
    table = {
        "levin-physical": Method.LEVIN_PHYSICAL,
        "levin-freq": Method.LEVIN_FREQ,
        "filon": Method.FILON,
        "cmfp": Method.CMFP,
        "oracle": Method.ORACLE,
    }
    if key not in table:
        raise ParameterError(
            f"unknown method {name!r}; choose from levin, levin-physical, "
            "levin-freq, filon, cmfp, oracle"
        )
    return table[key]


def _parse_complex_list(text: str) -> list:
    try:
        return [complex(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ParameterError(f"bad coefficient list {text!r}: {exc}") from exc


def _parse_float_list(text: str) -> list:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ParameterError(f"bad number list {text!r}: {exc}") from exc


def _parse_int_list(text: str) -> list:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ParameterError(f"bad integer list {text!r}: {exc}") from exc


def _build_spec(args, w: float):
    if args.problem:
        return builtin_problem(args.problem, args.alpha, w), args.problem
    if args.f_poly and args.g_poly:
        amp = Amplitude.from_poly(_parse_complex_list(args.f_poly))
        osc = Oscillator.from_poly([float(c.real) for c in _parse_complex_list(args.g_poly)])
        spec = build_problem(
            amp,
            osc,
            a=args.a,
            alpha=args.alpha,
            kind=SingKind(args.kind),
            w=w,
        )
        return spec, "custom"
    raise ParameterError("specify --problem ID or both --f-poly and --g-poly")


class _RefCache:
    # Per-invocation reference memo; safe under concurrent sweeps.
    def __init__(self):
        self._lock = threading.Lock()
        self._values = {}

    def get(self, args, w: float):
        with self._lock:
            if w in self._values:
                return self._values[w]
        spec, _ = _build_spec(args, w)
        if abs(spec.w) * spec.g_end() <= ORACLE_PHASE_CAP:
            entry = (reference_oracle(spec), "oracle")
        else:
            res = compute(spec, Method.LEVIN_FREQ, _REF_N, _REF_S)
            entry = (res.value, f"levin-n{_REF_N}-s{_REF_S}")
        with self._lock:
            self._values[w] = entry
        return entry


def _run_one(args, label: str, method_name: str, n: int, s: int, w: float, ref) -> RunRecord:
    spec, _ = _build_spec(args, w)
    method = _resolve_method(method_name, s)
    t0 = time.perf_counter_ns()
    result = compute(spec, method, n, s)
    elapsed = max(1, time.perf_counter_ns() - t0)
    ref_value, _ = ref
    abs_err = abs(result.value - ref_value)
    rel_err = abs_err / abs(ref_value) if ref_value != 0 else abs_err
    order = s + 1.0 + min(1.0 + args.alpha, 1.0)
    scaled = abs_err * abs(w) ** order / delta_alpha(args.alpha, abs(w))
    return RunRecord(
        problem=label,
        method=result.method.value,
        kind=spec.kind.value,
        alpha=args.alpha,
        s=result.s,
        n=result.n,
        w=w,
        value_re=result.value.real,
        value_im=result.value.imag,
        abs_err=abs_err,
        rel_err=rel_err,
        scaled_err=scaled,
        time_ns=elapsed,
    )


def _jobs(args) -> int:
    if args.jobs is not None:
        jobs = args.jobs
    else:
        raw = os.environ.get("OSCQUAD_JOBS", "").strip()
        jobs = int(raw) if raw else 1
    if jobs < 1:
        raise ParameterError("jobs must be at least 1")
    return jobs


def _emit_records(args, tasks, runner, out) -> None:
    jobs = _jobs(args)
    if jobs == 1 or len(tasks) <= 1:
        records = map(runner, tasks)
        _write_sink(args, records, out)
        return
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        records = pool.map(runner, tasks)
        _write_sink(args, records, out)


def _write_sink(args, records, out) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            write_csv(records, fh)
    else:
        write_csv(records, out)


def _cmd_eval(args, out, err) -> int:
    spec, _ = _build_spec(args, args.w)
    method = _resolve_method(args.method, args.s)
    result = compute(spec, method, args.n, args.s)
    diagnostics = _jsonable(result.diagnostics)
    diagnostics["method"] = result.method.value
    diagnostics["n"] = result.n
    diagnostics["s"] = result.s
    payload = {
        "value_re": result.value.real,
        "value_im": result.value.imag,
        "diagnostics": diagnostics,
    }
    out.write(json.dumps(payload, sort_keys=True) + "\n")
    return 0


def _cmd_sweep_w(args, out, err) -> int:
    ws = _parse_float_list(args.w)
    if not ws:
        raise ParameterError("w list is empty")
    methods = [m for m in args.method.split(",") if m.strip()]
    if not methods:
        raise ParameterError("method list is empty")
    cache = _RefCache()
    tasks = [(w, m) for w in ws for m in methods]

    def runner(task):
        w, m = task
        ref = cache.get(args, w)
        label = args.problem if args.problem else "custom"
        return _run_one(args, label, m, args.n, args.s, w, ref)

    _emit_records(args, tasks, runner, out)
    return 0


def _cmd_sweep_n(args, out, err) -> int:
    ns = _parse_int_list(args.n)
    if not ns:
        raise ParameterError("n list is empty")
    methods = [m for m in args.method.split(",") if m.strip()]
    if not methods:
        raise ParameterError("method list is empty")
    cache = _RefCache()
    tasks = [(n, m) for n in ns for m in methods]

    def runner(task):
        n, m = task
        ref = cache.get(args, args.w)
        label = args.problem if args.problem else "custom"
        return _run_one(args, label, m, n, args.s, args.w, ref)

    _emit_records(args, tasks, runner, out)
    return 0


def _cmd_compare(args, out, err) -> int:
    spec, label = _build_spec(args, args.w)
    cache = _RefCache()
    ref_value, ref_kind = cache.get(args, args.w)
    err.write(f"# ref_kind={ref_kind}\n")
    methods = ["levin"]
    if spec.oscillator.poly is not None and np.trim_zeros(spec.oscillator.poly, "b").size <= 2:
        methods.append("cmfp")
    if abs(spec.w) * spec.g_end() <= ORACLE_PHASE_CAP:
        methods.append("oracle")

    def runner(m):
        return _run_one(args, label, m, args.n, args.s, args.w, (ref_value, ref_kind))

    _emit_records(args, methods, runner, out)
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--problem", help="built-in problem id (ex51, ex52, ex53a, ex53b, ex54)")
    sub.add_argument("--f-poly", help="amplitude polynomial coefficients, ascending, comma-separated")
    sub.add_argument("--g-poly", help="oscillator polynomial coefficients, ascending, comma-separated")
    sub.add_argument("--kind", choices=[k.value for k in SingKind], default="algebraic", help="singularity kind for polynomial problems")
    sub.add_argument("--a", type=float, default=1.0, help="interval end for polynomial problems")
    sub.add_argument("--alpha", type=float, required=True, help="singularity exponent, 0<|alpha|<1")
    sub.add_argument("--s", type=int, default=0, help="asymptotic-order parameter")
    sub.add_argument("--config", help="key=value file seeding any long option")
    sub.add_argument("--jobs", type=int, default=None, help="parallel workers (env OSCQUAD_JOBS)")
    sub.add_argument("--output", help="write CSV to this path instead of stdout")


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oscquad-bench",
        description="Benchmark CLI for singular oscillatory quadrature.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_eval = subs.add_parser("eval", help="evaluate one integral")
    _add_common(p_eval)
    p_eval.add_argument("--w", type=float, required=True)
    p_eval.add_argument("--n", type=int, required=True)
    p_eval.add_argument("--method", default="levin")
    p_eval.set_defaults(func=_cmd_eval)

    p_sw = subs.add_parser("sweep-w", help="sweep over frequencies")
    _add_common(p_sw)
    p_sw.add_argument("--w", required=True, help="comma-separated frequency list")
    p_sw.add_argument("--n", type=int, required=True)
    p_sw.add_argument("--method", default="levin")
    p_sw.set_defaults(func=_cmd_sweep_w)

    p_sn = subs.add_parser("sweep-n", help="sweep over node counts")
    _add_common(p_sn)
    p_sn.add_argument("--n", required=True, help="comma-separated node-count list")
    p_sn.add_argument("--w", type=float, required=True)
    p_sn.add_argument("--method", default="levin")
    p_sn.set_defaults(func=_cmd_sweep_n)

    p_cmp = subs.add_parser("compare", help="compare methods against the reference")
    _add_common(p_cmp)
    p_cmp.add_argument("--w", type=float, required=True)
    p_cmp.add_argument("--n", type=int, required=True)
    p_cmp.set_defaults(func=_cmd_compare)

    return parser


def _inject_config(argv: list) -> list:
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
            break
        if tok.startswith("--config="):
            path = tok.split("=", 1)[1]
            break
    if path is None or not argv:
        return argv
    injected = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParameterError(f"config line {line!r} is not key=value")
            key, value = line.split("=", 1)
            injected.extend([f"--{key.strip()}", value.strip()])
    return [argv[0]] + injected + argv[1:]


def run_command(argv=None, stdout=None, stderr=None) -> int:
    """Run one CLI invocation; returns the exit code instead of exiting."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    if argv is None:
        argv = sys.argv[1:]
    parser = _make_parser()
    try:
        argv = _inject_config(list(argv))
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 5
    except ParameterError as exc:
        err.write(f"error: {exc}\n")
        return 2
    try:
        return args.func(args, out, err)
    except CapabilityError as exc:
        err.write(f"capability error: {exc}\n")
        return 3
    except AccuracyError as exc:
        err.write(f"accuracy error: {exc}\n")
        return 4
    except ParameterError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"I/O error: {exc}\n")
        return 5


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
