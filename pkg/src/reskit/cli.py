"""Command-line front end.

Input format::

    n 3
    params a b c alpha
    f1 = a*x1^2 + alpha*x2*x3
    f2 = b*x2^2 + alpha*x1*x3
    f3 = c*x3^2 + alpha*x1*x2

Blank lines and ``#`` comments are ignored.

Exit codes: 0 success, 1 input error, 2 an oracle was inconclusive during
``verify``, 3 the trace table would exceed the size guard, 4 an oracle
disagreed during ``verify``.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field

from .algebra import (HomogeneityError, ParamPoly, ParseError, PolySystem,
                      format_coefficient, parse_polynomial)
from .oracles import (OracleInconclusive, determinant_resultant, macaulay_matrix,
                      macaulay_resultant, numeric_root_product, relative_error,
                      sylvester_resultant)
from .schur import degree_vector, resultant, schur_recurrence, table_size
from .traces import build_trace_table

DEFAULT_MAX_TABLE = 10 ** 6
ORACLES = ("sylvester", "determinant", "macaulay", "numeric")
NUMERIC_RTOL = 1e-8
MACAULAY_MAX_ROWS = 120


class InputError(ValueError):
    pass


@dataclass
class JobSpec:
    n: int
    polynomial_texts: list
    params: list = field(default_factory=list)
    command: str = "resultant"
    output_format: str = "text"


def parse_job(text: str, command: str = "resultant", output_format: str = "text") -> JobSpec:
    """Read the ``n`` / ``params`` / ``f<i> = ...`` input format."""
    n = None
    params: list = []
    polys: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "n" and "=" not in line:
            try:
                n = int(rest)
            except ValueError:
                raise InputError(f"line {lineno}: bad variable count {rest!r}") from None
        elif head == "params" and "=" not in line:
            params = rest.split()
        elif "=" in line:
            name, _, body = line.partition("=")
            name = name.strip()
            if not (name.startswith("f") and name[1:].isdigit()):
                raise InputError(f"line {lineno}: expected f<i> = <polynomial>")
            i = int(name[1:])
            if i in polys:
                raise InputError(f"line {lineno}: {name} given twice")
            polys[i] = body.strip()
        else:
            raise InputError(f"line {lineno}: cannot read {line!r}")
    if n is None:
        raise InputError("missing 'n <integer>' line")
    if n < 1:
        raise InputError("n must be at least 1")
    if sorted(polys) != list(range(1, n + 1)):
        raise InputError(f"expected polynomials f1..f{n}, got "
                         + ", ".join(f"f{i}" for i in sorted(polys)))
    return JobSpec(n, [polys[i] for i in range(1, n + 1)], params, command, output_format)


def build_system(job: JobSpec) -> PolySystem:
    polys = []
    for i, text in enumerate(job.polynomial_texts, 1):
        try:
            p = parse_polynomial(text, job.n, job.params)
        except ParseError as exc:
            raise InputError(f"f{i}: syntax error: {exc}") from None
        except HomogeneityError as exc:
            raise InputError(f"f{i}: {exc}") from None
        if p.is_zero():
            raise InputError(f"f{i}: zero polynomial; the resultant is undefined")
        if p.degree < 1:
            raise InputError(f"f{i}: constant polynomial; degree must be at least 1")
        polys.append(p)
    return PolySystem(polys)


def _is_parametric(system: PolySystem) -> bool:
    return system.params is not None


def _specialize(system: PolySystem, rng: random.Random) -> tuple:
    params = system.params or ()
    values = {p: rng.randint(-9, 9) or 1 for p in params}
    return values, system.subs(values)


def _subs(value, values):
    return value.subs(values) if isinstance(value, ParamPoly) else value


def _compare(value, oracle):
    if value == oracle:
        return "AGREE", (None if not value else 1)
    if value == -oracle:
        return "AGREE", -1
    return "DISAGREE", None


def run_oracles(system: PolySystem, value, seed: int = 0) -> dict:
    """Run every applicable oracle against ``value``.

    Returns ``{oracle: {"status": ..., "sign": ..., "detail": ...}}`` where
    status is AGREE, DISAGREE, INCONCLUSIVE or N/A and sign is +1, -1 or
    None when undetermined.
    """
    rng = random.Random(seed)
    report = {}
    n, r = system.n, system.degrees
    parametric = _is_parametric(system)

    if n == 2:
        status, sign = _compare(value, sylvester_resultant(*system))
        report["sylvester"] = {"status": status, "sign": sign, "detail": ""}
    else:
        report["sylvester"] = {"status": "N/A", "sign": None, "detail": "needs n = 2"}

    if all(x == 1 for x in r):
        status, sign = _compare(value, determinant_resultant(system))
        report["determinant"] = {"status": status, "sign": sign, "detail": ""}
    else:
        report["determinant"] = {"status": "N/A", "sign": None, "detail": "needs linear forms"}

    rows = len(macaulay_matrix(system)[1]) if n <= 4 else None
    usable = rows is not None and rows <= MACAULAY_MAX_ROWS and (
        not parametric or (n <= 3 and max(r) <= 2))
    if usable:
        try:
            status, sign = _compare(value, macaulay_resultant(system))
            report["macaulay"] = {"status": status, "sign": sign, "detail": f"{rows} rows"}
        except OracleInconclusive as exc:
            report["macaulay"] = {"status": "INCONCLUSIVE", "sign": None, "detail": str(exc)}
    else:
        report["macaulay"] = {"status": "N/A", "sign": None, "detail": "outside size limits"}

    if n == 2:
        values, special = _specialize(system, rng) if parametric else ({}, system)
        exact = _subs(value, values)
        try:
            approx = numeric_root_product(*special)
        except ValueError as exc:
            report["numeric"] = {"status": "INCONCLUSIVE", "sign": None, "detail": str(exc)}
        else:
            err = relative_error(approx, exact)
            err_neg = relative_error(approx, -exact)
            if err <= NUMERIC_RTOL:
                status, sign = "AGREE", (1 if exact else None)
            elif err_neg <= NUMERIC_RTOL:
                status, sign = "AGREE", -1
            else:
                status, sign = "DISAGREE", None
            detail = f"relative error {min(err, err_neg):.2e}"
            if values:
                detail += " at " + ", ".join(f"{k}={v}" for k, v in values.items())
            report["numeric"] = {"status": status, "sign": sign, "detail": detail}
    else:
        report["numeric"] = {"status": "N/A", "sign": None, "detail": "needs n = 2"}

    if parametric:
        values, special = _specialize(system, rng)
        try:
            direct = resultant(special)
        except ValueError as exc:
            report["specialization"] = {"status": "INCONCLUSIVE", "sign": None,
                                        "detail": str(exc)}
        else:
            ok = direct == _subs(value, values)
            report["specialization"] = {
                "status": "AGREE" if ok else "DISAGREE", "sign": 1 if ok and direct else None,
                "detail": ", ".join(f"{k}={v}" for k, v in values.items())}
    return report


def _sign_str(sign) -> str:
    return "n/a" if sign is None else f"{sign:+d}"


def _max_table() -> int:
    raw = os.environ.get("RESKIT_MAX_TABLE")
    return int(raw) if raw else DEFAULT_MAX_TABLE


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="reskit",
        description="Resultants of homogeneous polynomial systems via traces.")
    ap.add_argument("--input", default="-", help="input file, or - for stdin")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--command", choices=("resultant", "traces", "verify"),
                    default="resultant")
    ap.add_argument("--threads", type=int, default=1,
                    help="worker threads for the trace table (0 = auto)")
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for random specializations in verify")
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = make_parser().parse_args(argv)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        job = parse_job(text, args.command, args.format)
        system = build_system(job)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1

    size = table_size(system.degrees)
    limit = _max_table()
    if size > limit:
        print(f"error: trace table would have {size} entries (limit {limit}); "
              "set RESKIT_MAX_TABLE to raise it", file=stderr)
        return 3

    dv = degree_vector(system)
    threads = args.threads
    if args.command == "traces":
        table = build_trace_table(system, dv.d, threads=threads)
        entries = {",".join(map(str, k)): format_coefficient(v) for k, v in table.items()}
        if args.format == "json":
            print(json.dumps(entries, indent=2), file=stdout)
        else:
            for key, val in entries.items():
                print(f"T[{key}] = {val}", file=stdout)
        return 0

    table = build_trace_table(system, dv.d, threads=threads)
    value = schur_recurrence(table, dv.d)[dv.d]
    if dv.total % 2:
        value = -value
    out = {
        "n": system.n,
        "degrees": list(system.degrees),
        "degreeVector": list(dv.d),
        "resultant": format_coefficient(value),
        "signVsOracles": {name: "n/a" for name in ORACLES},
    }
    code = 0
    report = None
    if args.command == "verify":
        report = run_oracles(system, value, seed=args.seed)
        for name, entry in report.items():
            if name in out["signVsOracles"]:
                out["signVsOracles"][name] = entry["sign"] if entry["sign"] else "n/a"
        statuses = {e["status"] for e in report.values()}
        if "DISAGREE" in statuses:
            code = 4
        elif "INCONCLUSIVE" in statuses:
            code = 2
        out["oracles"] = report

    if args.format == "json":
        print(json.dumps(out, indent=2), file=stdout)
    elif report is None:
        print(out["resultant"], file=stdout)
    else:
        print(f"degrees {tuple(system.degrees)}  degree vector {dv.d}  total {dv.total}",
              file=stdout)
        print(f"resultant = {out['resultant']}", file=stdout)
        for name, entry in report.items():
            line = f"{name:<15}{entry['status']:<13}sign {_sign_str(entry['sign'])}"
            if entry["detail"]:
                line += f"  ({entry['detail']})"
            print(line, file=stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
