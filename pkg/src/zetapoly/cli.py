"""Command-line front end.

Thin adapter only: every command validates its inputs, calls the library,
and prints one deterministic report in the requested format.  No arithmetic
beyond input validation lives here.

Exit codes: 0 success, 1 invalid input, 2 failed internal consistency
check, 64 unknown command.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
import warnings
from fractions import Fraction
from typing import Callable, Optional, Sequence, TextIO, Union

from . import defect2, lpoly
from .arith import format_rational, parse_rational
from .compositions import count as composition_count
from .compositions import parts_in_range
from .errors import ConsistencyError, ValidationError
from .parapermanent import matrix_from_entries, pper_by_compositions, pper_by_last_row

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONSISTENCY = 2
EXIT_USAGE = 64

_USAGE = """\
usage: zetapoly <command> ...

commands:
  lpoly from-counts    L-polynomial from point counts N_1..N_g
  lpoly from-traces    L-polynomial from root-pair traces t_1..t_g
  classnumber          class number two ways from counts or traces
  defect2 analyze      defect-2 coefficient report over F_2
  compositions         list the compositions of n in index order
  pper                 parapermanent of a triangular table from a file

run 'zetapoly <command> --help' for options
"""

_MAX_COMPOSITION_N = 62


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        # accept comma-separated negative integers (e.g. --traces -2,-2) as
        # option values rather than mistaking them for option names
        self._negative_number_matcher = re.compile(r"^-\d+(?:,-?\d+)*$")

    def error(self, message: str) -> None:  # noqa: A003 - argparse API
        raise ValidationError(message)


def _int_option(label: str, text: str) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise ValidationError(f"{label} must be an integer, got {text!r}") from None


def _int_list_option(label: str, text: str) -> list[int]:
    items = [piece.strip() for piece in text.split(",")]
    if items == [""]:
        raise ValidationError(f"{label} must be a comma-separated list of integers")
    return [_int_option(f"{label}[{i}]", piece) for i, piece in enumerate(items, start=1)]


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    n = q
    d = 2
    while d * d <= n:
        if n % d == 0:
            while n % d == 0:
                n //= d
            return n == 1
        d += 1
    return True


def _validate_q(q: int, skip_prime_power: bool) -> None:
    if q < 2:
        raise ValidationError(f"--q must be >= 2, got {q}")
    if not skip_prime_power and not _is_prime_power(q):
        raise ValidationError(
            f"--q must be a prime power, got {q} (pass --no-validate to allow)"
        )


def _json_bool(value: object) -> str:
    if value is None:
        return ""
    if value is True:
        return "true"
    if value is False:
        return "false"
    return str(value)


def _emit_pairs(payload: dict, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2))
        out.write("\n")
        return
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in payload.items():
            if isinstance(value, list):
                writer.writerow([key, " ".join(str(item) for item in value)])
            else:
                writer.writerow([key, _json_bool(value)])
        return
    width = max(len(key) for key in payload)
    for key, value in payload.items():
        if isinstance(value, list):
            rendered = " ".join(str(item) for item in value)
        else:
            rendered = _json_bool(value) or "-"
        out.write(f"{key:<{width}}  {rendered}\n")


def _add_format_option(parser: _Parser) -> None:
    parser.add_argument(
        "--format", choices=("json", "csv", "table"), default="json"
    )


def _parse_method(parser: _Parser) -> None:
    parser.add_argument(
        "--method",
        choices=("recurrence", "pper", "compositions", "all"),
        default="all",
    )


def _half_coefficients(s: lpoly.SSequence, method: str) -> tuple[list[int], list[str]]:
    if method == "recurrence":
        return lpoly.coeffs_by_recurrence(s), ["recurrence"]
    if method == "pper":
        return lpoly.coeffs_by_parapermanent(s), ["pper"]
    if method == "compositions":
        if s.g > lpoly.COMPOSITION_CAP:
            raise ValidationError(
                f"--method compositions needs g <= {lpoly.COMPOSITION_CAP}, got g={s.g}"
            )
        return lpoly.coeffs_by_compositions(s), ["compositions"]
    by_recurrence = lpoly.coeffs_by_recurrence(s)
    by_pper = lpoly.coeffs_by_parapermanent(s)
    methods = ["recurrence", "pper"]
    if by_pper != by_recurrence:
        raise ConsistencyError(
            f"recurrence and parapermanent disagree for q={s.q}, S={list(s.s)}: "
            f"{by_recurrence} vs {by_pper}"
        )
    if s.g <= lpoly.COMPOSITION_CAP:
        by_compositions = lpoly.coeffs_by_compositions(s)
        methods.append("compositions")
        if by_compositions != by_recurrence:
            raise ConsistencyError(
                f"composition sum disagrees for q={s.q}, S={list(s.s)}: "
                f"{by_recurrence} vs {by_compositions}"
            )
    return by_recurrence, methods


def _s_from_counts_checked(q: int, counts: list[int], err: TextIO) -> lpoly.SSequence:
    for i, n_r in enumerate(counts, start=1):
        if n_r < 0:
            raise ValidationError(f"--counts[{i}] must be >= 0, got {n_r}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        s = lpoly.s_from_counts(q, counts)
    for item in caught:
        print(f"warning: {item.message}", file=err)
    return s


def _traces_checked(q: int, traces: list[int]) -> lpoly.TraceData:
    for i, t in enumerate(traces, start=1):
        if t * t > 4 * q:
            raise ValidationError(
                f"--traces[{i}] violates t^2 <= 4q: t={t}, q={q}"
            )
    return lpoly.TraceData(q, tuple(traces))


def _lpoly_payload(
    s: lpoly.SSequence, method: str, oracle: Optional[lpoly.LPolynomial]
) -> dict:
    half, methods = _half_coefficients(s, method)
    full = lpoly.complete(half, s.q)
    if oracle is not None and full.coeffs != oracle.coeffs:
        raise ConsistencyError(
            f"S-value routes disagree with the trace product for q={s.q}, "
            f"S={list(s.s)}: {list(full.coeffs)} vs {list(oracle.coeffs)}"
        )
    return {
        "q": s.q,
        "g": s.g,
        "method": method,
        "methods_run": methods,
        "s": [str(value) for value in s.s],
        "coeffs": [str(value) for value in full.coeffs],
        "h": str(lpoly.class_number(full)),
        "methods_agree": True,
        "oracle_agrees": None if oracle is None else True,
    }


def _cmd_lpoly_from_counts(args: list[str], out: TextIO, err: TextIO) -> int:
    parser = _Parser(prog="zetapoly lpoly from-counts", add_help=True)
    parser.add_argument("--q", required=True)
    parser.add_argument("--counts", required=True)
    parser.add_argument("--no-validate", action="store_true")
    _parse_method(parser)
    _add_format_option(parser)
    ns = parser.parse_args(args)
    q = _int_option("--q", ns.q)
    _validate_q(q, ns.no_validate)
    counts = _int_list_option("--counts", ns.counts)
    s = _s_from_counts_checked(q, counts, err)
    _emit_pairs(_lpoly_payload(s, ns.method, None), ns.format, out)
    return EXIT_OK


def _cmd_lpoly_from_traces(args: list[str], out: TextIO, err: TextIO) -> int:
    parser = _Parser(prog="zetapoly lpoly from-traces", add_help=True)
    parser.add_argument("--q", required=True)
    parser.add_argument("--traces", required=True)
    parser.add_argument("--no-validate", action="store_true")
    _parse_method(parser)
    _add_format_option(parser)
    ns = parser.parse_args(args)
    q = _int_option("--q", ns.q)
    _validate_q(q, ns.no_validate)
    traces = _int_list_option("--traces", ns.traces)
    data = _traces_checked(q, traces)
    s = lpoly.s_from_traces(data)
    oracle = lpoly.oracle_expand(data)
    _emit_pairs(_lpoly_payload(s, ns.method, oracle), ns.format, out)
    return EXIT_OK


def _cmd_lpoly(args: list[str], out: TextIO, err: TextIO) -> int:
    subcommands: dict[str, Callable[[list[str], TextIO, TextIO], int]] = {
        "from-counts": _cmd_lpoly_from_counts,
        "from-traces": _cmd_lpoly_from_traces,
    }
    usage = "usage: zetapoly lpoly {from-counts,from-traces} ...\n"
    if args and args[0] in ("-h", "--help"):
        out.write(usage)
        return EXIT_OK
    if not args:
        err.write(usage)
        return EXIT_USAGE
    handler = subcommands.get(args[0])
    if handler is None:
        print(f"unknown lpoly subcommand: {args[0]}", file=err)
        err.write(usage)
        return EXIT_USAGE
    return handler(args[1:], out, err)


def _cmd_classnumber(args: list[str], out: TextIO, err: TextIO) -> int:
    parser = _Parser(prog="zetapoly classnumber", add_help=True)
    parser.add_argument("--q", required=True)
    parser.add_argument("--counts")
    parser.add_argument("--traces")
    parser.add_argument("--no-validate", action="store_true")
    _add_format_option(parser)
    ns = parser.parse_args(args)
    q = _int_option("--q", ns.q)
    _validate_q(q, ns.no_validate)
    if (ns.counts is None) == (ns.traces is None):
        raise ValidationError("exactly one of --counts or --traces is required")
    if ns.counts is not None:
        s = _s_from_counts_checked(q, _int_list_option("--counts", ns.counts), err)
    else:
        s = lpoly.s_from_traces(_traces_checked(q, _int_list_option("--traces", ns.traces)))
    full = lpoly.complete(lpoly.coeffs_by_recurrence(s), s.q)
    h = lpoly.class_number(full)
    h_formula = lpoly.class_number_formula(s)
    if h != h_formula:
        raise ConsistencyError(
            f"L(1) and the direct formula disagree for q={s.q}, S={list(s.s)}: "
            f"{h} vs {h_formula}"
        )
    payload = {
        "q": s.q,
        "g": s.g,
        "h": str(h),
        "h_formula": str(h_formula),
        "agree": True,
    }
    _emit_pairs(payload, ns.format, out)
    return EXIT_OK


_DEFECT2_VALUE_COLUMNS = (
    "n",
    "a_pi4",
    "a_3pi4",
    "p_plus_pi4",
    "p_minus_pi4",
    "delta_pi4",
    "p_plus_3pi4",
    "p_minus_3pi4",
    "delta_3pi4",
)

_DEFECT2_CHECK_COLUMNS = ("symmetry", "tallies", "signs")


def _defect2_flat_row(row: dict) -> list[str]:
    flat = [_json_bool(row[column]) for column in _DEFECT2_VALUE_COLUMNS]
    flat.extend(_json_bool(row["checks"][check]) for check in _DEFECT2_CHECK_COLUMNS)
    return flat


def _emit_defect2(report: defect2.Defect2Report, fmt: str, out: TextIO) -> None:
    payload = report.to_json_dict()
    header = list(_DEFECT2_VALUE_COLUMNS) + [
        f"check_{check}" for check in _DEFECT2_CHECK_COLUMNS
    ]
    if fmt == "json":
        out.write(json.dumps(payload, indent=2))
        out.write("\n")
        return
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in payload["rows"]:
            writer.writerow(_defect2_flat_row(row))
        return
    out.write(f"g             {payload['g']}\n")
    out.write(f"max_n         {payload['max_n']}\n")
    out.write(f"thetas        {' '.join(payload['thetas'])}\n")
    out.write(f"theorem_mode  {payload['theorem_mode']}\n")
    for label in ("oracle_match", "recurrence_match"):
        rendered = " ".join(
            f"{key}={_json_bool(value)}" for key, value in payload[label].items()
        )
        out.write(f"{label:<13} {rendered}\n")
    cells = [header]
    for row in payload["rows"]:
        cells.append([value or "-" for value in _defect2_flat_row(row)])
    widths = [max(len(line[i]) for line in cells) for i in range(len(header))]
    out.write("\n")
    for line in cells:
        rendered = "  ".join(value.ljust(width) for value, width in zip(line, widths))
        out.write(rendered.rstrip() + "\n")


def _cmd_defect2_analyze(args: list[str], out: TextIO, err: TextIO) -> int:
    parser = _Parser(prog="zetapoly defect2 analyze", add_help=True)
    parser.add_argument("--g", required=True)
    parser.add_argument("--max-n", dest="max_n")
    parser.add_argument("--theta", choices=("pi4", "3pi4", "both"), default="both")
    parser.add_argument("--threads")
    _add_format_option(parser)
    ns = parser.parse_args(args)
    g = _int_option("--g", ns.g)
    if g < 1:
        raise ValidationError(f"--g must be >= 1, got {g}")
    cap = min(g, defect2.ENUMERATION_CAP)
    max_n = cap if ns.max_n is None else _int_option("--max-n", ns.max_n)
    if not 1 <= max_n <= cap:
        raise ValidationError(
            f"--max-n must be in [1, {cap}] for g={g}, got {max_n}"
        )
    threads = None if ns.threads is None else _int_option("--threads", ns.threads)
    if threads is not None and threads < 1:
        raise ValidationError(f"--threads must be >= 1, got {threads}")
    if ns.theta == "both":
        thetas: Optional[tuple[defect2.Theta, ...]] = None
    else:
        thetas = (defect2.Theta(ns.theta),)
    report = defect2.analyze(g, max_n=max_n, thetas=thetas, threads=threads)
    _emit_defect2(report, ns.format, out)
    return EXIT_OK


def _cmd_defect2(args: list[str], out: TextIO, err: TextIO) -> int:
    usage = "usage: zetapoly defect2 analyze ...\n"
    if args and args[0] in ("-h", "--help"):
        out.write(usage)
        return EXIT_OK
    if not args:
        err.write(usage)
        return EXIT_USAGE
    if args[0] != "analyze":
        print(f"unknown defect2 subcommand: {args[0]}", file=err)
        err.write(usage)
        return EXIT_USAGE
    return _cmd_defect2_analyze(args[1:], out, err)


def _cmd_compositions(args: list[str], out: TextIO, err: TextIO) -> int:
    parser = _Parser(prog="zetapoly compositions", add_help=True)
    parser.add_argument("--n", required=True)
    _add_format_option(parser)
    ns = parser.parse_args(args)
    n = _int_option("--n", ns.n)
    if not 0 <= n <= _MAX_COMPOSITION_N:
        raise ValidationError(
            f"--n must be in [0, {_MAX_COMPOSITION_N}], got {n}"
        )
    if ns.format == "csv":
        out.write("index,parts\n")
    total = composition_count(n)
    for index, parts in enumerate(parts_in_range(n, 0, total)):
        if ns.format == "json":
            out.write(json.dumps({"index": index, "parts": list(parts)}))
            out.write("\n")
        elif ns.format == "csv":
            out.write(f"{index},{' '.join(str(part) for part in parts)}\n")
        else:
            rendered = ", ".join(str(part) for part in parts)
            out.write(f"{index:>10}  ({rendered})\n")
    return EXIT_OK


def _load_matrix_file(path: str) -> list[list[Fraction]]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ValidationError(f"cannot read --file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"--file {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or "order" not in data or "rows" not in data:
        raise ValidationError(
            f"--file {path} must hold an object with 'order' and 'rows'"
        )
    order = data["order"]
    raw_rows = data["rows"]
    if not isinstance(order, int) or isinstance(order, bool) or order < 0:
        raise ValidationError(f"--file {path}: 'order' must be a nonnegative integer")
    if not isinstance(raw_rows, list) or len(raw_rows) != order:
        raise ValidationError(
            f"--file {path}: 'rows' must be a list of {order} rows"
        )
    rows: list[list[Fraction]] = []
    for i, row in enumerate(raw_rows, start=1):
        if not isinstance(row, list) or len(row) != i:
            raise ValidationError(
                f"--file {path}: row {i} must be a list of {i} entries"
            )
        parsed = []
        for j, entry in enumerate(row, start=1):
            if isinstance(entry, bool) or not isinstance(entry, (int, str)):
                raise ValidationError(
                    f"--file {path}: entry ({i}, {j}) must be an integer or "
                    f"a rational string, got {entry!r}"
                )
            try:
                parsed.append(
                    Fraction(entry) if isinstance(entry, int) else parse_rational(entry)
                )
            except ValueError:
                raise ValidationError(
                    f"--file {path}: entry ({i}, {j}) is not a rational: {entry!r}"
                ) from None
        rows.append(parsed)
    return rows


def _cmd_pper(args: list[str], out: TextIO, err: TextIO) -> int:
    parser = _Parser(prog="zetapoly pper", add_help=True)
    parser.add_argument("--file", required=True)
    _add_format_option(parser)
    ns = parser.parse_args(args)
    rows = _load_matrix_file(ns.file)
    if len(rows) > lpoly.COMPOSITION_CAP:
        raise ValidationError(
            f"table order capped at {lpoly.COMPOSITION_CAP}, got {len(rows)}"
        )
    matrix = matrix_from_entries(rows)
    by_rows = pper_by_last_row(matrix)
    by_sums = pper_by_compositions(matrix)
    if by_rows != by_sums:
        raise ConsistencyError(
            f"last-row and composition evaluations disagree: {by_rows} vs {by_sums}"
        )
    payload = {
        "order": matrix.order,
        "pper": format_rational(by_rows),
        "by_last_row": format_rational(by_rows),
        "by_compositions": format_rational(by_sums),
        "agree": True,
    }
    _emit_pairs(payload, ns.format, out)
    return EXIT_OK


_COMMANDS: dict[str, Callable[[list[str], TextIO, TextIO], int]] = {
    "lpoly": _cmd_lpoly,
    "classnumber": _cmd_classnumber,
    "defect2": _cmd_defect2,
    "compositions": _cmd_compositions,
    "pper": _cmd_pper,
}


def run(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """Execute one command line; returns the exit code instead of exiting."""
    args = list(sys.argv[1:] if argv is None else argv)
    out = sys.stdout if stdout is None else stdout
    err = sys.stderr if stderr is None else stderr
    if not args or args[0] in ("-h", "--help"):
        out.write(_USAGE)
        return EXIT_OK
    handler = _COMMANDS.get(args[0])
    if handler is None:
        print(f"unknown command: {args[0]}", file=err)
        err.write(_USAGE)
        return EXIT_USAGE
    try:
        return handler(args[1:], out, err)
    except ValidationError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_VALIDATION
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=err)
        return EXIT_CONSISTENCY
    except SystemExit as exc:
        code = exc.code
        return EXIT_OK if code in (0, None) else EXIT_VALIDATION


def main() -> None:
    sys.exit(run())
