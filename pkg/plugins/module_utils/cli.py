# Copyright: (c) 2026, l2alex contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
Command line program: ``compute``, ``detect``, ``audit`` and ``catalog``.

Exit codes: 0 success, 1 failed audit, 2 invalid input, 3 unsupported knot group,
4 numeric failure.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import sys
from argparse import ArgumentParser
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Sequence

from .detector import detect, detection_diagnostics, family_audit
from .errors import L2AlexException, NumericError, ParseError, UnsupportedOracleError
from .invariants import (
    SCHEMA,
    InvariantSummary,
    evaluate,
    expr_of,
    genus_of,
    lambda_of,
    summarize,
    volume_of,
)
from .knots import (
    BraidKnot,
    CatalogKnot,
    FiberedKnot,
    KnotSpec,
    OraclePresentation,
    catalog,
    catalog_names,
    fibered_presentation,
    is_trivial_braid,
    knot_from_dict,
    parse_braid,
    unknot_presentation,
    wirtinger_from_braid,
)
from .version import version
from .vna import METHODS, NumericParams, delta_at
from .words import CyclicOracle

logger = logging.getLogger("l2alex")

THREADS_ENV = "L2ALEX_THREADS"

COMPUTE_COLUMNS = (
    "t",
    "estimate",
    "lower_bound",
    "extrapolated",
    "epsilon",
    "terms",
    "method",
    "pruned_mass_bound",
    "converged",
)
SYMBOLIC_COLUMNS = ("t", "value", "expression", "genus", "volume", "lambda")

DEFAULT_FORMATS = {"detect": "text"}


@dataclass(frozen=True)
class RunConfig:
    command: str
    knot: str | None = None
    summary: str | None = None
    t_values: tuple[float, ...] = (1.0,)
    params: NumericParams = field(default_factory=NumericParams)
    out: str | None = None
    format: str = "csv"
    threads: int = 1
    n: int = 0
    name: str | None = None
    leading_C: float | None = None

    def __post_init__(self):
        if any(not t > 0 for t in self.t_values):
            raise NumericError(f"t samples must be positive, got {self.t_values}")
        if self.threads < 1:
            raise NumericError(f"thread count must be at least 1, got {self.threads}")


def _read_json(source: str, what: str) -> Any:
    text = source
    if not source.lstrip().startswith(("{", "[")):
        path = Path(source)
        if not path.is_file():
            raise ParseError(f"{what} {source!r} is neither inline JSON nor a file")
        text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exception:
        raise ParseError(f"invalid {what} JSON: {exception.msg}", position=exception.pos) from exception


def load_knot(source: str) -> KnotSpec:
    """Resolve ``catalog:NAME``, ``braid:WORD``, inline JSON or a JSON file to a knot tree."""
    if source.startswith("catalog:"):
        return CatalogKnot(source[len("catalog:") :])
    if source.startswith("braid:"):
        return parse_braid(source[len("braid:") :])
    if not source.lstrip().startswith("{") and not Path(source).is_file():
        return CatalogKnot(source)
    return knot_from_dict(_read_json(source, "knot spec"))


def load_summary(source: str) -> InvariantSummary:
    return InvariantSummary.from_dict(_read_json(source, "summary"))


def numeric_target(knot: KnotSpec) -> OraclePresentation | None:
    """Presentation with a word-problem oracle for leaves the numeric engine supports."""
    if isinstance(knot, CatalogKnot):
        entry = catalog(knot.name)
        if entry.name == "unknot":
            return unknot_presentation()
        if entry.monodromy is not None:
            return fibered_presentation(entry.genus, entry.monodromy)
        return None
    if isinstance(knot, BraidKnot):
        if is_trivial_braid(knot):
            presentation = wirtinger_from_braid(knot)
            return OraclePresentation(presentation, CyclicOracle((1,) * presentation.generator_count))
        for name in catalog_names():
            entry = catalog(name)
            if entry.braid and entry.monodromy is not None and parse_braid(entry.braid).word == knot.word:
                return fibered_presentation(entry.genus, entry.monodromy)
        return None
    if isinstance(knot, FiberedKnot):
        return fibered_presentation(knot.genus, knot.monodromy)
    return None


def _write(config: RunConfig, text: str) -> None:
    if config.out:
        Path(config.out).write_text(text, encoding="utf-8")
        logger.info("Wrote %s", config.out)
    else:
        sys.stdout.write(text)


def _csv(comment: str, columns: Sequence[str], rows: list[dict[str, Any]]) -> str:
    buffer = io.StringIO()
    buffer.write(f"# {SCHEMA} {comment} columns={','.join(columns)}\n")
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: "" if row.get(key) is None else row[key] for key in columns})
    return buffer.getvalue()


def _json(payload: dict[str, Any]) -> str:
    return json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True) + "\n"


def invariant_rows(
    knot: KnotSpec,
    t_values: Sequence[float],
    params: NumericParams,
    threads: int = 1,
) -> tuple[str, list[dict[str, Any]]]:
    """
    Rows of the invariant at each ``t``, numeric when an oracle exists for the knot group,
    symbolic through the invariant algebra otherwise.

    :raises UnsupportedOracleError: for a single leaf without an oracle
    """
    if any(not t > 0 for t in t_values):
        raise NumericError(f"t samples must be positive, got {tuple(t_values)}")
    target = numeric_target(knot)

    if target is None:
        if isinstance(knot, (CatalogKnot, BraidKnot, FiberedKnot)):
            raise UnsupportedOracleError(f"no word-problem oracle is available for {json.dumps(knot.to_dict())}")
        expr = expr_of(knot)
        try:
            limit = str(lambda_of(expr))
        except L2AlexException:
            limit = None
        rows = [
            {
                "t": t,
                "value": evaluate(expr, t),
                "expression": expr.format(),
                "genus": genus_of(expr),
                "volume": volume_of(expr),
                "lambda": limit,
            }
            for t in t_values
        ]
        return "symbolic", rows

    inner = replace(params, threads=1)

    def run(t: float) -> dict[str, Any]:
        report = delta_at(target, t, inner)
        return {
            "t": t,
            "estimate": report.estimate,
            "extrapolated": report.extrapolated,
            "lower_bound": report.lower_bound,
            "epsilon": report.epsilon,
            "terms": report.terms,
            "method": report.method,
            "pruned_mass_bound": report.pruned_mass_bound,
            "converged": report.converged,
        }

    with ThreadPoolExecutor(max_workers=threads) as executor:
        rows = list(executor.map(run, t_values))
    return "numeric", rows


def cmd_compute(config: RunConfig) -> int:
    if config.knot is None:
        raise ParseError("compute needs --knot")
    knot = load_knot(config.knot)
    mode, rows = invariant_rows(knot, config.t_values, config.params, config.threads)
    columns = COMPUTE_COLUMNS if mode == "numeric" else SYMBOLIC_COLUMNS

    if config.format == "json":
        _write(config, _json({"command": "compute", "mode": mode, "knot": knot.to_dict(), "rows": rows}))
    else:
        _write(config, _csv(f"compute mode={mode}", columns, rows))
    return 0


def cmd_detect(config: RunConfig) -> int:
    if config.summary is not None:
        summary = load_summary(config.summary)
    elif config.knot is not None:
        summary = summarize(expr_of(load_knot(config.knot)), config.leading_C)
    else:
        raise ParseError("detect needs --summary or --knot")

    result = detect(summary)
    if config.format == "json":
        payload = {
            "command": "detect",
            "summary": summary.to_dict(),
            "result": result.to_dict(),
            "diagnostics": detection_diagnostics(summary),
        }
        _write(config, _json(payload))
    elif config.format == "text":
        _write(config, result.format() + "\n")
    else:
        row = {**result.to_dict(), "names": ";".join(result.names), "failures": None}
        _write(config, _csv("detect", ("verdict", "names", "genus", "clause", "reason"), [row]))
    return 0


def cmd_audit(config: RunConfig) -> int:
    report = family_audit(config.n, threads=config.threads)
    if config.format == "json":
        _write(config, _json({"command": "audit", **report.to_dict()}))
    elif config.format == "text":
        _write(config, report.format_table() + "\n")
    else:
        rows = []
        for row in report.rows:
            flat = row.to_dict()
            flat.update(flat.pop("clauses"))
            rows.append(flat)
        columns = tuple(rows[0]) if rows else ("n",)
        _write(config, _csv("audit", columns, rows))
    return 0 if report.passed else 1


def cmd_catalog(config: RunConfig) -> int:
    names = [config.name] if config.name else catalog_names()
    entries = [catalog(name).to_dict() for name in names]
    if config.format == "json":
        _write(config, _json({"command": "catalog", "entries": entries}))
    else:
        columns = ("name", "genus", "volume", "fibered", "exp_vol_over_6pi", "braid", "notes")
        _write(config, _csv("catalog", columns, entries))
    return 0


COMMANDS = {
    "compute": cmd_compute,
    "detect": cmd_detect,
    "audit": cmd_audit,
    "catalog": cmd_catalog,
}


def _float_list(text: str, flag: str) -> tuple[float, ...]:
    try:
        values = tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError as exception:
        raise ParseError(f"{flag} expects a comma separated list of numbers, got {text!r}") from exception
    if not values:
        raise ParseError(f"{flag} expects at least one number")
    return values


def resolve_threads(value: int | None, environ: dict[str, str] | None = None) -> int:
    if value is not None:
        return value
    environ = os.environ if environ is None else environ
    raw = environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        return int(raw)
    except ValueError as exception:
        raise ParseError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exception


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="l2alex", description="L2-Alexander invariants of knots")
    parser.add_argument("--version", action="version", version=f"%(prog)s {version}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", default=False)
    verbosity.add_argument("-q", "--quiet", action="store_true", default=False)
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--knot", help="catalog:NAME, braid:WORD, inline JSON or a JSON file")
    parser.add_argument("--summary", help="invariant summary as inline JSON or a JSON file")
    parser.add_argument("--leading-c", dest="leading_c", type=float, default=None)
    parser.add_argument("--t", default="1", help="comma separated t samples")
    parser.add_argument("--eps", default="1e-1,1e-2,1e-3", help="comma separated epsilon ladder")
    parser.add_argument("--terms", type=int, default=NumericParams.terms)
    parser.add_argument("--prune", type=float, default=NumericParams.prune)
    parser.add_argument(
        "--max-support",
        dest="max_support",
        type=int,
        default=NumericParams.max_support,
        help="largest number of terms kept in one power of the series operator",
    )
    parser.add_argument("--method", choices=METHODS, default=NumericParams.method)
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--n", type=int, default=0, help="largest family index for audit")
    parser.add_argument("--name", default=None, help="catalog entry for catalog")
    parser.add_argument("--out", default=None)
    parser.add_argument(
        "--format", choices=("csv", "json", "text"), default=None, help="text for detect, csv for the others"
    )
    return parser


def config_from_args(args: Any) -> RunConfig:
    params = NumericParams(
        epsilons=_float_list(args.eps, "--eps"),
        terms=args.terms,
        prune=args.prune,
        max_support=args.max_support,
        method=args.method,
    )
    return RunConfig(
        command=args.command,
        knot=args.knot,
        summary=args.summary,
        t_values=_float_list(args.t, "--t"),
        params=params,
        out=args.out,
        format=args.format or DEFAULT_FORMATS.get(args.command, "csv"),
        threads=resolve_threads(args.threads),
        n=args.n,
        name=args.name,
        leading_C=args.leading_c,
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)-8s: %(message)s")

    try:
        config = config_from_args(args)
        return COMMANDS[config.command](config)
    except L2AlexException as exception:
        logger.error("%s", exception)
        return exception.exit_code
