"""Command-line front end emitting reproducible machine-readable reports.

Reports are byte-stable: given identical inputs the emitted JSON/CSV is
byte-identical across runs and thread counts.  Wall-clock timing is
therefore never written into an artifact; it is logged to stderr and the
``elapsed_ms`` slot in artifacts stays null (JSON) or empty (CSV).

Exit codes: 0 success, 2 parameter errors, 3 work-guard or budget refusals.
Guard refusals happen before any output is written.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from . import bounds as bounds_mod
from . import certificate as cert_mod
from . import hypergraph as hg_mod
from . import oracle as oracle_mod
from .errors import WorkGuardError
from .graphs import GraphError, LabeledGraph, from_text, to_text
from .logmag import LogMagnitude

EXIT_OK = 0
EXIT_PARAMS = 2
EXIT_GUARD = 3

SCHEMA_VERSION = 1


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); surface it instead
        raise _UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    parameters: dict
    threads: int
    output_path: str | None
    format: str
    work_override: bool
    budget_secs: float | None

    def echo(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "threads": self.threads,
            "output_path": self.output_path,
            "format": self.format,
            "work_override": self.work_override,
            "budget_secs": self.budget_secs,
        }


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", type=str, default=None)

    parser = _Parser(prog="cliquelab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    census = sub.add_parser("census", parents=[common], help="count clique-free graphs")
    census.add_argument("--n", type=int, required=True)
    census.add_argument("--l", type=int, required=True, dest="ell")
    census.add_argument("--threads", type=int, default=1)
    census.add_argument("--override-guard", action="store_true")
    census.add_argument("--budget-secs", type=float, default=None)

    supersat = sub.add_parser(
        "supersat", parents=[common], help="minimum clique count at fixed edge budget"
    )
    supersat.add_argument("--n", type=int, required=True)
    supersat.add_argument("--l", type=int, required=True, dest="ell")
    supersat.add_argument("--m", type=int, required=True)

    codeg = sub.add_parser("codegree", parents=[common], help="co-degree statistics")
    codeg.add_argument("--n", type=int, required=True)
    codeg.add_argument("--l", type=int, required=True, dest="ell")
    group = codeg.add_mutually_exclusive_group(required=True)
    group.add_argument("--j", type=int, default=None)
    group.add_argument("--sigma", type=str, default=None, help="graph file for d(sigma)")
    codeg.add_argument("--brute", action="store_true")

    certify = sub.add_parser(
        "certify", parents=[common], help="evaluate the certificate chain"
    )
    mode = certify.add_mutually_exclusive_group(required=True)
    mode.add_argument("--n", type=int, default=None)
    mode.add_argument("--log2-n", type=float, default=None, dest="log2_n")
    certify.add_argument("--l", type=int, required=True, dest="ell")
    certify.add_argument("--delta", type=float, required=True)
    certify.add_argument("--c", type=int, default=1)
    certify.add_argument("--log-base", choices=("e", "2"), default="e", dest="log_base")

    bounds = sub.add_parser("bounds", parents=[common], help="closed-form bound report")
    bmode = bounds.add_mutually_exclusive_group(required=True)
    bmode.add_argument("--n", type=int, default=None)
    bmode.add_argument("--log2-n", type=float, default=None, dest="log2_n")
    bounds.add_argument("--l", type=int, required=True, dest="ell")
    bounds.add_argument("--delta", type=str, default=None)

    containers = sub.add_parser("containers", help="container family operations")
    csub = containers.add_subparsers(dest="subcommand", required=True)
    validate = csub.add_parser("validate", parents=[common])
    validate.add_argument("--n", type=int, required=True)
    validate.add_argument("--l", type=int, required=True, dest="ell")
    validate.add_argument("--family", type=str, required=True, help="directory of graph files")
    validate.add_argument("--epsilon", type=str, required=True, help="rational, e.g. 1/10")
    generate = csub.add_parser("generate-maximal", parents=[common])
    generate.add_argument("--n", type=int, required=True)
    generate.add_argument("--l", type=int, required=True, dest="ell")

    return parser


# ---------------------------------------------------------------------------
# serialization helpers


def _fmt_float(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return float(f"{x:.17g}")


def _jsonable(value):
    if isinstance(value, LogMagnitude):
        return {"ln": _fmt_float(value.ln), "log2": _fmt_float(value.log2)}
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, LabeledGraph):
        return to_text(value)
    if isinstance(value, float):
        return _fmt_float(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _steps_json(steps) -> list[dict]:
    return [
        {
            "step": s.step,
            "kind": s.kind,
            "relation": s.relation,
            "lhs_log": _fmt_float(s.lhs_log),
            "rhs_log": _fmt_float(s.rhs_log),
            "pass": s.passed,
            "margin_log": _fmt_float(s.margin_log),
            "detail": s.detail,
        }
        for s in steps
    ]


def emit_report(payload: dict, csv_rows: list[list], config: RunConfig) -> str:
    """Render the report deterministically and write it (file or stdout)."""
    if config.format == "json":
        data = json.dumps(_jsonable(payload), indent=2, allow_nan=False) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in csv_rows:
            writer.writerow(row)
        data = buf.getvalue()
    if config.output_path:
        Path(config.output_path).write_text(data, encoding="utf-8")
    else:
        sys.stdout.write(data)
    return data


def _write_sibling(config: RunConfig, suffix: str, text: str) -> None:
    if config.output_path:
        base = Path(config.output_path)
        base.with_name(base.name + suffix).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# command implementations


def _cmd_census(args, config: RunConfig):
    result = oracle_mod.count_free_graphs(
        args.n,
        args.ell,
        threads=args.threads,
        override_guard=args.override_guard,
        budget_secs=args.budget_secs,
    )
    payload = {
        "schema": f"cliquelab.census.v{SCHEMA_VERSION}",
        "config": config.echo(),
        "n": result.n,
        "l": result.ell,
        "count": str(result.count),
        "scanned": result.graphs_scanned,
        "threads": result.threads,
        "elapsed_ms": None,
    }
    rows = [
        ["n", "l", "count", "scanned", "threads", "elapsed_ms"],
        [result.n, result.ell, str(result.count), result.graphs_scanned, result.threads, ""],
    ]
    return payload, rows, result.elapsed


def _cmd_supersat(args, config: RunConfig):
    result = oracle_mod.min_cliques_at_edge_count(args.n, args.ell, args.m)
    witness_text = to_text(result.witness)
    payload = {
        "schema": f"cliquelab.supersat.v{SCHEMA_VERSION}",
        "config": config.echo(),
        "n": result.n,
        "l": result.ell,
        "m": result.m,
        "min_count": result.min_count,
        "witness": witness_text,
    }
    rows = [
        ["n", "l", "m", "min_count", "witness_bits"],
        [result.n, result.ell, result.m, result.min_count, result.witness.edges],
    ]
    _write_sibling(config, ".witness.txt", witness_text)
    return payload, rows, None


def _cmd_codegree(args, config: RunConfig):
    payload = {
        "schema": f"cliquelab.codegree.v{SCHEMA_VERSION}",
        "config": config.echo(),
        "n": args.n,
        "l": args.ell,
    }
    rows = [["key", "value"]]
    if args.sigma is not None:
        sigma = from_text(Path(args.sigma).read_text(encoding="utf-8"))
        value = hg_mod.codegree(args.n, args.ell, sigma)
        payload["sigma_edges"] = sigma.edge_count
        payload["spanned_vertices"] = hg_mod.spanned_vertices(sigma)
        payload["codegree"] = str(value)
        rows += [["codegree", str(value)]]
    else:
        value = hg_mod.max_codegree(args.n, args.ell, args.j)
        payload["j"] = args.j
        payload["v_min"] = hg_mod.v_min(args.j)
        payload["max_codegree"] = str(value)
        rows += [["j", args.j], ["max_codegree", str(value)]]
        if args.brute:
            brute = hg_mod.brute_max_codegree(args.n, args.ell, args.j)
            payload["brute_max_codegree"] = str(brute)
            payload["agree"] = brute == value
            rows += [["brute_max_codegree", str(brute)]]
    return payload, rows, None


def _cmd_certify(args, config: RunConfig):
    log2_n = args.log2_n if args.log2_n is not None else math.log2(args.n)
    report = cert_mod.verify_proof_chain(log2_n, args.ell, args.delta, args.c, args.log_base)
    steps = report.ordered_steps
    payload = {
        "schema": f"cliquelab.certify.v{SCHEMA_VERSION}",
        "config": config.echo(),
        "log2_n": _fmt_float(report.log2_n),
        "l": report.ell,
        "delta": _fmt_float(report.delta),
        "c": report.c,
        "log_base": report.log_base,
        "params": {
            "delta": _fmt_float(report.params.delta),
            "epsilon_ln": _fmt_float(report.params.epsilon.ln),
            "p_ln": _fmt_float(report.params.p.ln),
            "c": report.params.c,
        },
        "steps": _steps_json(steps),
        "container_log2_bound": _fmt_float(report.container_log2_bound),
        "target_log2": _fmt_float(report.target_log2),
        "overall_pass": report.overall_pass,
        "first_failing_step": report.first_failing_step,
    }
    rows = [["step", "kind", "relation", "lhs_log", "rhs_log", "pass", "margin_log"]]
    rows += [
        [s.step, s.kind, s.relation, f"{s.lhs_log:.17g}", f"{s.rhs_log:.17g}", s.passed, f"{s.margin_log:.17g}"]
        for s in steps
    ]
    return payload, rows, None


def _parse_delta(text: str | None):
    if text is None:
        return None
    return Fraction(text)


def _cmd_bounds(args, config: RunConfig):
    delta = _parse_delta(args.delta)
    report = bounds_mod.bounds_report(
        ell=args.ell, n=args.n, log2_n=args.log2_n, delta=delta
    )
    payload = {
        "schema": f"cliquelab.bounds.v{SCHEMA_VERSION}",
        "config": config.echo(),
        "l": report.ell,
        "mode": "exact" if report.n is not None else "log",
        "n": report.n,
        "log2_n": _fmt_float(report.log2_n) if report.log2_n is not None else None,
        "delta": report.delta,
        "lower_log2": str(report.lower_log2) if report.lower_log2 is not None else None,
        "weak_floor_log2": report.weak_floor_log2,
        "main_term_choose2_log2": report.main_term_choose2_log2,
        "main_term_half_square_log2": report.main_term_half_square_log2,
        "upper_log2": report.upper_log2,
        "exact_log2": report.exact_log2,
    }
    if report.supersat is not None:
        payload["supersat"] = {
            "t": report.supersat.t,
            "edge_threshold": report.supersat.edge_threshold,
            "k_value": report.supersat.k_value,
        }
    if report.case_report is not None:
        payload["case_analysis"] = {
            "case": report.case_report.case,
            "all_pass": report.case_report.all_pass,
            "checks": [
                {
                    "name": c.name,
                    "relation": c.relation,
                    "lhs_ln": _fmt_float(c.lhs_ln),
                    "rhs_ln": _fmt_float(c.rhs_ln),
                    "margin_ln": _fmt_float(c.margin_ln),
                    "pass": c.passed,
                }
                for c in report.case_report.checks
            ],
        }
    rows = [["key", "value"]]
    for key in (
        "lower_log2",
        "weak_floor_log2",
        "main_term_choose2_log2",
        "main_term_half_square_log2",
        "upper_log2",
    ):
        value = payload[key]
        rows.append([key, json.dumps(_jsonable(value))])
    return payload, rows, None


def _load_family(directory: str) -> list[LabeledGraph]:
    root = Path(directory)
    if not root.is_dir():
        raise ValueError(f"family directory not found: {directory}")
    return [
        from_text(path.read_text(encoding="utf-8")) for path in sorted(root.glob("*.txt"))
    ]


def _cmd_containers(args, config: RunConfig):
    if args.subcommand == "generate-maximal":
        family = oracle_mod.maximal_free_family(args.n, args.ell)
        texts = [to_text(g) for g in family]
        payload = {
            "schema": f"cliquelab.containers_generate.v{SCHEMA_VERSION}",
            "config": config.echo(),
            "n": args.n,
            "l": args.ell,
            "family_size": len(family),
            "members": texts,
        }
        rows = [["index", "edge_bits"]] + [[i, g.edges] for i, g in enumerate(family)]
        if config.output_path:
            outdir = Path(config.output_path)
            outdir = outdir.with_name(outdir.name + ".family")
            outdir.mkdir(parents=True, exist_ok=True)
            for i, text in enumerate(texts):
                (outdir / f"member_{i:05d}.txt").write_text(text, encoding="utf-8")
        return payload, rows, None

    family = _load_family(args.family)
    report = oracle_mod.validate_container_family(
        args.n, args.ell, family, Fraction(args.epsilon)
    )
    payload = {
        "schema": f"cliquelab.containers_validate.v{SCHEMA_VERSION}",
        "config": config.echo(),
        "n": report.n,
        "l": report.ell,
        "family_size": len(family),
        "covers_all": report.covers_all,
        "uncovered_example": report.uncovered_example,
        "max_clique_copies": report.max_clique_copies,
        "epsilon_budget": report.epsilon_budget,
        "copies_within_budget": report.copies_within_budget,
        "size_ok": report.size_ok,
    }
    rows = [["key", "value"]]
    for key in ("covers_all", "max_clique_copies", "epsilon_budget", "copies_within_budget"):
        rows.append([key, json.dumps(_jsonable(payload[key]))])
    if report.uncovered_example is not None:
        _write_sibling(config, ".uncovered.txt", to_text(report.uncovered_example))
    return payload, rows, None


_COMMANDS = {
    "census": _cmd_census,
    "supersat": _cmd_supersat,
    "codegree": _cmd_codegree,
    "certify": _cmd_certify,
    "bounds": _cmd_bounds,
    "containers": _cmd_containers,
}


def _make_config(args) -> RunConfig:
    parameters = {
        k: v
        for k, v in vars(args).items()
        if k not in ("command", "subcommand", "format", "out") and v is not None
    }
    override = bool(getattr(args, "override_guard", False))
    budget = getattr(args, "budget_secs", None)
    if override and budget is None:
        raise _UsageError("--override-guard requires --budget-secs")
    return RunConfig(
        command=args.command
        + ("." + args.subcommand if getattr(args, "subcommand", None) else ""),
        parameters=parameters,
        threads=getattr(args, "threads", 1),
        output_path=args.out,
        format=args.format,
        work_override=override,
        budget_secs=budget,
    )


def run(argv) -> int:
    """Parse argv, execute the command and emit its report; returns exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _make_config(args)
    except _UsageError as exc:
        print(f"cliquelab: error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    try:
        payload, rows, elapsed = _COMMANDS[args.command](args, config)
    except WorkGuardError as exc:
        print(f"cliquelab: refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (GraphError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"cliquelab: error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    emit_report(payload, rows, config)
    if elapsed is not None:
        print(f"cliquelab: elapsed_ms={elapsed * 1000.0:.3f}", file=sys.stderr)
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
