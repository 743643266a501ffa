"""
Command-line entry point.

    sympquot check         --input point.json
    sympquot divisor       --input point.json
    sympquot tangent       --input point.json
    sympquot fiber         --points pts.json --lagrangians lags.json [--output out.json]
    sympquot sample        --r 2 --d 3 --seed 7 [--kind q|reduced|tilde|fiber]
    sympquot report        --r 2 --d 2 --samples 5 --seed 7
    sympquot effectiveness --r 2 --trials 50 --samples 20 --seed 7 [--input matrix.json]

Exit codes: 0 success, 2 usage or input error, 3 membership false,
4 formula mismatch, 1 unexpected failure.
"""
# Importing dependencies.
import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, ValidationError, model_validator

from .config import Config
from .errors import InputFormatError, MembershipError, SympQuotError, UsageError
from .geometry.local_model import (
    divisor_map,
    from_lagrangians,
    is_in_q,
    is_in_tilde_q,
    local_model_summary,
    perfect_pairing_check,
    total_colength,
)
from .geometry.sampling import (
    random_fiber_member,
    random_q_member,
    random_tilde_q_member,
)
from .geometry.tangent import (
    build_tangent_system,
    expected_fiber_dimension,
    expected_hom_dimension,
    expected_symplectic_dimension,
    hom_space_dimension,
)
from .harness.effectiveness import effectiveness_sweep
from .harness.report import dimension_report
from .logging_setup import setup_logging
from .utils.quot_io import (
    dump_json,
    load_lagrangian_tuple,
    load_matrix,
    load_quot_point,
    provenance,
    quot_point_to_document,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_NOT_MEMBER = 3
EXIT_MISMATCH = 4

Command = Literal["check", "divisor", "tangent", "fiber", "sample", "report", "effectiveness"]
SampleKind = Literal["q", "reduced", "tilde", "fiber"]

SEEDED_COMMANDS = {"sample", "report", "effectiveness"}


class RunConfig(BaseModel):
    """One validated invocation; command-specific requirements are checked before any computation."""
    command: Command
    r: Optional[int] = Field(default=None, ge=1)
    d: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    samples: Optional[int] = Field(default=None, ge=1)
    trials: int = Field(default=50, ge=1)
    kind: SampleKind = "q"
    input_path: Optional[Path] = None
    points_path: Optional[Path] = None
    lagrangians_path: Optional[Path] = None
    output_format: Literal["json", "text"] = "json"
    output_path: Optional[Path] = None

    @model_validator(mode="after")
    def check_required(self) -> "RunConfig":
        command = self.command
        if command in {"check", "divisor", "tangent"} and self.input_path is None:
            raise ValueError(f"{command} requires --input")
        if command == "fiber" and self.input_path is None and (
                self.points_path is None or self.lagrangians_path is None):
            raise ValueError("fiber requires --points and --lagrangians (or --input with both)")
        if command in SEEDED_COMMANDS and self.seed is None:
            raise ValueError(f"{command} requires --seed")
        if command in {"sample", "report"} and (self.r is None or self.d is None):
            raise ValueError(f"{command} requires --r and --d")
        if command == "effectiveness" and self.r is None:
            raise ValueError("effectiveness requires --r")
        return self


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sympquot",
        description="Exact computations on Quot schemes of symplectic type.",
    )
    parser.add_argument("command", choices=["check", "divisor", "tangent", "fiber", "sample", "report", "effectiveness"])
    parser.add_argument("--r", type=int, help="half rank (report: largest r of the grid)")
    parser.add_argument("--d", type=int, help="divisor degree (report: largest d of the grid)")
    parser.add_argument("--seed", type=int, help="seed; mandatory for sample, report and effectiveness")
    parser.add_argument("--samples", type=int, help="samples per grid cell, or matrices for effectiveness")
    parser.add_argument("--trials", type=int, default=50, help="witness trials per matrix")
    parser.add_argument("--kind", default="q", choices=["q", "reduced", "tilde", "fiber"], help="sampler for `sample`")
    parser.add_argument("--input", dest="input_path", help="QuotPoint, Lagrangian tuple or matrix file")
    parser.add_argument("--points", dest="points_path", help="file with {points: [...]}")
    parser.add_argument("--lagrangians", dest="lagrangians_path", help="file with {lagrangians: [...]}")
    parser.add_argument("--format", dest="output_format", default="json", choices=["json", "text"])
    parser.add_argument("--output", dest="output_path", help="write the document here instead of stdout")
    parser.add_argument("--log-level", default=None, help="overrides SYMPQUOT_LOG_LEVEL")
    return parser


# ------------------------------------------------------------------
# Commands. Each returns (document, exit code, optional text rendering).
# ------------------------------------------------------------------
Outcome = Tuple[Dict[str, Any], int, Optional[str]]


def cmd_check(run: RunConfig) -> Outcome:
    q, seed = load_quot_point(run.input_path)
    in_tilde = is_in_tilde_q(q)
    in_q = is_in_q(q)
    document = {
        **provenance(q.r, q.d, q.order, seed),
        "in_tilde_q": in_tilde,
        "in_q": in_q,
        "total_colength": total_colength(q),
        "divisor": divisor_map(q).to_records(),
        "perfect_pairing": perfect_pairing_check(q) if in_q else None,
        "local_models": local_model_summary(q),
    }
    return document, EXIT_OK if in_q else EXIT_NOT_MEMBER, None


def cmd_divisor(run: RunConfig) -> Outcome:
    q, seed = load_quot_point(run.input_path)
    if not is_in_tilde_q(q):
        raise MembershipError("divisor map requires a member of Q-tilde")
    divisor = divisor_map(q)
    document = {
        **provenance(q.r, q.d, q.order, seed),
        "divisor": divisor.to_records(),
        "degree": divisor.degree,
        "reduced": divisor.is_reduced(),
        "in_q": is_in_q(q),
    }
    return document, EXIT_OK, None


def cmd_tangent(run: RunConfig) -> Outcome:
    q, seed = load_quot_point(run.input_path)
    system = build_tangent_system(q)
    reduced = divisor_map(q).is_reduced()
    hom_dim = hom_space_dimension(q)
    tangent_dim = system.kernel_dimension()
    fiber_dim = system.fixed_divisor_kernel_dimension()
    hom_expected = expected_hom_dimension(q.r, q.d)
    tangent_expected = expected_symplectic_dimension(q.r, q.d) if reduced else None
    fiber_expected = expected_fiber_dimension(q.r, q.d) if reduced else None
    match = hom_dim == hom_expected and tangent_expected in (None, tangent_dim)
    document = {
        **provenance(q.r, q.d, q.order, seed),
        "divisor_type": "reduced" if reduced else "non-reduced",
        "hom_dim": hom_dim,
        "hom_expected": hom_expected,
        "tangent_dim": tangent_dim,
        "tangent_expected": tangent_expected,
        "fiber_dim": fiber_dim,
        "fiber_expected": fiber_expected,
        "constraints": system.constraint_matrix.rows,
        "match": match,
    }
    return document, EXIT_OK if match else EXIT_MISMATCH, None


def cmd_fiber(run: RunConfig) -> Outcome:
    points_path = run.points_path or run.input_path
    lagrangians_path = run.lagrangians_path or run.input_path
    points, subspaces = load_lagrangian_tuple(points_path, lagrangians_path)
    q = from_lagrangians(points, subspaces)
    return quot_point_to_document(q), EXIT_OK, None


def cmd_sample(run: RunConfig) -> Outcome:
    samplers: Dict[str, Callable] = {
        "q": lambda: random_q_member(run.r, run.d, run.seed),
        "reduced": lambda: random_q_member(run.r, run.d, run.seed, reduced=True),
        "tilde": lambda: random_tilde_q_member(run.r, run.d, run.seed),
        "fiber": lambda: random_fiber_member(run.r, run.d, run.seed),
    }
    q = samplers[run.kind]()
    return quot_point_to_document(q, seed=run.seed), EXIT_OK, None


def cmd_report(run: RunConfig) -> Outcome:
    report = dimension_report(run.r, run.d, run.samples or 5, run.seed)
    document = {
        **provenance(run.r, run.d, None, run.seed),
        "samples": report.samples,
        "all_match": report.all_match(),
        "grid": [row.model_dump() for row in report.grid],
    }
    return document, EXIT_OK if report.all_match() else EXIT_MISMATCH, report.render_text()


def cmd_effectiveness(run: RunConfig) -> Outcome:
    explicit = load_matrix(run.input_path) if run.input_path is not None else None
    report = effectiveness_sweep(run.r, run.samples or 20, run.trials, run.seed, explicit=explicit)
    document = {
        **provenance(run.r, None, None, run.seed),
        "trials": report.trials,
        "all_ok": report.all_ok(),
        "rows": [row.model_dump() for row in report.rows],
    }
    return document, EXIT_OK if report.all_ok() else EXIT_MISMATCH, report.render_text()


COMMANDS: Dict[str, Callable[[RunConfig], Outcome]] = {
    "check": cmd_check,
    "divisor": cmd_divisor,
    "tangent": cmd_tangent,
    "fiber": cmd_fiber,
    "sample": cmd_sample,
    "report": cmd_report,
    "effectiveness": cmd_effectiveness,
}


def render_text(document: Dict[str, Any]) -> str:
    """Plain `key: value` listing of a document."""
    width = max((len(k) for k in document), default=0)
    return "\n".join(f"{key:<{width}}  {document[key]}" for key in sorted(document))


def _emit(run: RunConfig, document: Dict[str, Any], text: Optional[str]) -> None:
    if run.output_format == "json":
        payload = dump_json(document)
    else:
        payload = (text if text is not None else render_text(document)) + "\n"
    if run.output_path is not None:
        run.output_path.write_text(payload, encoding="utf-8")
        logger.info("--- CLI: wrote %s ---", run.output_path)
    else:
        sys.stdout.write(payload)


def _usage_error(message: str) -> int:
    sys.stderr.write(f"error: {message}\n")
    return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(args.log_level)
    logger.debug("--- CLI: settings %s ---", Config.describe())

    options = {k: v for k, v in vars(args).items() if k != "log_level" and v is not None}
    try:
        run = RunConfig.model_validate(options)
    except ValidationError as e:
        first: Dict[str, Any] = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        return _usage_error(f"{where}: {first['msg']}" if where else first["msg"])

    try:
        document, code, text = COMMANDS[run.command](run)
    except (UsageError, InputFormatError) as e:
        return _usage_error(str(e))
    except MembershipError as e:
        return _not_member(str(e))
    except SympQuotError as e:
        return _usage_error(str(e))
    except Exception:
        logger.exception("--- CLI: unexpected failure in %s ---", run.command)
        return EXIT_UNEXPECTED

    _emit(run, document, text)
    return code


def _not_member(message: str) -> int:
    sys.stderr.write(f"not a member: {message}\n")
    return EXIT_NOT_MEMBER


if __name__ == "__main__":
    sys.exit(main())
