"""Command-line front end: ``qumea check|preclusions|coevents --model ...``.

Exit codes: 0 success, 1 I/O or schema error, 2 axiom violation,
3 capacity guard, 4 empty co-event family.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from .coevents import DEFAULT_MAX_DIM, PreclusiveFamily, minimal_preclusive
from .errors import AxiomViolationError, CapacityError, QumeaError
from .events import DEFAULT_MAX_HISTORIES
from .measure import (
    DEFAULT_TOL,
    PreclusionReport,
    build_from_matrix,
    diagnose,
    is_classical,
    measure,
    precluded_events,
)
from .models import history_matrix, resolve_model

EXIT_OK = 0
EXIT_IO = 1
EXIT_AXIOM = 2
EXIT_CAPACITY = 3
EXIT_EMPTY = 4

EPS_ENV = "QUMEA_EPS"


@dataclass
class RunConfig:
    model: str
    eps: float | None = None
    tol: float | None = None
    unital_only: bool = False
    output: str = "text"
    max_histories: int = DEFAULT_MAX_HISTORIES
    max_dim: int = DEFAULT_MAX_DIM

    def __post_init__(self):
        if self.eps is not None and not self.eps > 0:
            raise ValueError("eps must be positive")
        if self.tol is not None and not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.output not in ("json", "tsv", "text"):
            raise ValueError(f"unknown output format {self.output!r}")


def _functional(config: RunConfig):
    spec = resolve_model(config.model)
    tol = config.tol if config.tol is not None else (spec.tol or DEFAULT_TOL)
    return spec, spec.space, history_matrix(spec), tol


def cmd_check(config: RunConfig) -> tuple[str, int]:
    spec, space, m, tol = _functional(config)
    diag = diagnose(m, tol)
    report = {
        "model": config.model,
        "histories": space.n,
        "tol": tol,
        "scale": diag.scale,
        "hermiticity_residual": diag.hermiticity_residual,
        "worst_entry": [space.labels[k] for k in diag.worst_entry],
        "min_eigenvalue": diag.min_eigenvalue,
        "hermitian": diag.hermitian,
        "strongly_positive": diag.positive,
    }
    code = EXIT_OK
    try:
        d = build_from_matrix(space, m, tol)
    except AxiomViolationError as exc:
        report["pass"] = False
        report["error"] = str(exc)
        code = EXIT_AXIOM
    else:
        report["pass"] = True
        report["classical"] = is_classical(d)
        report["mu_omega"] = measure(d, space.unit)
    return _render_check(report, config.output), code


def _render_check(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2)
    if fmt == "tsv":
        return "\n".join(f"{k}\t{_tsv(v)}" for k, v in report.items())
    lines = [f"model: {report['model']} ({report['histories']} histories)"]
    lines.append(
        f"hermiticity residual: {report['hermiticity_residual']:.3e} "
        f"(worst entry {report['worst_entry'][0]},{report['worst_entry'][1]})"
    )
    lines.append(f"minimum eigenvalue: {report['min_eigenvalue']:.6g}")
    if report["pass"]:
        lines.append(f"mu(Omega) = {report['mu_omega']:.12g}")
        lines.append(f"classical: {str(report['classical']).lower()}")
        lines.append("axioms: pass")
    else:
        lines.append(f"axioms: FAIL ({report['error']})")
    return "\n".join(lines)


def _tsv(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def _report(config: RunConfig) -> PreclusionReport:
    spec, space, m, tol = _functional(config)
    d = build_from_matrix(space, m, tol)
    eps = config.eps
    if eps is None and os.environ.get(EPS_ENV):
        eps = float(os.environ[EPS_ENV])
        if not eps > 0:
            raise ValueError(f"{EPS_ENV} must be positive")
    return precluded_events(d, eps, max_histories=config.max_histories)


def _event_text(labels) -> str:
    return "{" + ", ".join(labels) + "}"


def cmd_preclusions(config: RunConfig) -> tuple[str, int]:
    report = _report(config)
    if config.output == "json":
        out = report.to_dict()
        out["model"] = config.model
        return json.dumps(out, indent=2), EXIT_OK
    if config.output == "tsv":
        lines = ["event\tsize\tmeasure"]
        for e, mu in zip(report.zero_events, report.zero_measures):
            lines.append(f"{','.join(e.labels)}\t{len(e)}\t{mu!r}")
        return "\n".join(lines), EXIT_OK
    lines = [
        f"model: {config.model}",
        f"eps: {report.eps:.3e}",
        f"precluded events: {len(report.zero_events)} (span rank {report.span_rank})",
    ]
    for e, mu in zip(report.zero_events, report.zero_measures):
        lines.append(f"  {_event_text(e.labels)}  mu={mu:.3e}")
    return "\n".join(lines), EXIT_OK


def cmd_coevents(config: RunConfig) -> tuple[str, int]:
    report = _report(config)
    family = minimal_preclusive(report, config.unital_only, max_dim=config.max_dim)
    code = EXIT_EMPTY if family.empty else EXIT_OK
    return _render_family(config, report, family), code


def _render_family(config: RunConfig, report: PreclusionReport,
                   family: PreclusiveFamily) -> str:
    if config.output == "json":
        out = family.to_dict()
        out = {"model": config.model, "eps": report.eps, "span_rank": report.span_rank, **out}
        return json.dumps(out, indent=2)
    if config.output == "tsv":
        lines = ["support\tsize\tunital\tmultiplicative"]
        for phi in family.selected:
            d = phi.to_dict()
            lines.append(
                f"{','.join(d['support'])}\t{len(phi)}\t"
                f"{_tsv(d['unital'])}\t{_tsv(d['multiplicative'])}"
            )
        return "\n".join(lines)
    lines = [
        f"model: {config.model}",
        f"preclusive co-events: dimension {family.dimension}",
        f"minimal: {len(family.minimal)} ({len(family.minimal_unital)} unital)",
    ]
    for phi in family.selected:
        tags = []
        if len(phi) % 2:
            tags.append("unital")
        if len(phi) == 1:
            tags.append("classical")
        lines.append(f"  {phi}" + (f"   [{', '.join(tags)}]" if tags else ""))
    if family.diagnostic:
        lines.append(f"note: {family.diagnostic}")
    return "\n".join(lines)


COMMANDS = {
    "check": cmd_check,
    "preclusions": cmd_preclusions,
    "coevents": cmd_coevents,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qumea",
        description="Quantal measures, precluded events and minimal preclusive co-events.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("check", "verify decoherence-functional axioms"),
        ("preclusions", "list every event of measure zero"),
        ("coevents", "list the minimal preclusive co-events"),
    ]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--model", required=True,
                       help="three-slit | hardy | hardy:<mixing> | classical:p1,... | "
                            "n-slit:re:im,... | path to a JSON model")
        p.add_argument("--eps", type=float, default=None,
                       help=f"absolute preclusion threshold (default 1e-9 * max diagonal; "
                            f"env {EPS_ENV})")
        p.add_argument("--tol", type=float, default=None, help="relative numeric tolerance")
        p.add_argument("--unital-only", action="store_true",
                       help="report only unital minimal co-events")
        p.add_argument("--output", choices=["json", "tsv", "text"], default="text")
        p.add_argument("--max-histories", type=int, default=DEFAULT_MAX_HISTORIES)
        p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            model=args.model,
            eps=args.eps,
            tol=args.tol,
            unital_only=args.unital_only,
            output=args.output,
            max_histories=args.max_histories,
            max_dim=args.max_dim,
        )
        text, code = COMMANDS[args.command](config)
    except AxiomViolationError as exc:
        print(f"axiom violation: {exc}", file=sys.stderr)
        return EXIT_AXIOM
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (QumeaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(text)
    if code == EXIT_EMPTY:
        print("empty co-event family: no preclusive reality is available", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
