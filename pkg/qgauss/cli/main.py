"""Command-line front end: ``qgauss moment|norm|spectrum|sweep``."""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, List, Optional

import yaml
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from ..bounds import NormCertifier
from ..config import Config
from ..errors import QGaussError
from ..export import Exporter, format_number
from ..fock import moment_fock
from ..ncpoly import NcPolynomial, parse
from ..spectra import SweepOptions, adjacent_hausdorff, spectrum_estimate, sweep
from ..wick import moment_oracle
from .models import BudgetModel, CertificateModel, RunConfig, SpectrumDocument, SweepRowModel

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poly", required=True, help='Polynomial text, e.g. "X1*X2 + X2*X1"')
    common.add_argument("--config", type=Path, help="YAML overlay on top of the packaged defaults")
    common.add_argument(
        "--log-level", dest="log_level", type=str.upper, choices=["DEBUG", "INFO", "WARNING", "ERROR"]
    )
    common.add_argument("--out", type=Path, help="Write output to this file instead of stdout")
    common.add_argument("--format", choices=["csv", "json"], help="Output format")
    common.add_argument("--threads", type=int, help="Worker threads (default: machine parallelism)")
    common.add_argument("--d", type=int, help="Number of generators; may only raise the inferred value")
    return common


def _add_bound_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, help="Run a single fixed power n instead of escalating")
    parser.add_argument("--gap", type=float, help="Target width of the certified interval")
    parser.add_argument("--n-max", dest="n_max", type=int, help="Largest n of the doubling schedule")
    parser.add_argument("--variant", choices=["per_level", "aggregated"], help="Direct Haagerup bound variant")
    parser.add_argument("--max-level", dest="max_level", type=int, help="Largest Fock level a step may touch")
    parser.add_argument("--max-block-dim", dest="max_block_dim", type=int, help="Largest Gram block allowed")


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="qgauss", description="Moments, norms and spectra of q-Gaussian polynomials")
    commands = parser.add_subparsers(dest="command", required=True)

    moment = commands.add_parser("moment", parents=[common], help="Vacuum moment tau(P)")
    moment.add_argument("--q", type=float, required=True)
    moment.add_argument("--method", choices=["wick", "fock"], default="fock")

    norm = commands.add_parser("norm", parents=[common], help="Certified bracket for the operator norm")
    norm.add_argument("--q", type=float, required=True)
    _add_bound_flags(norm)

    spectrum = commands.add_parser("spectrum", parents=[common], help="Eigenvalues of a truncated compression")
    spectrum.add_argument("--q", type=float, default=0.0)
    spectrum.add_argument("--level", type=int, help="Truncation level N")

    sweeper = commands.add_parser("sweep", parents=[common], help="Norm certificates over a q grid")
    sweeper.add_argument("--q-from", dest="q_from", type=float, required=True)
    sweeper.add_argument("--q-to", dest="q_to", type=float, required=True)
    sweeper.add_argument("--steps", type=int, required=True)
    sweeper.add_argument("--level", type=int, help="Truncation level N for --with-spectra")
    sweeper.add_argument("--with-spectra", dest="with_spectra", action="store_true")
    _add_bound_flags(sweeper)
    return parser


def configure_logging(level: str) -> None:
    handler = RichHandler(console=Console(stderr=True), show_path=False)
    package_logger = logging.getLogger("qgauss")
    package_logger.handlers[:] = [handler]
    package_logger.setLevel(level.upper())


def _first(*values: Any) -> Any:
    for value in values:
        if value is not None:
            return value
    return None


def build_run_config(args: argparse.Namespace, config: Config) -> RunConfig:
    bounds = config.section("bounds")
    budget = config.section("budget")
    spectra = config.section("spectra")
    runtime = config.section("runtime")
    return RunConfig(
        command=args.command,
        poly=args.poly,
        q=getattr(args, "q", None),
        q_from=getattr(args, "q_from", None),
        q_to=getattr(args, "q_to", None),
        steps=getattr(args, "steps", None),
        method=getattr(args, "method", "fock"),
        n=getattr(args, "n", None),
        target_gap=getattr(args, "gap", None),
        n_max=_first(getattr(args, "n_max", None), bounds.get("n_max"), 64),
        variant=_first(getattr(args, "variant", None), bounds.get("variant"), "per_level"),
        budget=BudgetModel(
            max_level=_first(getattr(args, "max_level", None), budget.get("max_level"), 256),
            max_block_dim=_first(getattr(args, "max_block_dim", None), budget.get("max_block_dim"), 4096),
        ),
        level=_first(getattr(args, "level", None), spectra.get("level"), 8),
        d=args.d,
        out=args.out,
        format=args.format,
        threads=_first(args.threads, runtime.get("threads")),
        with_spectra=getattr(args, "with_spectra", False),
    )


def build_certifier(run: RunConfig, config: Config) -> NormCertifier:
    """Config-file bounds with the command-line overrides already folded into ``run``."""
    bounds = {**config.section("bounds"), "n_max": run.n_max, "variant": run.variant}
    return NormCertifier.from_config(bounds, run.budget.model_dump())


def run_moment(run: RunConfig, P: NcPolynomial, exporter: Exporter) -> int:
    if run.method == "wick":
        value = moment_oracle(P, run.q, workers=run.threads)
    else:
        value = moment_fock(P, run.q)
    exporter.write(format_number(value) + "\n", run.out)
    return EXIT_OK


def run_norm(run: RunConfig, P: NcPolynomial, exporter: Exporter, config: Config) -> int:
    certifier = build_certifier(run, config)
    certificate = certifier.certify(P, run.q, target_gap=run.target_gap, n=run.n)
    model = CertificateModel.from_certificate(certificate)
    if run.format == "csv":
        fields = list(CertificateModel.model_fields)
        values = model.model_dump()
        text = ",".join(fields) + "\n" + ",".join(_csv_value(values[name]) for name in fields) + "\n"
        exporter.write(text, run.out)
    else:
        exporter.export_json(model.model_dump(), run.out)
    if certificate.exhausted_budget:
        logger.warning("budget exhausted before the target gap; reported bracket has width %.6g", certificate.gap)
        return EXIT_BUDGET
    return EXIT_OK


def _csv_value(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format_number(value)
    return str(value)


def run_spectrum(run: RunConfig, P: NcPolynomial, exporter: Exporter) -> int:
    estimate = spectrum_estimate(P, run.q, run.level, dimension=run.d)
    if run.format == "csv":
        exporter.export_spectrum(estimate, format="csv", path=run.out)
    else:
        exporter.export_json(SpectrumDocument.from_estimate(estimate).model_dump(), run.out)
    return EXIT_OK


def run_sweep(run: RunConfig, P: NcPolynomial, exporter: Exporter, config: Config) -> int:
    options = replace(
        SweepOptions.from_config(config.section("spectra"), config.section("runtime")),
        target_gap=run.target_gap,
        n=run.n,
        with_spectra=run.with_spectra,
        level=run.level,
        dimension=run.d,
        workers=run.threads,
    )
    rows = sweep(P, run.q_from, run.q_to, run.steps, options, build_certifier(run, config))
    if run.format == "json":
        exporter.export_json([SweepRowModel.from_row(row).model_dump() for row in rows], run.out)
    else:
        exporter.export_sweep(rows, run.out)
    if run.with_spectra and run.out is not None:
        spectra = [row.spectrum for row in rows if row.spectrum is not None]
        document = {
            "spectra": [SpectrumDocument.from_estimate(estimate).model_dump() for estimate in spectra],
            "adjacent_hausdorff": adjacent_hausdorff(spectra),
        }
        exporter.export_json(document, spectra_path(run.out))
    if any(row.exhausted_budget for row in rows):
        logger.warning("budget exhausted at %d of %d grid points", sum(row.exhausted_budget for row in rows), len(rows))
        return EXIT_BUDGET
    return EXIT_OK


def spectra_path(out: Path) -> Path:
    """``s.csv`` -> ``s.spectra.json``."""
    return out.with_name(out.stem + ".spectra.json")


def _fail(message: str) -> int:
    print(f"qgauss: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def main(argv: Optional[List[str]] = None, exporter: Optional[Exporter] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        config = Config.load(args.config)
    except FileNotFoundError as exc:
        return _fail(str(exc))
    except yaml.YAMLError as exc:
        return _fail(f"cannot read config {args.config}: {' '.join(str(exc).split())}")
    configure_logging(args.log_level or config.section("logging").get("level") or "WARNING")
    logger.debug("configuration layers: %s", ", ".join(config.sources))

    try:
        run = build_run_config(args, config)
    except ValidationError as exc:
        return _fail("; ".join(error["msg"] for error in exc.errors()))

    exporter = exporter or Exporter()
    try:
        P = parse(run.poly)
        if run.d is not None:
            P = P.with_dimension(run.d)
        if run.command == "moment":
            return run_moment(run, P, exporter)
        if run.command == "norm":
            return run_norm(run, P, exporter, config)
        if run.command == "spectrum":
            return run_spectrum(run, P, exporter)
        return run_sweep(run, P, exporter, config)
    except QGaussError as exc:
        return _fail(str(exc))


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover - manual execution
    run()
