"""
Common utilities for CLI - shared by all commands
"""

import hashlib
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple
from uuid import uuid4

import click
from rich.console import Console
from rich.panel import Panel

from hubbardq.config import RunConfig
from hubbardq.exceptions import HubbardError, InputError, ParameterFileError
from hubbardq.model.params import FIXTURES, InteractionVariant, fixture_path
from hubbardq.observability import (
    MetricsCollector,
    close_all_loggers,
    mainLogger,
    setup_logging,
    write_report,
)

console = Console(stderr=True)

VARIANT_CHOICES = ("with-exchange", "coulomb-only", "both")


def package_version() -> str:
    from hubbardq import __version__
    return __version__


def resolve_model(model: str) -> Path:
    """
    Model argument to a parameter file path

    Accepts an existing file path or the name of a shipped fixture.

    Raises:
        ParameterFileError: Neither a file nor a fixture
    """
    path = Path(model).expanduser()
    if path.is_file():
        return path
    if model in FIXTURES:
        return fixture_path(model)
    raise ParameterFileError(
        f"no such model file or fixture: {model!r} (fixtures: {', '.join(FIXTURES)})"
    )


def resolve_variants(variant: Optional[str]) -> Optional[List[InteractionVariant]]:
    """None keeps the variant stored in the parameter file"""
    if variant is None:
        return None
    if variant == "both":
        return [InteractionVariant.WITH_EXCHANGE, InteractionVariant.COULOMB_ONLY]
    return [InteractionVariant.parse(variant)]


def variant_path(path: Path, variant: InteractionVariant, multiple: bool) -> Path:
    """``out.fcidump`` -> ``out.with-exchange.fcidump`` when several variants share one path"""
    path = Path(path)
    if not multiple:
        return path
    return path.with_name(f"{path.stem}.{variant.value}{path.suffix}")


def file_sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def report_header(command: str, inputs: List[Path], cfg: RunConfig,
                  options: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Version, input hashes and effective configuration embedded in every report"""
    return {
        "tool": "hubbardq",
        "version": package_version(),
        "command": command,
        "inputs": [{"path": str(p), "sha256": file_sha256(p)} for p in inputs],
        "config": cfg.to_dict(),
        "options": options or {},
    }


def _generate_run_id(command: str) -> str:
    """Generate a unique run ID (logs only, never part of a report)"""
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    return f"{command}_{timestamp}_{uuid4().hex[:8]}"


def load_config(config_path: Optional[str], **cli_args) -> RunConfig:
    """
    Load configuration and merge CLI arguments, exiting with status 2 on
    invalid values
    """
    cfg = RunConfig.merge_with_cli_args(RunConfig.load(config_path), **cli_args)
    validation_errors = cfg.validate()
    if validation_errors:
        console.print("[red]Configuration Errors:[/red]")
        for error in validation_errors:
            console.print(f"  - {error}")
        sys.exit(2)
    return cfg


def emit_report(report: Dict[str, Any], output: Optional[str]) -> None:
    """Write the report to ``output`` or standard output"""
    text = write_report(report, Path(output) if output else None)
    if output:
        console.print(f"[green]✓ Report written:[/green] {output}")
    else:
        click.echo(text, nl=False)


def print_error(error: BaseException, verbose: bool = False) -> None:
    kind = "Input error" if isinstance(error, InputError) else "Numerical error"
    console.print(Panel(str(error), title=f"[red]{kind}[/red]", border_style="red"))
    if verbose:
        import traceback
        console.print(traceback.format_exc())


def run_command(
    cfg: RunConfig,
    command: str,
    input_path: Optional[Path],
    pipeline: Callable[[MetricsCollector], Dict[str, Any]],
) -> Tuple[int, Optional[Dict[str, Any]]]:
    """
    Set up observability, run one pipeline and map failures to exit codes

    Returns:
        (exit_code, report); report is None on failure
    """
    run_id = _generate_run_id(command)
    setup_logging(
        run_id=run_id,
        input_path=str(input_path) if input_path else None,
        logs_dir=cfg.logging.logs_dir,
        verbose=bool(cfg.logging.verbose),
    )
    metrics = MetricsCollector(run_id=run_id, command=command)
    exit_code = 0
    report = None
    try:
        report = pipeline(metrics)
    except HubbardError as e:
        mainLogger.error("Command failed", command=command, error=str(e),
                         error_type=type(e).__name__)
        print_error(e, verbose=bool(cfg.logging.verbose))
        exit_code = e.exit_code
    finally:
        mainLogger.info("Run metrics", **metrics.generate_summary())
        close_all_loggers()
    return exit_code, report
