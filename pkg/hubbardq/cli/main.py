"""
Main CLI Entry Point - Unified command-line interface
"""

import sys
from functools import partial
from pathlib import Path

import click

from hubbardq import __version__
from hubbardq.cli.common import (
    VARIANT_CHOICES,
    console,
    emit_report,
    load_config,
    print_error,
    resolve_model,
    run_command,
)
from hubbardq.cli.pipelines import (
    cmd_export_fcidump,
    cmd_fit,
    cmd_norm,
    cmd_spectrum,
    cmd_vqd_sample,
)
from hubbardq.exact import DISPLAY_CUTOFF
from hubbardq.exceptions import InputError
from hubbardq.qubit import CHEMICAL_ACCURACY_HARTREE


def _common_options(func):
    """--config, --out, --verbose and --logs-dir shared by every command"""
    func = click.option("--logs-dir", help="Base directory for run logs (default: no file logs)")(func)
    func = click.option("-v", "--verbose", is_flag=True, default=None,
                        help="Mirror log records to stderr")(func)
    func = click.option("--out", type=click.Path(dir_okay=False),
                        help="Write the JSON report here instead of standard output")(func)
    func = click.option("--config", type=click.Path(exists=True, dir_okay=False),
                        help="Path to configuration file")(func)
    return func


def _variant_option(func):
    return click.option(
        "--variant",
        type=click.Choice(VARIANT_CHOICES),
        help="Interaction variant (default: the one stored in the parameter file)",
    )(func)


def _resolve_or_exit(model: str, verbose: bool) -> Path:
    try:
        return resolve_model(model)
    except InputError as e:
        print_error(e, verbose)
        sys.exit(e.exit_code)


def _finish(exit_code: int, report, out) -> None:
    if report is not None:
        emit_report(report, out)
    sys.exit(exit_code)


@click.group()
@click.version_option(version=__version__, prog_name="hubbardq")
def main():
    """
    hubbardq - extended-Hubbard models on qubits

    \b
    Examples:
        # Exact excitation energies of both interaction variants
        hubbardq spectrum ethylene --variant both

        # L1-norm and term count of a parameter file
        hubbardq norm models/butadiene.yaml --variant coulomb-only

        # VQD followed by shot sampling
        hubbardq vqd-sample butadiene --shots 10000 --repeats 1000 --grouping abelian

        # Band-count extrapolation of a CSV series
        hubbardq fit bands.csv --out fit.json
    """


@main.command()
@click.argument("model")
@_variant_option
@click.option("--n-states", type=int, help="Lowest eigenpairs to keep (default: whole sector)")
@click.option("--cutoff", type=float, default=DISPLAY_CUTOFF, show_default=True,
              help="Smallest |CI coefficient| listed per state")
@click.option("--fcidump", type=click.Path(dir_okay=False),
              help="Also export the Wannier-basis Hamiltonian as FCIDUMP")
@_common_options
def spectrum(model, variant, n_states, cutoff, fcidump, config, out, verbose, logs_dir):
    """Exact excitation energies and CI characterization of MODEL"""
    cfg = load_config(config, command="spectrum", inputs=[model], output=out,
                      verbose=verbose, logs_dir=logs_dir)
    path = _resolve_or_exit(model, bool(cfg.logging.verbose))
    pipeline = partial(cmd_spectrum, cfg, model_path=path, variant=variant, n_states=n_states,
                       cutoff=cutoff, fcidump=Path(fcidump) if fcidump else None)
    _finish(*run_command(cfg, "spectrum", path, pipeline), out)


@main.command()
@click.argument("model")
@_variant_option
@click.option("--epsilon", type=float, default=CHEMICAL_ACCURACY_HARTREE, show_default=True,
              help="Target precision in hartree")
@_common_options
def norm(model, variant, epsilon, config, out, verbose, logs_dir):
    """Pauli L1-norm, term count and cost estimates of MODEL"""
    cfg = load_config(config, command="norm", inputs=[model], output=out,
                      verbose=verbose, logs_dir=logs_dir)
    path = _resolve_or_exit(model, bool(cfg.logging.verbose))
    pipeline = partial(cmd_norm, cfg, model_path=path, variant=variant, epsilon=epsilon)
    _finish(*run_command(cfg, "norm", path, pipeline), out)


@main.command("vqd-sample")
@click.argument("model")
@_variant_option
@click.option("--seed", type=int, help="Base seed (default: 42)")
@click.option("--shots", type=int,
              help="Shots per measurement group, or the total for uniform/weighted (default: 10000)")
@click.option("--repeats", type=int, help="Independent estimates per state (default: 1000)")
@click.option("--grouping", type=click.Choice(["abelian", "none"]), help="Measurement grouping")
@click.option("--allocation", type=click.Choice(["per_group", "uniform", "weighted"]),
              help="Shots per group, or a total budget split over groups (default: per_group)")
@click.option("--basis", type=click.Choice(["wannier", "canonical"]),
              help="Orbital basis of the sampled Hamiltonian (default: wannier)")
@click.option("--layers", type=int, help="Brick-wall layers (default: two A-gates per determinant)")
@click.option("--n-states", type=int, help="States to optimize (default: 3)")
@click.option("--restarts", type=int, help="Optimizations per state (default: 5)")
@click.option("--method", type=click.Choice(["L-BFGS-B", "Nelder-Mead", "Powell"]),
              help="Optimizer (default: L-BFGS-B)")
@click.option("--trace", type=click.Path(dir_okay=False), help="JSONL trace of optimizer costs")
@_common_options
def vqd_sample(model, variant, seed, shots, repeats, grouping, allocation, basis, layers,
               n_states, restarts, method, trace, config, out, verbose, logs_dir):
    """VQD of the lowest states of MODEL followed by repeated shot sampling"""
    cfg = load_config(
        config,
        command="vqd-sample",
        inputs=[model],
        output=out,
        seed=seed,
        shots=shots,
        repeats=repeats,
        grouping=grouping,
        allocation=allocation,
        basis=basis,
        layers=layers,
        n_states=n_states,
        restarts=restarts,
        method=method,
        verbose=verbose,
        logs_dir=logs_dir,
    )
    path = _resolve_or_exit(model, bool(cfg.logging.verbose))
    pipeline = partial(cmd_vqd_sample, cfg, model_path=path, variant=variant,
                       trace=Path(trace) if trace else None)
    _finish(*run_command(cfg, "vqd-sample", path, pipeline), out)


@main.command()
@click.argument("csv_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--label", help="Series label (default: file stem)")
@_common_options
def fit(csv_file, label, config, out, verbose, logs_dir):
    """Fit dE_inf + b exp(-N_band / c) to CSV_FILE rows 'n_band,delta_e_ev'"""
    cfg = load_config(config, command="fit", inputs=[csv_file], output=out,
                      verbose=verbose, logs_dir=logs_dir)
    path = Path(csv_file)
    pipeline = partial(cmd_fit, cfg, csv_path=path, label=label)
    _finish(*run_command(cfg, "fit", path, pipeline), out)


@main.command("export-fcidump")
@click.argument("model")
@click.argument("destination", type=click.Path(dir_okay=False))
@_variant_option
@click.option("--basis", type=click.Choice(["wannier", "canonical"]), default="wannier",
              show_default=True, help="Orbital basis of the exported integrals")
@_common_options
def export_fcidump(model, destination, variant, basis, config, out, verbose, logs_dir):
    """Write MODEL as FCIDUMP (hartree) to DESTINATION"""
    cfg = load_config(config, command="export-fcidump", inputs=[model], output=out,
                      verbose=verbose, logs_dir=logs_dir)
    path = _resolve_or_exit(model, bool(cfg.logging.verbose))
    pipeline = partial(cmd_export_fcidump, cfg, model_path=path,
                       destination=Path(destination), variant=variant, basis=basis)
    exit_code, report = run_command(cfg, "export-fcidump", path, pipeline)
    if report is not None and out is None:
        for entry in report["files"]:
            console.print(f"[green]✓ FCIDUMP written:[/green] {entry['path']}")
        sys.exit(exit_code)
    _finish(exit_code, report, out)


if __name__ == "__main__":
    main()
