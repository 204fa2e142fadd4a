"""
Command pipelines - each returns a deterministic JSON-ready report

Reports carry no timestamps or timings; those go to the run log through the
metrics collector.
"""

from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from hubbardq.cli.common import report_header, resolve_variants, variant_path
from hubbardq.config import RunConfig
from hubbardq.exact import DISPLAY_CUTOFF, compute_spectrum
from hubbardq.exceptions import ValidationError
from hubbardq.fitkit import fit_band_extrapolation, read_band_csv
from hubbardq.model import (
    ModelParameters,
    assemble_hamiltonian,
    export_fcidump,
    load_model_file,
    rotate_basis,
)
from hubbardq.exact.scf import scf_rhf
from hubbardq.observability import MetricsCollector, TraceWriter, mainLogger
from hubbardq.qubit import CHEMICAL_ACCURACY_HARTREE, jordan_wigner, resource_summary
from hubbardq.vqd import VQDOptions, optimize_vqd, repeat_sampling, rotate_orbitals


def _scf_settings(cfg: RunConfig) -> Dict[str, Any]:
    return {k: v for k, v in asdict(cfg.scf).items() if v is not None}


def _model_variants(path: Path, variant: Optional[str]) -> List[ModelParameters]:
    params = load_model_file(path)
    variants = resolve_variants(variant)
    if variants is None:
        return [params]
    return [params.with_variant(v) for v in variants]


def _spectrum_entry(spectrum, cutoff: float) -> Dict[str, Any]:
    scf = spectrum.scf
    return {
        "molecule": spectrum.molecule,
        "variant": spectrum.variant,
        "scf": {
            "energy_ev": scf.scf_energy,
            "iterations": scf.iterations,
            "damping": scf.damping,
            "orbital_energies_ev": scf.orbital_energies,
        },
        "ground_energy_ev": spectrum.ground_energy,
        "excitations": [
            {"label": e.label, "energy_ev": e.energy, "delta_e_ev": e.delta_e}
            for e in spectrum.excitations
        ],
        "states": spectrum.table.to_dict(cutoff),
    }


def cmd_spectrum(
    cfg: RunConfig,
    metrics: MetricsCollector,
    model_path: Path,
    variant: Optional[str] = None,
    n_states: Optional[int] = None,
    cutoff: float = DISPLAY_CUTOFF,
    fcidump: Optional[Path] = None,
) -> Dict[str, Any]:
    """Excitation energies and CI characterization per interaction variant"""
    with metrics.track_stage("load"):
        models = _model_variants(model_path, variant)

    results = []
    for params in models:
        with metrics.track_stage(f"spectrum:{params.interaction_variant.value}"):
            spectrum = compute_spectrum(params, n_states, _scf_settings(cfg))
        results.append(_spectrum_entry(spectrum, cutoff))
        if fcidump is not None:
            destination = variant_path(fcidump, params.interaction_variant, len(models) > 1)
            export_fcidump(assemble_hamiltonian(params), destination)

    options = {"variant": variant, "n_states": n_states, "cutoff": cutoff,
               "fcidump": str(fcidump) if fcidump else None}
    report = report_header("spectrum", [model_path], cfg, options)
    report["results"] = results
    return report


def cmd_norm(
    cfg: RunConfig,
    metrics: MetricsCollector,
    model_path: Path,
    variant: Optional[str] = None,
    epsilon: float = CHEMICAL_ACCURACY_HARTREE,
) -> Dict[str, Any]:
    """L1-norm, term count, group count and cost estimates per variant"""
    with metrics.track_stage("load"):
        models = _model_variants(model_path, variant)

    results = []
    for params in models:
        with metrics.track_stage(f"norm:{params.interaction_variant.value}") as stage:
            psum = jordan_wigner(assemble_hamiltonian(params))
            summary = resource_summary(psum, epsilon)
            stage.count("pauli_terms", summary.n_term)
        entry = {"molecule": params.molecule_name, "variant": params.interaction_variant.value}
        entry.update(asdict(summary))
        results.append(entry)
        mainLogger.info("Resource summary", molecule=params.molecule_name,
                        variant=params.interaction_variant.value, n_term=summary.n_term,
                        lambda_hartree=summary.lambda_hartree, n_groups=summary.n_groups)

    report = report_header("norm", [model_path], cfg, {"variant": variant, "epsilon": epsilon})
    report["results"] = results
    return report


def _vqd_options(cfg: RunConfig) -> VQDOptions:
    vqd = cfg.vqd
    return VQDOptions(
        layers=vqd.layers,
        betas=tuple(vqd.betas) if vqd.betas is not None else None,
        seed=cfg.sampling.seed,
        restarts=vqd.restarts,
        tol=vqd.tol,
        max_evaluations=vqd.max_evaluations,
        spin_penalty=vqd.spin_penalty,
        overlap_tol=vqd.overlap_tol,
        method=vqd.method,
    )


def cmd_vqd_sample(
    cfg: RunConfig,
    metrics: MetricsCollector,
    model_path: Path,
    variant: Optional[str] = None,
    trace: Optional[Path] = None,
) -> Dict[str, Any]:
    """
    VQD in the RHF canonical basis followed by repeated shot sampling of every
    state

    With ``sampling.basis == "wannier"`` each VQD state is carried back to the
    Wannier orbitals and sampled against the Wannier-basis qubit Hamiltonian;
    the energy is unchanged but the per-term variances are those of the
    model as given. Sampling of state k uses seeds seed + k * repeats + i so
    that no two states share a stream. Energies are reported against the
    exact ground state of the same sector.
    """
    sampling = cfg.sampling
    if sampling.repeats is None or sampling.repeats < 2:
        raise ValidationError(f"repeats must be at least 2, got {sampling.repeats}")
    options = _vqd_options(cfg)

    with metrics.track_stage("load"):
        models = _model_variants(model_path, variant)

    writer = TraceWriter(trace) if trace is not None else None
    results = []
    try:
        for params in models:
            tag = params.interaction_variant.value
            with metrics.track_stage(f"exact:{tag}"):
                spectrum = compute_spectrum(params, scf_settings=_scf_settings(cfg))
                psum = jordan_wigner(spectrum.rotated)
                if sampling.basis == "wannier":
                    sampled = jordan_wigner(assemble_hamiltonian(params))
                else:
                    sampled = psum
            e0 = spectrum.ground_energy

            with metrics.track_stage(f"vqd:{tag}") as stage:
                vqd = optimize_vqd(psum, cfg.vqd.n_states, params.n_electrons, options, writer)
                stage.count("evaluations", sum(s.evaluations for s in vqd.states))

            reports = []
            with metrics.track_stage(f"sampling:{tag}") as stage:
                for state in vqd.states:
                    sv = vqd.statevector(state.index)
                    if sampling.basis == "wannier":
                        sv = rotate_orbitals(sv, spectrum.scf.C)
                    report = repeat_sampling(
                        sampled,
                        sv,
                        shots=sampling.shots,
                        repeats=sampling.repeats,
                        grouping_mode=sampling.grouping,
                        seed=sampling.seed + state.index * sampling.repeats,
                        reference_energy=e0,
                        allocation=sampling.allocation,
                    )
                    entry = report.summary()
                    stage.count("shots", entry["total_shots"] * sampling.repeats)
                    entry["basis"] = sampling.basis
                    entry["state"] = state.index
                    entry["shots_per_group"] = list(report.shots_per_group)
                    reports.append(entry)

            results.append({
                "molecule": params.molecule_name,
                "variant": tag,
                "exact": {
                    "ground_energy_ev": e0,
                    "excitations": [
                        {"label": e.label, "delta_e_ev": e.delta_e} for e in spectrum.excitations
                    ],
                },
                "vqd": {
                    "n_qubits": vqd.circuit.n_qubits,
                    "layers": vqd.circuit.layers,
                    "n_params": vqd.circuit.n_params,
                    "betas": list(vqd.betas),
                    "converged": vqd.converged,
                    "states": [
                        {
                            "index": s.index,
                            "energy_ev": s.energy,
                            "delta_e_ev": s.energy - e0,
                            "s_squared": s.s_squared,
                            "overlaps": list(s.overlaps),
                            "evaluations": s.evaluations,
                            "restart": s.restart,
                            "converged": s.converged,
                            "message": s.message,
                            "parameters": np.asarray(s.parameters),
                        }
                        for s in vqd.states
                    ],
                },
                "sampling": reports,
            })
    finally:
        if writer is not None:
            writer.close()

    options_used = {"variant": variant, "trace": str(trace) if trace else None}
    report = report_header("vqd-sample", [model_path], cfg, options_used)
    report["results"] = results
    return report


def cmd_fit(
    cfg: RunConfig,
    metrics: MetricsCollector,
    csv_path: Path,
    label: Optional[str] = None,
) -> Dict[str, Any]:
    """Band-count extrapolation of one CSV series"""
    with metrics.track_stage("fit") as stage:
        series = read_band_csv(csv_path, label)
        result = fit_band_extrapolation(series)
        stage.count("iterations", result.iterations)

    report = report_header("fit", [csv_path], cfg, {"label": label})
    report["series"] = {
        "label": series.label,
        "n_band": series.n_band,
        "delta_e_ev": series.delta_e,
    }
    report["fit"] = asdict(result)
    report["fit"]["last_gap_ev"] = abs(float(series.delta_e[-1]) - result.delta_e_inf)
    return report


def cmd_export_fcidump(
    cfg: RunConfig,
    metrics: MetricsCollector,
    model_path: Path,
    destination: Path,
    variant: Optional[str] = None,
    basis: str = "wannier",
) -> Dict[str, Any]:
    """Write FCIDUMP files in the Wannier or the RHF canonical basis"""
    if basis not in ("wannier", "canonical"):
        raise ValidationError(f"basis must be wannier or canonical, got {basis!r}")

    with metrics.track_stage("load"):
        models = _model_variants(model_path, variant)

    files = []
    for params in models:
        with metrics.track_stage(f"export:{params.interaction_variant.value}"):
            ham = assemble_hamiltonian(params)
            if basis == "canonical":
                ham = rotate_basis(ham, scf_rhf(ham, params.n_electrons, **_scf_settings(cfg)).C)
            path = variant_path(destination, params.interaction_variant, len(models) > 1)
            counts = export_fcidump(ham, path, params.n_electrons)
        files.append({"path": str(path), "variant": params.interaction_variant.value,
                      "lines": counts})

    report = report_header("export-fcidump", [model_path], cfg,
                           {"variant": variant, "basis": basis, "destination": str(destination)})
    report["files"] = files
    return report
