"""Spectrum pipeline: model -> SCF -> canonical-basis sector diagonalization -> labels"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from hubbardq.exact.characterize import CharacterTable, ExcitationEnergy, characterize, excitation_energies
from hubbardq.exact.eigen import diagonalize
from hubbardq.exact.scf import SCFResult, scf_rhf
from hubbardq.exact.sector import build_sector_matrix, sector_basis
from hubbardq.model.hamiltonian import SpinOrbitalHamiltonian, assemble_hamiltonian, rotate_basis
from hubbardq.model.params import ModelParameters
from hubbardq.observability import mainLogger


@dataclass(frozen=True)
class SpectrumResult:
    molecule: str
    variant: str
    scf: SCFResult
    rotated: SpinOrbitalHamiltonian
    table: CharacterTable
    excitations: List[ExcitationEnergy]

    @property
    def ground_energy(self) -> float:
        return float(self.table.report.energies[0])


def compute_spectrum(
    params: ModelParameters,
    n_states: Optional[int] = None,
    scf_settings: Optional[Dict[str, Any]] = None,
) -> SpectrumResult:
    """
    Exact spectrum of the closed-shell sector with 1^1B_u / 2^1A_g excitation energies

    Args:
        params: Model parameters
        n_states: Lowest eigenpairs to keep (the whole sector when None)
        scf_settings: Keyword overrides for scf_rhf (max_iterations, conv_tol, ...)
    """
    ham = assemble_hamiltonian(params)
    scf = scf_rhf(ham, params.n_electrons, **(scf_settings or {}))
    rotated = rotate_basis(ham, scf.C)

    basis = sector_basis(params.K, params.n_alpha, params.n_beta)
    report = diagonalize(build_sector_matrix(rotated, basis), n_states, basis)
    table = characterize(report, rotated)
    excitations = excitation_energies(table.report)

    mainLogger.info(
        "Spectrum computed",
        molecule=params.molecule_name,
        variant=params.interaction_variant.value,
        sector_dim=len(basis),
        ground_energy=float(report.energies[0]),
        excitations={e.label: round(e.delta_e, 6) for e in excitations},
    )
    return SpectrumResult(
        molecule=params.molecule_name,
        variant=params.interaction_variant.value,
        scf=scf,
        rotated=rotated,
        table=table,
        excitations=excitations,
    )
