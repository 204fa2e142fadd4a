"""
Exact Module - Sector diagonalization, RHF orbitals and state characterization
"""

from .sector import (
    SectorBasis,
    build_sector_matrix,
    hf_determinant,
    occupation_string,
    operator_sector_matrix,
    s_squared_sector_matrix,
    sector_basis,
)
from .fermion import fermion_matrix, fock_space_matrix
from .eigen import EigenReport, diagonalize
from .scf import SCFResult, fix_column_phases, scf_rhf
from .characterize import (
    DISPLAY_CUTOFF,
    DOUBLE,
    GROUND,
    SINGLE,
    CharacterTable,
    ExcitationEnergy,
    StateCharacter,
    characterize,
    excitation_energies,
    reference_strings,
)
from .spectrum import SpectrumResult, compute_spectrum

__all__ = [
    "SectorBasis",
    "build_sector_matrix",
    "hf_determinant",
    "occupation_string",
    "operator_sector_matrix",
    "s_squared_sector_matrix",
    "sector_basis",
    "fermion_matrix",
    "fock_space_matrix",
    "EigenReport",
    "diagonalize",
    "SCFResult",
    "fix_column_phases",
    "scf_rhf",
    "DISPLAY_CUTOFF",
    "DOUBLE",
    "GROUND",
    "SINGLE",
    "CharacterTable",
    "ExcitationEnergy",
    "StateCharacter",
    "characterize",
    "excitation_energies",
    "reference_strings",
    "SpectrumResult",
    "compute_spectrum",
]
