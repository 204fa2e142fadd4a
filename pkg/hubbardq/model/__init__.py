"""
Model Module - Extended-Hubbard parameters and second-quantized Hamiltonians
"""

from .params import (
    FIXTURES,
    InteractionVariant,
    ModelParameters,
    fixture_path,
    load_fixture,
    load_model_file,
    load_model_params,
)
from .hamiltonian import (
    BasisTag,
    SpinOrbitalHamiltonian,
    assemble_hamiltonian,
    build_one_body,
    build_two_body,
    canonical_key,
    rotate_basis,
    spin_orbital,
)
from .operators import (
    FermionTerm,
    apply_ops,
    apply_ops_array,
    hamiltonian_terms,
    number_terms,
    s_squared_terms,
    sz_terms,
)
from .fcidump import export_fcidump, read_fcidump

__all__ = [
    "FIXTURES",
    "InteractionVariant",
    "ModelParameters",
    "fixture_path",
    "load_fixture",
    "load_model_file",
    "load_model_params",
    "BasisTag",
    "SpinOrbitalHamiltonian",
    "assemble_hamiltonian",
    "build_one_body",
    "build_two_body",
    "canonical_key",
    "rotate_basis",
    "spin_orbital",
    "FermionTerm",
    "apply_ops",
    "apply_ops_array",
    "hamiltonian_terms",
    "number_terms",
    "s_squared_terms",
    "sz_terms",
    "export_fcidump",
    "read_fcidump",
]
