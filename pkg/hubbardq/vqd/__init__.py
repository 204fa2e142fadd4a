"""
VQD Module - A-gate ansatz, statevector simulation, deflation and shot sampling
"""

from .ansatz import (
    AnsatzCircuit,
    a_gate,
    a_gate_derivatives,
    brick_wall_pairs,
    build_ansatz,
    default_layers,
)
from .statevector import (
    apply_circuit,
    apply_one_qubit,
    apply_two_qubit,
    basis_state,
    circuit_unitary,
    embed_sector_state,
    expectation,
    rotate_orbitals,
)
from .deflation import VQDOptions, VQDResult, VQDState, optimize_vqd, vqd_cost, vqd_gradient
from .sampling import (
    Allocation,
    SamplingReport,
    allocate_shots,
    repeat_sampling,
    rotate_to_basis,
    sample_energy,
)

__all__ = [
    "AnsatzCircuit",
    "a_gate",
    "a_gate_derivatives",
    "brick_wall_pairs",
    "build_ansatz",
    "default_layers",
    "apply_circuit",
    "apply_one_qubit",
    "apply_two_qubit",
    "basis_state",
    "circuit_unitary",
    "embed_sector_state",
    "expectation",
    "rotate_orbitals",
    "VQDOptions",
    "VQDResult",
    "VQDState",
    "optimize_vqd",
    "vqd_cost",
    "vqd_gradient",
    "Allocation",
    "SamplingReport",
    "allocate_shots",
    "repeat_sampling",
    "rotate_to_basis",
    "sample_energy",
]
