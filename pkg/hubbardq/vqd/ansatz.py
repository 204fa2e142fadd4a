"""
Particle-conserving brick-wall ansatz

The A-gate acts on qubits (q, q+1) in the basis |b_q b_{q+1}> ordered
|00>, |01>, |10>, |11>. It is the identity on |00> and |11> and mixes the
one-particle pair:

    [[cos t,            e^{i p} sin t],
     [e^{-i p} sin t,  -cos t        ]]
"""

from dataclasses import dataclass
from math import comb
from typing import Optional, Tuple

import numpy as np

from hubbardq.exact.sector import hf_determinant, occupation_string
from hubbardq.exceptions import ValidationError


def a_gate(theta: float, phi: float) -> np.ndarray:
    """4x4 particle-conserving A-gate"""
    c, s = np.cos(theta), np.sin(theta)
    gate = np.zeros((4, 4), dtype=complex)
    gate[0, 0] = 1.0
    gate[3, 3] = 1.0
    gate[1, 1] = c
    gate[1, 2] = np.exp(1j * phi) * s
    gate[2, 1] = np.exp(-1j * phi) * s
    gate[2, 2] = -c
    return gate


def a_gate_derivatives(theta: float, phi: float) -> Tuple[np.ndarray, np.ndarray]:
    """Partial derivatives of ``a_gate`` with respect to theta and phi"""
    c, s = np.cos(theta), np.sin(theta)
    phase = np.exp(1j * phi)
    d_theta = np.zeros((4, 4), dtype=complex)
    d_theta[1, 1] = -s
    d_theta[1, 2] = phase * c
    d_theta[2, 1] = np.conj(phase) * c
    d_theta[2, 2] = s
    d_phi = np.zeros((4, 4), dtype=complex)
    d_phi[1, 2] = 1j * phase * s
    d_phi[2, 1] = -1j * np.conj(phase) * s
    return d_theta, d_phi


def _layer_pairs(n_qubits: int, layer: int) -> range:
    return range(layer % 2, n_qubits - 1, 2)


def brick_wall_pairs(n_qubits: int, layers: int) -> Tuple[Tuple[int, int], ...]:
    """Even layers on (0,1),(2,3),...; odd layers on (1,2),(3,4),..."""
    pairs = []
    for layer in range(layers):
        for q in _layer_pairs(n_qubits, layer):
            pairs.append((q, q + 1))
    return tuple(pairs)


def default_layers(n_qubits: int, n_electrons: int) -> int:
    """
    Shallowest brick wall with at least two A-gates per determinant of the
    n_electrons subspace
    """
    target = 2 * comb(n_qubits, n_electrons)
    layers, gates = 0, 0
    while gates < target:
        gates += len(_layer_pairs(n_qubits, layers))
        layers += 1
    return max(layers, 1)


@dataclass(frozen=True)
class AnsatzCircuit:
    """
    Attributes:
        n_qubits: 2K
        initial: Occupation bitmask of the reference state
        gates: Qubit pairs in application order; gate g uses parameters
            (theta, phi) = params[2g], params[2g + 1]
        layers: Number of brick-wall layers
    """
    n_qubits: int
    initial: int
    gates: Tuple[Tuple[int, int], ...]
    layers: int

    @property
    def n_params(self) -> int:
        return 2 * len(self.gates)

    @property
    def n_electrons(self) -> int:
        return bin(self.initial).count("1")

    @property
    def initial_string(self) -> str:
        return occupation_string(self.initial, self.n_qubits)


def build_ansatz(K: int, n_electrons: int, layers: Optional[int] = None) -> AnsatzCircuit:
    """
    Brick-wall A-gate circuit on 2K qubits starting from the HF string

    Args:
        K: Orbital count
        n_electrons: Electrons in the reference string
        layers: Layer count, ``default_layers`` when None
    """
    n_qubits = 2 * K
    if not 0 <= n_electrons <= n_qubits:
        raise ValidationError(f"n_electrons must be within [0, {n_qubits}]")
    layers = default_layers(n_qubits, n_electrons) if layers is None else layers
    if layers < 1:
        raise ValidationError(f"layers must be at least 1, got {layers}")
    return AnsatzCircuit(
        n_qubits=n_qubits,
        initial=hf_determinant(n_electrons),
        gates=brick_wall_pairs(n_qubits, layers),
        layers=layers,
    )
