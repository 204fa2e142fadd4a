"""
Statevector simulation

Amplitude index b encodes qubit q in bit q. Reshaped to (2,)*n, qubit q sits
on axis n-1-q.
"""

from typing import Sequence

import numpy as np

from hubbardq.exact.sector import SectorBasis
from hubbardq.exceptions import ValidationError
from hubbardq.qubit.pauli import PauliSum
from hubbardq.vqd.ansatz import AnsatzCircuit, a_gate

NORM_TOL = 1e-10


def basis_state(n_qubits: int, det: int) -> np.ndarray:
    state = np.zeros(1 << n_qubits, dtype=complex)
    state[det] = 1.0
    return state


def apply_two_qubit(state: np.ndarray, gate: np.ndarray, q: int, n_qubits: int) -> np.ndarray:
    """Apply a 4x4 gate in the |b_q b_{q+1}> basis to qubits (q, q+1)"""
    psi = state.reshape((2,) * n_qubits)
    axes = (n_qubits - 1 - q, n_qubits - 2 - q)
    out = np.tensordot(gate.reshape(2, 2, 2, 2), psi, axes=([2, 3], list(axes)))
    out = np.moveaxis(out, [0, 1], list(axes))
    return out.reshape(-1)


def apply_one_qubit(state: np.ndarray, gate: np.ndarray, q: int, n_qubits: int) -> np.ndarray:
    """Apply a 2x2 gate to qubit q"""
    psi = state.reshape((2,) * n_qubits)
    axis = n_qubits - 1 - q
    out = np.tensordot(gate, psi, axes=([1], [axis]))
    out = np.moveaxis(out, 0, axis)
    return out.reshape(-1)


def apply_circuit(circuit: AnsatzCircuit, params: Sequence[float]) -> np.ndarray:
    """
    Statevector of the circuit at ``params``

    Raises:
        ValidationError: Parameter count does not match the circuit
    """
    params = np.asarray(params, dtype=float)
    if params.shape != (circuit.n_params,):
        raise ValidationError(
            f"circuit takes {circuit.n_params} parameters, got {params.size}"
        )
    state = basis_state(circuit.n_qubits, circuit.initial)
    for g, (q, _) in enumerate(circuit.gates):
        state = apply_two_qubit(state, a_gate(params[2 * g], params[2 * g + 1]), q, circuit.n_qubits)
    return state


def circuit_unitary(circuit: AnsatzCircuit, params: Sequence[float]) -> np.ndarray:
    """Full 2^n x 2^n unitary of the gate sequence"""
    params = np.asarray(params, dtype=float)
    if params.shape != (circuit.n_params,):
        raise ValidationError(f"circuit takes {circuit.n_params} parameters, got {params.size}")
    n = circuit.n_qubits
    unitary = np.eye(1 << n, dtype=complex)
    for g, (q, _) in enumerate(circuit.gates):
        gate = a_gate(params[2 * g], params[2 * g + 1])
        unitary = np.column_stack([apply_two_qubit(unitary[:, c], gate, q, n) for c in range(1 << n)])
    return unitary


def expectation(psum: PauliSum, sv: np.ndarray) -> float:
    """<sv|H|sv> in eV"""
    sv = np.asarray(sv, dtype=complex)
    norm = np.linalg.norm(sv)
    if abs(norm - 1.0) > 1e-8:
        raise ValidationError(f"statevector is not normalized (norm {norm:.12f})")
    return psum.expectation(sv)


def embed_sector_state(vector: np.ndarray, basis: SectorBasis) -> np.ndarray:
    """Place sector amplitudes into the full 2^(2K) statevector"""
    vector = np.asarray(vector)
    if vector.shape != (len(basis),):
        raise ValidationError("vector length does not match the sector basis")
    state = np.zeros(1 << basis.n_modes, dtype=complex)
    state[basis.array] = vector
    return state


def rotate_orbitals(state: np.ndarray, C: np.ndarray, chunk: int = 64) -> np.ndarray:
    """
    Re-express a fixed-particle-number state over the orbitals
    phi~_j = sum_i phi_i C_ij in the original orbitals phi_i

    Occupation strings are creation operators in ascending qubit order, so
    psi'[R] = sum_Q det(U[R, Q]) psi[Q] with U = C on each spin.

    Raises:
        ValidationError: Shape mismatch or a state mixing particle numbers
    """
    C = np.asarray(C, dtype=float)
    state = np.asarray(state, dtype=complex)
    K = C.shape[0]
    n_qubits = 2 * K
    if C.shape != (K, K) or state.shape != (1 << n_qubits,):
        raise ValidationError(f"state of length {state.size} does not match a {C.shape} rotation")

    popcount = np.array([bin(b).count("1") for b in range(1 << n_qubits)])
    n_electrons = int(popcount[np.argmax(np.abs(state))])
    if np.linalg.norm(state[popcount != n_electrons]) > NORM_TOL:
        raise ValidationError("state mixes particle numbers")

    out = np.zeros_like(state)
    if n_electrons == 0:
        out[0] = state[0]
        return out

    dets = np.flatnonzero(popcount == n_electrons)
    occupied = np.array(
        [[q for q in range(n_qubits) if det >> q & 1] for det in dets], dtype=np.int64
    )
    amplitudes = state[dets]
    keep = np.abs(amplitudes) > 0
    columns, amplitudes = occupied[keep], amplitudes[keep]
    U = np.kron(C, np.eye(2))
    for start in range(0, len(dets), chunk):
        rows = occupied[start:start + chunk]
        minors = U[rows[:, None, :, None], columns[None, :, None, :]]
        out[dets[start:start + chunk]] = np.linalg.det(minors) @ amplitudes
    return out
