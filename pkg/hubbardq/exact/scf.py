"""
Restricted Hartree-Fock in the model space

Gives the canonical orbitals the spectrum is characterized in. The density
matrix is P = C_occ C_occ^T (closed shell), the Fock matrix
F = h + sum_rs P_rs [2 (pq|rs) - (ps|rq)] and E = sum P (h + F) + constant.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from hubbardq.exceptions import ConvergenceError, ValidationError
from hubbardq.model.hamiltonian import SpinOrbitalHamiltonian
from hubbardq.observability import mainLogger

MAX_ITERATIONS = 200
CONV_TOL = 1e-10
COMMUTATOR_TOL = 1e-9
FALLBACK_DAMPING = 0.5


@dataclass(frozen=True)
class SCFResult:
    """
    Attributes:
        C: K x K orthogonal matrix, columns are canonical orbitals
        scf_energy: Total RHF energy (eV)
        orbital_energies: Ascending Fock eigenvalues (eV)
        iterations: Iterations of the successful run
        damping: Density mixing used by the successful run
    """
    C: np.ndarray
    scf_energy: float
    orbital_energies: np.ndarray
    iterations: int
    damping: float


def fix_column_phases(C: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Flip columns so the first entry of largest magnitude is positive"""
    C = np.array(C, dtype=float)
    for j in range(C.shape[1]):
        column = np.abs(C[:, j])
        lead = int(np.flatnonzero(column >= column.max() - tol)[0])
        if C[lead, j] < 0:
            C[:, j] *= -1
    return C


def _fock(h: np.ndarray, eri: np.ndarray, P: np.ndarray) -> np.ndarray:
    return h + 2.0 * np.einsum("pqrs,rs->pq", eri, P) - np.einsum("psrq,rs->pq", eri, P)


def _density(C: np.ndarray, n_occ: int) -> np.ndarray:
    occ = C[:, :n_occ]
    return occ @ occ.T


def _run_scf(ham: SpinOrbitalHamiltonian, n_occ: int, max_iterations: int, conv_tol: float,
             commutator_tol: float, damping: float):
    h = ham.h1_spatial
    eri = ham.eri_dense()

    _, C = scipy.linalg.eigh(h)
    P = _density(C, n_occ)
    energy = np.inf

    for iteration in range(1, max_iterations + 1):
        F = _fock(h, eri, P)
        energy = float(np.sum(P * (h + F))) + ham.constant
        commutator = float(np.linalg.norm(F @ P - P @ F))

        _, C = scipy.linalg.eigh(F)
        P_new = _density(C, n_occ)
        if damping:
            P_new = (1.0 - damping) * P_new + damping * P
        delta = float(np.max(np.abs(P_new - P)))
        P = P_new

        if delta < conv_tol or commutator < commutator_tol:
            # refresh orbitals from the converged density
            F = _fock(h, eri, P)
            orbital_energies, C = scipy.linalg.eigh(F)
            P = _density(C, n_occ)
            energy = float(np.sum(P * (h + _fock(h, eri, P)))) + ham.constant
            return True, iteration, energy, C, orbital_energies

        mainLogger.debug("SCF iteration", iteration=iteration, energy=energy,
                         delta_density=delta, commutator=commutator)

    return False, max_iterations, energy, C, None


def scf_rhf(
    ham: SpinOrbitalHamiltonian,
    n_electrons: int,
    max_iterations: int = MAX_ITERATIONS,
    conv_tol: float = CONV_TOL,
    commutator_tol: float = COMMUTATOR_TOL,
    damping: float = FALLBACK_DAMPING,
) -> SCFResult:
    """
    Closed-shell RHF by fixed-point iteration

    An undamped run is tried first; if it does not converge the run is
    repeated with density mixing ``damping``.

    Raises:
        ValidationError: Odd electron count
        ConvergenceError: Neither run converged
    """
    if n_electrons % 2:
        raise ValidationError(f"closed-shell RHF needs an even electron count, got {n_electrons}")
    n_occ = n_electrons // 2
    if n_occ > ham.K:
        raise ValidationError(f"{n_electrons} electrons do not fit in {ham.K} orbitals")

    energy = np.inf
    for mixing in (0.0, damping):
        converged, iterations, energy, C, orbital_energies = _run_scf(
            ham, n_occ, max_iterations, conv_tol, commutator_tol, mixing
        )
        if converged:
            mainLogger.info("SCF converged", molecule=ham.name, iterations=iterations,
                            energy=energy, damping=mixing)
            return SCFResult(
                C=fix_column_phases(C),
                scf_energy=energy,
                orbital_energies=orbital_energies,
                iterations=iterations,
                damping=mixing,
            )
        mainLogger.warning("SCF not converged", molecule=ham.name, iterations=iterations,
                           energy=energy, damping=mixing)

    raise ConvergenceError(
        f"RHF did not converge in {max_iterations} iterations (damping {damping})",
        best_value=energy,
        iterations=max_iterations,
    )
