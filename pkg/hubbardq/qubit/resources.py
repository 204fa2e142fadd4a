"""
Resource Estimates - L1 norm, term count and cost formulas

lambda is the sum of |h_l| over non-identity Pauli terms. Cost formulas are
order-of-magnitude estimates; no factorization of the Hamiltonian is done.
"""

import math
from dataclasses import dataclass
from typing import Dict

from hubbardq.exceptions import ValidationError
from hubbardq.qubit.grouping import abelian_group
from hubbardq.qubit.pauli import PauliSum
from hubbardq.units import HARTREE_EV

# about 1 kcal/mol
CHEMICAL_ACCURACY_HARTREE = 0.0016


def l1_norm(psum: PauliSum, unit: str = "hartree") -> float:
    """
    Sum of absolute non-identity coefficients

    Args:
        psum: Pauli sum in eV
        unit: "hartree" (default) or "eV", case-insensitive
    """
    total_ev = sum(abs(c) for c in psum.non_identity_terms().values())
    key = unit.strip().lower()
    if key == "hartree":
        return total_ev / HARTREE_EV
    if key == "ev":
        return total_ev
    raise ValidationError(f"unknown unit {unit!r}")


def term_count(psum: PauliSum) -> int:
    """Number of stored Pauli strings, identity included"""
    return len(psum)


@dataclass(frozen=True)
class MeasurementBound:
    """Worst-case measurement count for target precision epsilon (sigma_l = 1)"""
    m_bound: float
    lambda_: float
    epsilon: float
    allocation: Dict[str, float]


def measurement_bound(psum: PauliSum, epsilon: float) -> MeasurementBound:
    """
    M = (lambda / epsilon)^2 with shots per term proportional to |h_l|

    Args:
        psum: Pauli sum in eV
        epsilon: Target precision in hartree
    """
    if epsilon <= 0:
        raise ValidationError(f"epsilon must be positive, got {epsilon}")
    terms = psum.non_identity_terms()
    lam = l1_norm(psum)
    total_ev = sum(abs(c) for c in terms.values())
    allocation = {p: abs(c) / total_ev for p, c in terms.items()} if total_ev > 0 else {}
    return MeasurementBound(
        m_bound=(lam / epsilon) ** 2,
        lambda_=lam,
        epsilon=epsilon,
        allocation=allocation,
    )


def qdrift_cost(lambda_: float, epsilon: float) -> int:
    """Conventional qDRIFT channel count ceil(2 lambda^2 / epsilon^2)"""
    if lambda_ <= 0 or epsilon <= 0:
        raise ValidationError("lambda and epsilon must be positive")
    return math.ceil(2.0 * lambda_ ** 2 / epsilon ** 2)


def qubitization_scalings(lambda_: float, epsilon: float, n_spin_orbitals: int) -> Dict[str, float]:
    """Single-factorized (N^1.5 lambda/eps) and THC (N lambda/eps) Toffoli scalings"""
    if lambda_ <= 0 or epsilon <= 0:
        raise ValidationError("lambda and epsilon must be positive")
    return {
        "single_factorization": n_spin_orbitals ** 1.5 * lambda_ / epsilon,
        "tensor_hypercontraction": n_spin_orbitals * lambda_ / epsilon,
    }


@dataclass(frozen=True)
class ResourceSummary:
    n_qubits: int
    n_term: int
    lambda_hartree: float
    lambda_ev: float
    n_groups: int
    epsilon: float
    m_bound: float
    qdrift: int
    qubitization: Dict[str, float]


def resource_summary(psum: PauliSum, epsilon: float = CHEMICAL_ACCURACY_HARTREE) -> ResourceSummary:
    """All cost diagnostics of one Pauli sum at precision epsilon (hartree)"""
    lam = l1_norm(psum)
    bound = measurement_bound(psum, epsilon)
    return ResourceSummary(
        n_qubits=psum.n_qubits,
        n_term=term_count(psum),
        lambda_hartree=lam,
        lambda_ev=l1_norm(psum, unit="eV"),
        n_groups=len(abelian_group(psum)),
        epsilon=epsilon,
        m_bound=bound.m_bound,
        qdrift=qdrift_cost(lam, epsilon) if lam > 0 else 0,
        qubitization=qubitization_scalings(lam, epsilon, psum.n_qubits) if lam > 0 else {},
    )
