"""
Jordan-Wigner mapping of fermionic term lists to Pauli sums

    a+_p -> Z_0 .. Z_{p-1} (X_p - iY_p) / 2
    a_p  -> Z_0 .. Z_{p-1} (X_p + iY_p) / 2
"""

from functools import lru_cache
from typing import Dict, Iterable, Tuple

from hubbardq.model.hamiltonian import SpinOrbitalHamiltonian
from hubbardq.model.operators import (
    FermionTerm,
    hamiltonian_terms,
    number_terms,
    s_squared_terms,
    sz_terms,
)
from hubbardq.observability import mainLogger
from hubbardq.qubit.pauli import PauliSum, identity_string, pauli_product

ComplexTerms = Dict[str, complex]


@lru_cache(maxsize=None)
def _ladder(mode: int, creation: bool, n_qubits: int) -> Tuple[Tuple[str, complex], ...]:
    prefix = "Z" * mode
    suffix = "I" * (n_qubits - mode - 1)
    y_phase = -0.5j if creation else 0.5j
    return (
        (prefix + "X" + suffix, 0.5),
        (prefix + "Y" + suffix, y_phase),
    )


def _multiply(left: ComplexTerms, right: Iterable[Tuple[str, complex]]) -> ComplexTerms:
    right = tuple(right)
    out: ComplexTerms = {}
    for s1, c1 in left.items():
        for s2, c2 in right:
            phase, letters = pauli_product(s1, s2)
            out[letters] = out.get(letters, 0.0) + phase * c1 * c2
    return out


def map_terms(terms: Iterable[FermionTerm], n_qubits: int) -> PauliSum:
    """Jordan-Wigner image of a fermionic term list"""
    identity = identity_string(n_qubits)
    total: ComplexTerms = {}
    for term in terms:
        product: ComplexTerms = {identity: complex(term.coefficient)}
        for mode, creation in term.ops:
            product = _multiply(product, _ladder(mode, creation, n_qubits))
        for letters, coeff in product.items():
            total[letters] = total.get(letters, 0.0) + coeff
    return PauliSum.from_complex(n_qubits, total)


def jordan_wigner(ham: SpinOrbitalHamiltonian) -> PauliSum:
    """
    Map a spin-orbital Hamiltonian onto qubits

    Args:
        ham: Hamiltonian with 2K spin orbitals

    Returns:
        PauliSum on 2K qubits (eV), identity string included
    """
    psum = map_terms(hamiltonian_terms(ham), ham.n_spin_orbitals)
    mainLogger.debug(
        "Jordan-Wigner mapped",
        molecule=ham.name,
        basis=ham.basis_tag.value,
        n_qubits=psum.n_qubits,
        n_terms=len(psum),
    )
    return psum


def number_operator(n_qubits: int) -> PauliSum:
    return map_terms(number_terms(n_qubits), n_qubits)


def sz_operator(n_qubits: int) -> PauliSum:
    return map_terms(sz_terms(n_qubits), n_qubits)


def s_squared_operator(n_qubits: int) -> PauliSum:
    return map_terms(s_squared_terms(n_qubits), n_qubits)
