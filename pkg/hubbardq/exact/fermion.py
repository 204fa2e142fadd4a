"""Full Fock-space matrices built directly from fermionic rules"""

from typing import Iterable

import numpy as np
import scipy.sparse

from hubbardq.model.hamiltonian import SpinOrbitalHamiltonian
from hubbardq.model.operators import FermionTerm, apply_ops_array, hamiltonian_terms


def fock_space_matrix(terms: Iterable[FermionTerm], n_modes: int) -> scipy.sparse.csr_matrix:
    """Sparse 2^n x 2^n matrix in the occupation basis (mode 0 = least significant bit)"""
    dim = 1 << n_modes
    basis = np.arange(dim, dtype=np.int64)
    rows, cols, data = [], [], []
    for term in terms:
        if not term.ops:
            rows.append(basis)
            cols.append(basis)
            data.append(np.full(dim, float(term.coefficient)))
            continue
        signs, new, valid = apply_ops_array(term.ops, basis)
        rows.append(new[valid])
        cols.append(basis[valid])
        data.append(term.coefficient * signs[valid].astype(float))
    if not data:
        return scipy.sparse.csr_matrix((dim, dim))
    matrix = scipy.sparse.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    )
    return matrix.tocsr()


def fermion_matrix(ham: SpinOrbitalHamiltonian) -> scipy.sparse.csr_matrix:
    """Hamiltonian on the full 2^(2K) occupation space"""
    return fock_space_matrix(hamiltonian_terms(ham), ham.n_spin_orbitals)
