"""
Fermionic operator term lists

A term is ``(coefficient, ops)`` where ``ops`` is a tuple of
``(mode, is_creation)`` read left to right as an operator product. Terms act on
occupation bitmasks (bit p set = mode p occupied) with the Jordan-Wigner sign
(-1)^(number of occupied modes below p), the same convention the qubit map uses.
"""

from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from hubbardq.model.hamiltonian import SpinOrbitalHamiltonian

Ladder = Tuple[int, bool]


class FermionTerm(NamedTuple):
    coefficient: float
    ops: Tuple[Ladder, ...]


def apply_ops(ops: Tuple[Ladder, ...], det: int) -> Optional[Tuple[int, int]]:
    """
    Apply an operator product to a determinant

    Returns:
        (sign, new_det), or None when the product annihilates the determinant
    """
    sign = 1
    for mode, creation in reversed(ops):
        occupied = (det >> mode) & 1
        if occupied == creation:
            return None
        if bin(det & ((1 << mode) - 1)).count("1") % 2:
            sign = -sign
        det ^= 1 << mode
    return sign, det


def hamiltonian_terms(ham: SpinOrbitalHamiltonian, tol: float = 0.0) -> List[FermionTerm]:
    """Expand a Hamiltonian into spin-orbital ladder-operator terms"""
    terms: List[FermionTerm] = []
    if ham.constant != 0.0:
        terms.append(FermionTerm(ham.constant, ()))

    n = ham.n_spin_orbitals
    for p in range(n):
        for q in range(n):
            value = ham.h1[p, q]
            if abs(value) > tol:
                terms.append(FermionTerm(float(value), ((p, True), (q, False))))

    for (p, q, r, s), value in ham.eri_items():
        if abs(value) <= tol:
            continue
        for sigma in (0, 1):
            for tau in (0, 1):
                P, Q = 2 * p + sigma, 2 * q + sigma
                R, S = 2 * r + tau, 2 * s + tau
                if P == R or Q == S:
                    continue
                terms.append(FermionTerm(0.5 * value, ((P, True), (R, True), (S, False), (Q, False))))
    return terms


def number_terms(n_spin_orbitals: int) -> List[FermionTerm]:
    """Total particle number N = sum_p n_p"""
    return [FermionTerm(1.0, ((p, True), (p, False))) for p in range(n_spin_orbitals)]


def sz_terms(n_spin_orbitals: int) -> List[FermionTerm]:
    """S_z = 1/2 sum_i (n_i,alpha - n_i,beta)"""
    return [
        FermionTerm(0.5 if p % 2 == 0 else -0.5, ((p, True), (p, False)))
        for p in range(n_spin_orbitals)
    ]


def s_squared_terms(n_spin_orbitals: int) -> List[FermionTerm]:
    """S^2 = S_- S_+ + S_z (S_z + 1)"""
    K = n_spin_orbitals // 2
    terms: List[FermionTerm] = []
    # S_- S_+ = sum_ij a+_i,beta a_i,alpha a+_j,alpha a_j,beta
    for i in range(K):
        for j in range(K):
            terms.append(FermionTerm(
                1.0,
                ((2 * i + 1, True), (2 * i, False), (2 * j, True), (2 * j + 1, False)),
            ))

    sz = sz_terms(n_spin_orbitals)
    for a in sz:
        for b in sz:
            terms.append(FermionTerm(a.coefficient * b.coefficient, a.ops + b.ops))
    terms.extend(sz)
    return terms


def apply_ops_array(ops: Tuple[Ladder, ...], dets: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorized ``apply_ops`` over an array of determinants

    Returns:
        (signs, new_dets, valid) where ``valid`` marks surviving determinants
    """
    dets = np.asarray(dets, dtype=np.int64).copy()
    signs = np.ones(dets.shape, dtype=np.int64)
    valid = np.ones(dets.shape, dtype=bool)
    for mode, creation in reversed(ops):
        occupied = (dets >> mode) & 1
        valid &= occupied != int(creation)
        below = np.zeros_like(dets)
        for q in range(mode):
            below ^= (dets >> q) & 1
        signs *= 1 - 2 * below
        dets ^= 1 << mode
    return signs, dets, valid
