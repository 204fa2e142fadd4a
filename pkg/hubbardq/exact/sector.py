"""
Particle-number sectors

Determinants with fixed alpha and beta counts, as 2K-bit occupation masks in
the interleaved ordering (bit 2i alpha, bit 2i+1 beta), sorted ascending.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, Tuple

import numpy as np

from hubbardq.exceptions import ValidationError
from hubbardq.model.hamiltonian import SpinOrbitalHamiltonian
from hubbardq.model.operators import (
    FermionTerm,
    apply_ops_array,
    hamiltonian_terms,
    s_squared_terms,
)


def occupation_string(det: int, n_modes: int) -> str:
    """Occupation text n_0 n_1 ... n_{n-1}, increasing mode index left to right"""
    return "".join(str((det >> q) & 1) for q in range(n_modes))


def hf_determinant(n_electrons: int) -> int:
    """Lowest n_electrons spin orbitals occupied"""
    return (1 << n_electrons) - 1


@dataclass(frozen=True)
class SectorBasis:
    K: int
    n_alpha: int
    n_beta: int
    determinants: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.determinants)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.determinants, dtype=np.int64)

    @cached_property
    def index(self) -> Dict[int, int]:
        return {det: i for i, det in enumerate(self.determinants)}

    @property
    def n_modes(self) -> int:
        return 2 * self.K

    def strings(self) -> Tuple[str, ...]:
        return tuple(occupation_string(d, self.n_modes) for d in self.determinants)


def sector_basis(K: int, n_alpha: int, n_beta: int) -> SectorBasis:
    """
    Enumerate the (n_alpha, n_beta) sector

    Size is C(K, n_alpha) * C(K, n_beta).
    """
    if K < 1:
        raise ValidationError(f"K must be at least 1, got {K}")
    if not (0 <= n_alpha <= K and 0 <= n_beta <= K):
        raise ValidationError(f"electron counts ({n_alpha}, {n_beta}) out of range for K={K}")

    alpha_masks = [sum(1 << (2 * i) for i in occ) for occ in combinations(range(K), n_alpha)]
    beta_masks = [sum(1 << (2 * i + 1) for i in occ) for occ in combinations(range(K), n_beta)]
    dets = sorted(a | b for a in alpha_masks for b in beta_masks)
    return SectorBasis(K=K, n_alpha=n_alpha, n_beta=n_beta, determinants=tuple(dets))


def operator_sector_matrix(terms: Iterable[FermionTerm], basis: SectorBasis) -> np.ndarray:
    """Dense matrix of a number- and S_z-conserving operator within a sector"""
    dets = basis.array
    dim = len(dets)
    matrix = np.zeros((dim, dim))
    cols = np.arange(dim)
    for term in terms:
        if not term.ops:
            matrix[cols, cols] += term.coefficient
            continue
        signs, new, valid = apply_ops_array(term.ops, dets)
        pos = np.searchsorted(dets, new)
        pos = np.minimum(pos, dim - 1)
        hit = valid & (dets[pos] == new)
        np.add.at(matrix, (pos[hit], cols[hit]), term.coefficient * signs[hit])
    return matrix


def build_sector_matrix(ham: SpinOrbitalHamiltonian, basis: SectorBasis) -> np.ndarray:
    """
    Hamiltonian matrix within a sector

    Signs follow the Jordan-Wigner convention of the qubit map, so the result
    equals the corresponding sub-block of the Pauli-sum matrix.
    """
    if basis.K != ham.K:
        raise ValidationError(f"sector K={basis.K} does not match Hamiltonian K={ham.K}")
    matrix = operator_sector_matrix(hamiltonian_terms(ham), basis)
    return 0.5 * (matrix + matrix.T)


def s_squared_sector_matrix(basis: SectorBasis) -> np.ndarray:
    return operator_sector_matrix(s_squared_terms(basis.n_modes), basis)
