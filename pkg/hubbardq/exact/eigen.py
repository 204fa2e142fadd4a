"""Dense symmetric eigensolves"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from hubbardq.exact.sector import SectorBasis
from hubbardq.exceptions import ValidationError

OTHER = "other"


@dataclass(frozen=True)
class EigenReport:
    """
    Lowest eigenpairs of a sector matrix

    Attributes:
        energies: Ascending eigenvalues (eV)
        states: Column eigenvectors, shape (dim, k)
        basis: Sector the states are expanded in, when known
        labels: One tag per state (1^1A_g, 1^1B_u, 2^1A_g or other)
    """
    energies: np.ndarray
    states: np.ndarray
    basis: Optional[SectorBasis] = None
    labels: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", (OTHER,) * len(self.energies))
        if len(self.labels) != len(self.energies):
            raise ValidationError("one label per state is required")

    def __len__(self) -> int:
        return len(self.energies)

    def state(self, i: int) -> np.ndarray:
        return self.states[:, i]


def diagonalize(matrix: np.ndarray, k: Optional[int] = None, basis: Optional[SectorBasis] = None) -> EigenReport:
    """
    k lowest eigenpairs of a real symmetric matrix

    Args:
        matrix: Symmetric matrix
        k: Number of states (all when None)
        basis: Sector basis to attach to the report

    Raises:
        ValidationError: k outside [1, dim] or matrix not square
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValidationError(f"matrix must be square, got shape {matrix.shape}")
    dim = matrix.shape[0]
    k = dim if k is None else k
    if not 1 <= k <= dim:
        raise ValidationError(f"k must be within [1, {dim}], got {k}")

    energies, states = scipy.linalg.eigh(matrix, subset_by_index=[0, k - 1])
    return EigenReport(energies=energies, states=states, basis=basis)
