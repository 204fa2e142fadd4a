"""
Extended-Hubbard Hamiltonian assembly

One-body part with double-counting correction, two-body part as a sparse
chemist-notation tensor (pq|rs) over spatial orbitals, and the spin-orbital
container shared by every downstream module.

Spin orbitals are interleaved: spatial orbital i (0-based) with spin alpha is
mode 2i, with spin beta mode 2i+1.
"""

from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Dict, Iterator, Mapping, Optional, Tuple

import numpy as np

from hubbardq.exceptions import OrthogonalityError, ValidationError
from hubbardq.model.params import InteractionVariant, ModelParameters
from hubbardq.observability import mainLogger

EriKey = Tuple[int, int, int, int]

ORTHOGONALITY_TOL = 1e-10
ERI_PRUNE_TOL = 1e-12


class BasisTag(str, Enum):
    """Orbital basis the integrals are expressed in"""
    WANNIER = "Wannier"
    CANONICAL = "Canonical"


def spin_orbital(orbital: int, spin: int) -> int:
    """Mode index of spatial orbital ``orbital`` (0-based) with spin 0=alpha, 1=beta"""
    return 2 * orbital + spin


def canonical_key(p: int, q: int, r: int, s: int) -> EriKey:
    """Representative of (pq|rs) under the 8-fold real-integral symmetry"""
    ij = (max(p, q), min(p, q))
    kl = (max(r, s), min(r, s))
    if ij < kl:
        ij, kl = kl, ij
    return ij + kl


def symmetry_orbit(key: EriKey) -> Tuple[EriKey, ...]:
    """All distinct index tuples equal to ``key`` under the 8-fold symmetry"""
    i, j, k, l = key
    perms = {
        (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
        (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
    }
    return tuple(sorted(perms))


def expand_spin(h_spatial: np.ndarray) -> np.ndarray:
    """Spin-diagonal 2K x 2K matrix from a K x K spatial matrix"""
    K = h_spatial.shape[0]
    h1 = np.zeros((2 * K, 2 * K))
    h1[0::2, 0::2] = h_spatial
    h1[1::2, 1::2] = h_spatial
    return h1


def _frozen(matrix: np.ndarray) -> np.ndarray:
    out = np.array(matrix, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SpinOrbitalHamiltonian:
    """
    Second-quantized Hamiltonian over 2K spin orbitals

    H = sum_{pq,s} h_pq a+_ps a_qs
        + 1/2 sum_{pqrs,st} (pq|rs) a+_ps a+_rt a_st a_qs
        + constant

    Attributes:
        n_spin_orbitals: 2K
        h1: 2K x 2K spin-diagonal one-body matrix (eV)
        eri: Canonical (pq|rs) entries over spatial orbitals (eV)
        constant: Scalar shift (eV)
        basis_tag: Wannier or Canonical
        n_electrons: Electron count carried along for exports
    """
    n_spin_orbitals: int
    h1: np.ndarray
    eri: Mapping[EriKey, float]
    constant: float = 0.0
    basis_tag: BasisTag = BasisTag.WANNIER
    n_electrons: int = 0
    name: str = ""

    def __post_init__(self):
        h1 = np.asarray(self.h1, dtype=float)
        if h1.shape != (self.n_spin_orbitals, self.n_spin_orbitals):
            raise ValidationError(f"h1 must be {self.n_spin_orbitals}x{self.n_spin_orbitals}")
        if self.n_spin_orbitals % 2:
            raise ValidationError("n_spin_orbitals must be even")
        if np.max(np.abs(h1 - h1.T), initial=0.0) > 1e-12:
            raise ValidationError("h1 is not symmetric")
        object.__setattr__(self, "h1", _frozen(h1))

        canonical: Dict[EriKey, float] = {}
        for key, value in self.eri.items():
            ckey = canonical_key(*key)
            if ckey in canonical and abs(canonical[ckey] - value) > 1e-12:
                raise ValidationError(f"eri entries {key} and {ckey} break index symmetry")
            canonical[ckey] = float(value)
        object.__setattr__(self, "eri", MappingProxyType(dict(sorted(canonical.items()))))

    @property
    def K(self) -> int:
        return self.n_spin_orbitals // 2

    @property
    def h1_spatial(self) -> np.ndarray:
        return np.array(self.h1[0::2, 0::2])

    def eri_dense(self) -> np.ndarray:
        """Full K^4 chemist-notation tensor"""
        K = self.K
        eri = np.zeros((K, K, K, K))
        for key, value in self.eri.items():
            for p, q, r, s in symmetry_orbit(key):
                eri[p, q, r, s] = value
        return eri

    def eri_items(self) -> Iterator[Tuple[EriKey, float]]:
        """Every distinct (p, q, r, s) with its value, symmetry orbits expanded"""
        for key, value in self.eri.items():
            for idx in symmetry_orbit(key):
                yield idx, value

    def __add__(self, other: "SpinOrbitalHamiltonian") -> "SpinOrbitalHamiltonian":
        if not isinstance(other, SpinOrbitalHamiltonian):
            return NotImplemented
        if other.n_spin_orbitals != self.n_spin_orbitals:
            raise ValidationError("cannot add Hamiltonians of different size")
        eri = dict(self.eri)
        for key, value in other.eri.items():
            eri[key] = eri.get(key, 0.0) + value
        return SpinOrbitalHamiltonian(
            n_spin_orbitals=self.n_spin_orbitals,
            h1=self.h1 + other.h1,
            eri=eri,
            constant=self.constant + other.constant,
            basis_tag=self.basis_tag,
            n_electrons=self.n_electrons,
            name=self.name,
        )

    def __mul__(self, factor: float) -> "SpinOrbitalHamiltonian":
        if not isinstance(factor, (int, float, np.floating, np.integer)):
            return NotImplemented
        return SpinOrbitalHamiltonian(
            n_spin_orbitals=self.n_spin_orbitals,
            h1=self.h1 * factor,
            eri={k: v * factor for k, v in self.eri.items()},
            constant=self.constant * factor,
            basis_tag=self.basis_tag,
            n_electrons=self.n_electrons,
            name=self.name,
        )

    __rmul__ = __mul__


def build_one_body(params: ModelParameters) -> np.ndarray:
    """
    Effective one-body matrix t - t^DC

    The diagonal carries the double-counting correction
    alpha * U_ii * D_ii + sum_{k != i} U_ik * D_kk; off-diagonal entries are t.

    Args:
        params: Model parameters

    Returns:
        K x K matrix in eV
    """
    U, D = params.U, params.D
    d_diag = np.diag(D)
    t_eff = np.array(params.t, dtype=float)
    for i in range(params.K):
        inter_site = sum(U[i, k] * d_diag[k] for k in range(params.K) if k != i)
        t_eff[i, i] -= params.alpha * U[i, i] * d_diag[i] + inter_site
    return t_eff


def build_two_body(params: ModelParameters) -> Dict[EriKey, float]:
    """
    Sparse chemist-notation tensor of the interaction

    (ii|jj) = U_ij for all i, j; with exchange, (ij|ij) = (ij|ji) = J_ij for
    i != j, which carries both the exchange and the pair-hopping terms.

    Returns:
        Canonical-key dict (one entry per symmetry orbit), eV
    """
    eri: Dict[EriKey, float] = {}
    K = params.K
    for i in range(K):
        for j in range(i + 1):
            if params.U[i, j] != 0.0:
                eri[canonical_key(i, i, j, j)] = float(params.U[i, j])

    if params.interaction_variant == InteractionVariant.WITH_EXCHANGE:
        for i in range(K):
            for j in range(i):
                if params.J[i, j] != 0.0:
                    eri[canonical_key(i, j, i, j)] = float(params.J[i, j])

    return dict(sorted(eri.items()))


def assemble_hamiltonian(params: ModelParameters) -> SpinOrbitalHamiltonian:
    """
    Extended-Hubbard Hamiltonian H0 + Hint in the Wannier basis

    Args:
        params: Model parameters

    Returns:
        SpinOrbitalHamiltonian with zero constant
    """
    ham = SpinOrbitalHamiltonian(
        n_spin_orbitals=params.n_spin_orbitals,
        h1=expand_spin(build_one_body(params)),
        eri=build_two_body(params),
        constant=0.0,
        basis_tag=BasisTag.WANNIER,
        n_electrons=params.n_electrons,
        name=params.molecule_name,
    )
    mainLogger.debug(
        "Assembled Hamiltonian",
        molecule=params.molecule_name,
        variant=params.interaction_variant.value,
        n_spin_orbitals=ham.n_spin_orbitals,
        eri_entries=len(ham.eri),
    )
    return ham


def rotate_basis(
    ham: SpinOrbitalHamiltonian,
    C: np.ndarray,
    basis_tag: Optional[BasisTag] = BasisTag.CANONICAL,
) -> SpinOrbitalHamiltonian:
    """
    Transform integrals to orbitals phi~_j = sum_i phi_i C_ij

    Args:
        ham: Hamiltonian to rotate
        C: K x K orthogonal matrix (columns are the new orbitals)
        basis_tag: Tag of the result

    Returns:
        Rotated Hamiltonian; the two-body tensor is generally dense afterwards

    Raises:
        OrthogonalityError: C^T C deviates from identity by more than 1e-10
    """
    C = np.asarray(C, dtype=float)
    K = ham.K
    if C.shape != (K, K):
        raise ValidationError(f"rotation must be {K}x{K}, got {C.shape}")
    deviation = np.max(np.abs(C.T @ C - np.eye(K)))
    if deviation > ORTHOGONALITY_TOL:
        raise OrthogonalityError(f"rotation is not orthogonal (max |C^T C - I| = {deviation:.3e})")

    h_rot = C.T @ ham.h1_spatial @ C
    eri_rot = np.einsum("pqrs,pi,qj,rk,sl->ijkl", ham.eri_dense(), C, C, C, C, optimize=True)

    eri: Dict[EriKey, float] = {}
    for i in range(K):
        for j in range(i + 1):
            for k in range(K):
                for l in range(k + 1):
                    key = (i, j, k, l)
                    if canonical_key(*key) != key:
                        continue
                    value = eri_rot[key]
                    if abs(value) > ERI_PRUNE_TOL:
                        eri[key] = float(value)

    return SpinOrbitalHamiltonian(
        n_spin_orbitals=ham.n_spin_orbitals,
        h1=expand_spin(0.5 * (h_rot + h_rot.T)),
        eri=eri,
        constant=ham.constant,
        basis_tag=basis_tag or ham.basis_tag,
        n_electrons=ham.n_electrons,
        name=ham.name,
    )
