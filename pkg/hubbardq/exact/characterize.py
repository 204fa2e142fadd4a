"""
State characterization from CI coefficients in the canonical-orbital basis

Labels are assigned from the leading determinants of singlet states:

- 1^1A_g: lowest singlet led by the Hartree-Fock string
- 1^1B_u: lowest remaining singlet whose two leading determinants are the
  alpha and beta HOMO -> LUMO single excitations
- 2^1A_g: lowest remaining singlet led by the HOMO^2 -> LUMO^2 double excitation
"""

import dataclasses
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from hubbardq.exact.eigen import OTHER, EigenReport
from hubbardq.exact.sector import hf_determinant, occupation_string, s_squared_sector_matrix
from hubbardq.exceptions import CharacterizationError, ValidationError
from hubbardq.model.hamiltonian import BasisTag, SpinOrbitalHamiltonian

GROUND = "1^1A_g"
SINGLE = "1^1B_u"
DOUBLE = "2^1A_g"
STATE_LABELS = (GROUND, SINGLE, DOUBLE)

SINGLET_TOL = 0.1
LEADING_MIN = 0.3
DISPLAY_CUTOFF = 0.09


@dataclass(frozen=True)
class StateCharacter:
    """
    CI expansion of one eigenstate, determinants sorted by descending |d|

    Attributes:
        index: Position in the eigen report
        energy: Eigenvalue (eV)
        label: State tag
        s_squared: <S^2>
        coefficients: (d_k, occupation string) over the full sector
    """
    index: int
    energy: float
    label: str
    s_squared: float
    coefficients: Tuple[Tuple[float, str], ...]

    @property
    def is_singlet(self) -> bool:
        return abs(self.s_squared) < SINGLET_TOL

    def leading(self, cutoff: float = DISPLAY_CUTOFF) -> Tuple[Tuple[float, str], ...]:
        """Determinants with |d| >= cutoff"""
        return tuple((d, s) for d, s in self.coefficients if abs(d) >= cutoff)

    def weight(self, occupation: str) -> float:
        for d, s in self.coefficients:
            if s == occupation:
                return d
        return 0.0


@dataclass(frozen=True)
class CharacterTable:
    states: Tuple[StateCharacter, ...]
    report: EigenReport

    def by_label(self, label: str) -> Optional[StateCharacter]:
        for state in self.states:
            if state.label == label:
                return state
        return None

    def to_dict(self, cutoff: float = DISPLAY_CUTOFF) -> List[Dict]:
        return [
            {
                "index": s.index,
                "energy_ev": s.energy,
                "label": s.label,
                "s_squared": round(s.s_squared, 10),
                "leading": [{"d": d, "occupation": occ} for d, occ in s.leading(cutoff)],
            }
            for s in self.states
        ]


def reference_strings(n_electrons: int, n_modes: int) -> Dict[str, Tuple[str, ...]]:
    """HF, HOMO -> LUMO singles (alpha, beta) and HOMO^2 -> LUMO^2 double strings"""
    hf = hf_determinant(n_electrons)
    homo, lumo = n_electrons // 2 - 1, n_electrons // 2
    single_a = hf ^ (1 << (2 * homo)) ^ (1 << (2 * lumo))
    single_b = hf ^ (1 << (2 * homo + 1)) ^ (1 << (2 * lumo + 1))
    double = single_a ^ (1 << (2 * homo + 1)) ^ (1 << (2 * lumo + 1))
    return {
        GROUND: (occupation_string(hf, n_modes),),
        SINGLE: (occupation_string(single_a, n_modes), occupation_string(single_b, n_modes)),
        DOUBLE: (occupation_string(double, n_modes),),
    }


def _expand(vector: np.ndarray, strings: Sequence[str]) -> Tuple[Tuple[float, str], ...]:
    vector = np.asarray(vector, dtype=float)
    # stable sort keeps the basis order for equal magnitudes
    order = sorted(range(len(vector)), key=lambda i: -round(abs(vector[i]), 12))
    if vector[order[0]] < 0:
        vector = -vector
    return tuple((float(vector[i]), strings[i]) for i in order)


def _assign_labels(states: List[StateCharacter], refs: Dict[str, Tuple[str, ...]], lumo_exists: bool) -> List[str]:
    labels = [OTHER] * len(states)

    def leading_ok(state: StateCharacter) -> bool:
        return state.is_singlet and abs(state.coefficients[0][0]) >= LEADING_MIN

    for i, state in enumerate(states):
        if leading_ok(state) and state.coefficients[0][1] == refs[GROUND][0]:
            labels[i] = GROUND
            break
    if not lumo_exists:
        return labels

    for i, state in enumerate(states):
        if labels[i] == OTHER and leading_ok(state) and len(state.coefficients) >= 2:
            top_two = {state.coefficients[0][1], state.coefficients[1][1]}
            if top_two == set(refs[SINGLE]):
                labels[i] = SINGLE
                break

    for i, state in enumerate(states):
        if labels[i] == OTHER and leading_ok(state) and state.coefficients[0][1] == refs[DOUBLE][0]:
            labels[i] = DOUBLE
            break
    return labels


def characterize(report: EigenReport, rotated: SpinOrbitalHamiltonian) -> CharacterTable:
    """
    Leading CI coefficients and state labels

    Args:
        report: Eigenpairs in a closed-shell sector of the canonical basis
        rotated: The SCF-rotated Hamiltonian the report was computed from

    Returns:
        CharacterTable; ``table.report`` carries the labels
    """
    basis = report.basis
    if basis is None:
        raise ValidationError("characterization needs the sector basis of the report")
    if rotated.basis_tag != BasisTag.CANONICAL:
        raise ValidationError("characterization expects eigenstates in the canonical orbital basis")
    if basis.K != rotated.K:
        raise ValidationError("report and Hamiltonian disagree on the orbital count")

    n_electrons = basis.n_alpha + basis.n_beta
    strings = basis.strings()
    s2 = s_squared_sector_matrix(basis)
    s2_values = np.einsum("ik,ij,jk->k", report.states, s2, report.states)

    states = [
        StateCharacter(
            index=k,
            energy=float(report.energies[k]),
            label=OTHER,
            s_squared=float(s2_values[k]),
            coefficients=_expand(report.states[:, k], strings),
        )
        for k in range(len(report))
    ]

    refs = reference_strings(n_electrons, basis.n_modes)
    lumo_exists = 0 < n_electrons // 2 < basis.K
    labels = _assign_labels(states, refs, lumo_exists)

    states = [dataclasses.replace(s, label=label) for s, label in zip(states, labels)]
    labeled = dataclasses.replace(report, labels=tuple(labels))
    return CharacterTable(states=tuple(states), report=labeled)


@dataclass(frozen=True)
class ExcitationEnergy:
    label: str
    energy: float
    delta_e: float


def excitation_energies(report: EigenReport, labels: Sequence[str] = (SINGLE, DOUBLE)) -> List[ExcitationEnergy]:
    """
    E(state) - E(1^1A_g) for each requested label

    Raises:
        CharacterizationError: Ground state or any requested label is missing
    """
    missing = [label for label in (GROUND, *labels) if label not in report.labels]
    if missing:
        raise CharacterizationError(f"labels not found in spectrum: {', '.join(missing)}", missing=missing)

    e0 = float(report.energies[report.labels.index(GROUND)])
    result = []
    for label in labels:
        energy = float(report.energies[report.labels.index(label)])
        result.append(ExcitationEnergy(label=label, energy=energy, delta_e=energy - e0))
    return result
