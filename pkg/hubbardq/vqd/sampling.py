"""
Shot-based energy estimation

Each measurement group is rotated to its basis (X: H, Y: S^dagger then H),
bitstrings are drawn from the exact probabilities with a multinomial, and
every Pauli expectation is read off bit parities. The identity coefficient
is added exactly.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple, Union

import numpy as np

from hubbardq.exceptions import SamplingError, ValidationError
from hubbardq.observability import mainLogger
from hubbardq.qubit.grouping import GroupingMode, MeasurementGrouping, group_terms
from hubbardq.qubit.pauli import PauliSum, parity
from hubbardq.vqd.statevector import apply_one_qubit

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_SDG = np.array([[1, 0], [0, -1j]], dtype=complex)
_BASIS_CHANGE = {"X": _H, "Y": _H @ _SDG}


class Allocation(str, Enum):
    """
    PER_GROUP measures every group with the full shot count; UNIFORM and
    WEIGHTED split one total budget over the groups
    """
    PER_GROUP = "per_group"
    UNIFORM = "uniform"
    WEIGHTED = "weighted"

    @classmethod
    def parse(cls, value: Union[str, "Allocation"]) -> "Allocation":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        for member in cls:
            if member.value == key:
                return member
        raise ValidationError(
            f"unknown allocation: {value!r} (expected per_group, uniform or weighted)"
        )


@dataclass(frozen=True)
class SamplingReport:
    """
    Repeated shot estimates of one state

    Attributes:
        mean_energy: Mean estimate (eV)
        mean_delta: mean_energy - reference_energy (eV)
        std: Sample standard deviation over repeats (eV)
        exact_energy: <H> of the sampled state (eV)
        shots: Requested shots, read according to ``allocation``
        shots_per_group: Shots actually spent on each measurement group
    """
    mean_energy: float
    mean_delta: float
    std: float
    exact_energy: float
    reference_energy: float
    shots: int
    repeats: int
    grouping: str
    allocation: str
    seed: int
    n_groups: int
    shots_per_group: Tuple[int, ...]
    estimates: Tuple[float, ...]

    def summary(self) -> dict:
        return {
            "mean_energy_ev": self.mean_energy,
            "mean_delta_ev": self.mean_delta,
            "std_ev": self.std,
            "exact_energy_ev": self.exact_energy,
            "reference_energy_ev": self.reference_energy,
            "shots": self.shots,
            "repeats": self.repeats,
            "grouping": self.grouping,
            "allocation": self.allocation,
            "total_shots": sum(self.shots_per_group),
            "seed": self.seed,
            "n_groups": self.n_groups,
        }


def allocate_shots(grouping: MeasurementGrouping, psum: PauliSum, shots: int,
                   allocation: Union[str, Allocation] = Allocation.PER_GROUP) -> List[int]:
    """
    Shots of every measurement group

    Per group: every group gets ``shots``. Uniform: equal split of ``shots``,
    remainder to the earliest groups. Weighted: one shot per group, the rest of
    ``shots`` proportional to the group L1 weight by largest remainder.

    Raises:
        SamplingError: Zero shots, or a total budget smaller than the group count
    """
    allocation = Allocation.parse(allocation)
    n_groups = len(grouping)
    if shots < 1:
        raise SamplingError(f"shots must be at least 1, got {shots}")
    if n_groups == 0:
        return []
    if allocation == Allocation.PER_GROUP:
        return [shots] * n_groups
    if shots < n_groups:
        raise SamplingError(f"{shots} shots cannot cover {n_groups} measurement groups")

    if allocation == Allocation.UNIFORM:
        base, extra = divmod(shots, n_groups)
        return [base + (1 if g < extra else 0) for g in range(n_groups)]

    weights = np.array([group.weight(psum) for group in grouping.groups])
    spare = shots - n_groups
    ideal = spare * weights / weights.sum()
    counts = np.floor(ideal).astype(int)
    remainder = spare - int(counts.sum())
    # ties go to the earlier group
    order = sorted(range(n_groups), key=lambda g: (-(ideal[g] - counts[g]), g))
    for g in order[:remainder]:
        counts[g] += 1
    return [int(c) + 1 for c in counts]


def rotate_to_basis(state: np.ndarray, basis: str) -> np.ndarray:
    """Apply the single-qubit basis change of ``basis`` (letter q on qubit q)"""
    n_qubits = len(basis)
    for q, letter in enumerate(basis):
        gate = _BASIS_CHANGE.get(letter)
        if gate is not None:
            state = apply_one_qubit(state, gate, q, n_qubits)
    return state


@dataclass(frozen=True)
class _GroupPlan:
    probabilities: np.ndarray
    # coefficient-weighted sum of parity signs over the group's terms, per outcome
    observable: np.ndarray
    shots: int


def _plan(psum: PauliSum, sv: np.ndarray, grouping: MeasurementGrouping,
          shot_counts: List[int]) -> List[_GroupPlan]:
    n = psum.n_qubits
    outcomes = np.arange(1 << n, dtype=np.int64)
    plans = []
    for group, m in zip(grouping.groups, shot_counts):
        rotated = rotate_to_basis(np.asarray(sv, dtype=complex), group.basis)
        probs = np.abs(rotated) ** 2
        probs = probs / probs.sum()
        observable = np.zeros(1 << n)
        for letters in group.terms:
            mask = sum(1 << q for q, ch in enumerate(letters) if ch != "I")
            observable += psum.terms[letters] * (1 - 2 * parity(outcomes & mask, n))
        plans.append(_GroupPlan(probabilities=probs, observable=observable, shots=m))
    return plans


def _estimate(plans: List[_GroupPlan], identity: float, rng: np.random.Generator) -> float:
    total = identity
    for plan in plans:
        counts = rng.multinomial(plan.shots, plan.probabilities)
        total += float(counts @ plan.observable) / plan.shots
    return total


def sample_energy(
    psum: PauliSum,
    sv: np.ndarray,
    shots: int,
    grouping_mode: Union[str, GroupingMode] = GroupingMode.ABELIAN,
    seed: int = 42,
    allocation: Union[str, Allocation] = Allocation.PER_GROUP,
) -> float:
    """
    One shot-based estimate of <H>

    Args:
        psum: Hamiltonian (eV)
        sv: Statevector
        shots: Shots per group, or the total budget for uniform and weighted
        grouping_mode: abelian or none
        seed: Seed of the multinomial draws
        allocation: per_group, uniform or weighted

    Raises:
        SamplingError: Zero shots or a total budget below the group count
    """
    if shots < 1:
        raise SamplingError(f"shots must be at least 1, got {shots}")
    grouping = group_terms(psum, grouping_mode)
    plans = _plan(psum, sv, grouping, allocate_shots(grouping, psum, shots, allocation))
    return _estimate(plans, psum.identity_coefficient, np.random.default_rng(seed))


def repeat_sampling(
    psum: PauliSum,
    sv: np.ndarray,
    shots: int,
    repeats: int,
    grouping_mode: Union[str, GroupingMode] = GroupingMode.ABELIAN,
    seed: int = 42,
    reference_energy: float = 0.0,
    allocation: Union[str, Allocation] = Allocation.PER_GROUP,
) -> SamplingReport:
    """
    Mean and spread of ``repeats`` independent estimates; repeat i uses seed + i

    Args:
        reference_energy: Subtracted from the mean (the exact ground energy)

    Raises:
        ValidationError: repeats < 2
        SamplingError: Invalid shot budget
    """
    if repeats < 2:
        raise ValidationError(f"repeats must be at least 2, got {repeats}")
    if shots < 1:
        raise SamplingError(f"shots must be at least 1, got {shots}")

    mode = GroupingMode.parse(grouping_mode)
    allocation = Allocation.parse(allocation)
    grouping = group_terms(psum, mode)
    shot_counts = allocate_shots(grouping, psum, shots, allocation)
    plans = _plan(psum, sv, grouping, shot_counts)

    estimates = np.array([
        _estimate(plans, psum.identity_coefficient, np.random.default_rng(seed + i))
        for i in range(repeats)
    ])
    mean = float(estimates.mean())
    std = float(estimates.std(ddof=1))
    report = SamplingReport(
        mean_energy=mean,
        mean_delta=mean - reference_energy,
        std=std,
        exact_energy=psum.expectation(sv),
        reference_energy=reference_energy,
        shots=shots,
        repeats=repeats,
        grouping=mode.value,
        allocation=allocation.value,
        seed=seed,
        n_groups=len(grouping),
        shots_per_group=tuple(shot_counts),
        estimates=tuple(float(e) for e in estimates),
    )
    mainLogger.info("Sampling finished", **report.summary())
    return report
