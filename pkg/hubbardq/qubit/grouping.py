"""
Measurement grouping of Pauli terms

Abelian grouping collects qubit-wise commuting strings so each group is
measured in one shared single-qubit basis. The ``none`` mode measures every
term on its own.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple, Union

from hubbardq.exceptions import ValidationError
from hubbardq.qubit.pauli import PauliSum


class GroupingMode(str, Enum):
    ABELIAN = "abelian"
    NONE = "none"

    @classmethod
    def parse(cls, value: Union[str, "GroupingMode"]) -> "GroupingMode":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        for member in cls:
            if member.value == key:
                return member
        raise ValidationError(f"unknown grouping mode: {value!r} (expected abelian or none)")


@dataclass(frozen=True)
class MeasurementGroup:
    """Qubit-wise commuting terms and the basis letter per qubit (I where no term acts)"""
    terms: Tuple[str, ...]
    basis: str

    def weight(self, psum: PauliSum) -> float:
        """L1 weight of the group's coefficients"""
        return sum(abs(psum.terms[p]) for p in self.terms)


@dataclass(frozen=True)
class MeasurementGrouping:
    groups: Tuple[MeasurementGroup, ...]
    mode: GroupingMode

    def __len__(self) -> int:
        return len(self.groups)


def qubit_wise_commute(a: str, b: str) -> bool:
    """True when on every qubit the letters agree or one of them is I"""
    return all(pa == "I" or pb == "I" or pa == pb for pa, pb in zip(a, b))


def _merge_basis(basis: str, letters: str) -> str:
    return "".join(pb if pa == "I" else pa for pa, pb in zip(basis, letters))


def _ordered_terms(psum: PauliSum) -> List[str]:
    # descending |coefficient|, ties by string for a deterministic order
    terms = psum.non_identity_terms()
    return sorted(terms, key=lambda p: (-abs(terms[p]), p))


def abelian_group(psum: PauliSum) -> MeasurementGrouping:
    """
    Greedy first-fit partition into qubit-wise commuting groups

    Terms are visited by descending |coefficient|; each joins the first group
    whose basis it is compatible with, or opens a new group.
    """
    groups: List[List[str]] = []
    bases: List[str] = []
    for letters in _ordered_terms(psum):
        for idx, basis in enumerate(bases):
            if qubit_wise_commute(basis, letters):
                groups[idx].append(letters)
                bases[idx] = _merge_basis(basis, letters)
                break
        else:
            groups.append([letters])
            bases.append(letters)

    return MeasurementGrouping(
        groups=tuple(MeasurementGroup(tuple(g), b) for g, b in zip(groups, bases)),
        mode=GroupingMode.ABELIAN,
    )


def single_term_groups(psum: PauliSum) -> MeasurementGrouping:
    """One group per non-identity term"""
    return MeasurementGrouping(
        groups=tuple(MeasurementGroup((p,), p) for p in _ordered_terms(psum)),
        mode=GroupingMode.NONE,
    )


def group_terms(psum: PauliSum, mode: Union[str, GroupingMode]) -> MeasurementGrouping:
    mode = GroupingMode.parse(mode)
    if mode == GroupingMode.ABELIAN:
        return abelian_group(psum)
    return single_term_groups(psum)
