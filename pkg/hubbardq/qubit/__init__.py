"""
Qubit Module - Jordan-Wigner mapping, Pauli algebra, grouping and resource estimates
"""

from .pauli import PauliSum, pauli_product, pauli_string_action
from .jordan_wigner import (
    jordan_wigner,
    map_terms,
    number_operator,
    s_squared_operator,
    sz_operator,
)
from .grouping import (
    GroupingMode,
    MeasurementGroup,
    MeasurementGrouping,
    abelian_group,
    group_terms,
    qubit_wise_commute,
    single_term_groups,
)
from .resources import (
    CHEMICAL_ACCURACY_HARTREE,
    MeasurementBound,
    ResourceSummary,
    l1_norm,
    measurement_bound,
    qdrift_cost,
    qubitization_scalings,
    resource_summary,
    term_count,
)

__all__ = [
    "PauliSum",
    "pauli_product",
    "pauli_string_action",
    "jordan_wigner",
    "map_terms",
    "number_operator",
    "s_squared_operator",
    "sz_operator",
    "GroupingMode",
    "MeasurementGroup",
    "MeasurementGrouping",
    "abelian_group",
    "group_terms",
    "qubit_wise_commute",
    "single_term_groups",
    "CHEMICAL_ACCURACY_HARTREE",
    "MeasurementBound",
    "ResourceSummary",
    "l1_norm",
    "measurement_bound",
    "qdrift_cost",
    "qubitization_scalings",
    "resource_summary",
    "term_count",
]
