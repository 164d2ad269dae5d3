"""Mod-2 cohomology and Stiefel-Whitney class systems of real Stiefel manifolds."""

__version__ = "0.1.0"

from .cohomology import (
    CohomologyClass,
    DegreeBand,
    Monomial,
    StiefelRing,
    basis,
    make_ring,
    multiply,
    t_band,
)
from .errors import BudgetExceeded, HypothesisError, ParameterError, StiefelError
from .parity import Parity, PhiValue, binom_parity, equality_classifier, phi
from .steenrod import check_axioms, sq, sq_gen
from .stunted import (
    AdmissibleSet,
    TruncatedPoly,
    admissible_degrees,
    image_multiple,
    total_sw_multiple_gamma,
)
from .wu import (
    CharClassSystem,
    RelationTable,
    WuViolation,
    check_theorem2,
    derive_relations,
    enumerate_systems,
    first_nonzero_degree,
    is_wu_consistent,
    wu_rhs,
)

__all__ = [
    "AdmissibleSet", "BudgetExceeded", "CharClassSystem", "CohomologyClass",
    "DegreeBand", "HypothesisError", "Monomial", "ParameterError", "Parity",
    "PhiValue", "RelationTable", "StiefelError", "StiefelRing", "TruncatedPoly",
    "WuViolation", "admissible_degrees", "basis", "binom_parity",
    "check_axioms", "check_theorem2", "derive_relations", "enumerate_systems",
    "equality_classifier", "first_nonzero_degree", "image_multiple",
    "is_wu_consistent", "make_ring", "multiply", "phi", "sq", "sq_gen",
    "t_band", "total_sw_multiple_gamma", "wu_rhs",
]
