"""Classical and one-qubit models of a three-food "I cut, you choose" game."""

from .core import (
    INFINITY,
    Boundary,
    CycleA,
    CycleB,
    DegenerateSystemError,
    DomainError,
    FrequencyTriple,
    NotAtOptimumError,
    Owner,
    ResponseStrategy,
    SimplexPoint,
    SingularInputError,
    SpherePoint,
    TransitiveOrder,
    classify_preferences,
    conditional_probability,
)

__all__ = [
    "INFINITY",
    "Boundary",
    "CycleA",
    "CycleB",
    "DegenerateSystemError",
    "DomainError",
    "FrequencyTriple",
    "NotAtOptimumError",
    "Owner",
    "ResponseStrategy",
    "SimplexPoint",
    "SingularInputError",
    "SpherePoint",
    "TransitiveOrder",
    "classify_preferences",
    "conditional_probability",
]
