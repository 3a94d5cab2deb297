"""Domain types shared across the package and the preference classifier.

Foods are numbered 0, 1, 2. A pair offered to a player is named by the food
it does *not* contain, so "missing=j" means the pair is {0,1,2} minus {j}.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

FOODS = (0, 1, 2)
SUM_TOL = 1e-12


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class SingularInputError(DomainError):
    """A closed-form expression has a vanishing denominator."""


class DegenerateSystemError(DomainError):
    """A linear system lost rank, typically at a simplex boundary."""


class NotAtOptimumError(DomainError):
    """A precondition requiring an optimal (balanced) scenario failed."""


class Owner(enum.Enum):
    CAT1 = "cat1"
    CAT2 = "cat2"


def food(value: int) -> int:
    """Validate a food index."""
    if value not in FOODS:
        raise DomainError(f"food index must be 0, 1 or 2, got {value!r}")
    return int(value)


def _triple(values, name: str) -> tuple[float, float, float]:
    vals = tuple(float(v) for v in values)
    if len(vals) != 3:
        raise DomainError(f"{name} needs exactly three components, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise DomainError(f"{name} components must be finite: {vals}")
    return vals  # type: ignore[return-value]


def _probability_triple(values, name: str) -> tuple[float, float, float]:
    vals = _triple(values, name)
    if min(vals) < -SUM_TOL:
        raise DomainError(f"{name} has a negative component: {vals}")
    if abs(sum(vals) - 1.0) > SUM_TOL:
        raise DomainError(f"{name} must sum to 1, got {sum(vals)!r}")
    # round-off below the tolerance is clipped so downstream code sees p >= 0
    return tuple(max(v, 0.0) for v in vals)  # type: ignore[return-value]


@dataclass(frozen=True)
class SimplexPoint:
    """First-move frequencies (P0, P1, P2) of Cat 1."""

    p: tuple[float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "p", _probability_triple(self.p, "SimplexPoint"))

    def __getitem__(self, j: int) -> float:
        return self.p[j]

    def __iter__(self):
        return iter(self.p)

    @property
    def is_interior(self) -> bool:
        return min(self.p) > 0.0

    def as_array(self) -> np.ndarray:
        return np.array(self.p)


@dataclass(frozen=True)
class FrequencyTriple:
    """Long-run frequencies with which each food ends up in one diet."""

    f: tuple[float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "f", _probability_triple(self.f, "FrequencyTriple"))

    def __getitem__(self, k: int) -> float:
        return self.f[k]

    def __iter__(self):
        return iter(self.f)

    def max_deviation(self, other) -> float:
        return max(abs(a - b) for a, b in zip(self.f, other))

    def is_balanced(self, tol: float = 1e-10) -> bool:
        return self.max_deviation((1 / 3, 1 / 3, 1 / 3)) < tol


@dataclass(frozen=True)
class SpherePoint:
    """Unit vector (x1, x2, x3) labelling a pure one-qubit strategy."""

    x: tuple[float, float, float]

    def __post_init__(self):
        vals = _triple(self.x, "SpherePoint")
        norm2 = sum(v * v for v in vals)
        if abs(norm2 - 1.0) > SUM_TOL:
            raise DomainError(f"SpherePoint must be a unit vector, |x|^2 = {norm2!r}")
        object.__setattr__(self, "x", vals)

    def __getitem__(self, i: int) -> float:
        return self.x[i]

    def __iter__(self):
        return iter(self.x)


class _PointAtInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (_PointAtInfinity, ())


#: The point at infinity of the extended complex plane.
INFINITY = _PointAtInfinity()

ExtendedComplex = Union[complex, _PointAtInfinity]


def is_infinity(z: ExtendedComplex) -> bool:
    return z is INFINITY


@dataclass(frozen=True)
class ResponseStrategy:
    """A player's choices over the three pairs, stored as three parameters.

    ``params[j]`` governs the pair that excludes food ``j``. For Cat 2 the
    food ``(j - 1) % 3`` is taken with probability ``(1 + t_j) / 2``; Cat 1
    uses the opposite sign, ``(1 - t_j) / 2``. The other food of the pair
    gets the complement, so every pair sums to one by construction.
    """

    params: tuple[float, float, float]
    owner: Owner = Owner.CAT2

    def __post_init__(self):
        vals = _triple(self.params, "ResponseStrategy")
        if any(abs(v) > 1.0 for v in vals):
            raise DomainError(f"strategy parameters must lie in [-1, 1], got {vals}")
        if not isinstance(self.owner, Owner):
            raise DomainError(f"owner must be an Owner, got {self.owner!r}")
        object.__setattr__(self, "params", vals)

    @classmethod
    def cat1(cls, params) -> ResponseStrategy:
        return cls(tuple(params), Owner.CAT1)

    @classmethod
    def cat2(cls, params) -> ResponseStrategy:
        return cls(tuple(params), Owner.CAT2)

    @classmethod
    def from_favoured(cls, probs, owner: Owner = Owner.CAT2) -> ResponseStrategy:
        """Build from ``probs[j]``, the probability of taking food ``(j - 1) % 3``
        from the pair without ``j``."""
        sign = 1.0 if owner is Owner.CAT2 else -1.0
        params = (min(1.0, max(-1.0, sign * (2.0 * float(p) - 1.0))) for p in probs)
        return cls(tuple(params), owner)

    def __getitem__(self, j: int) -> float:
        return self.params[j]

    def prob(self, chosen: int, missing: int) -> float:
        return conditional_probability(self, chosen, missing)

    def matrix(self) -> np.ndarray:
        """``m[k, j]`` = probability of taking food k from the pair without j."""
        m = np.zeros((3, 3))
        for j in FOODS:
            for k in FOODS:
                if k != j:
                    m[k, j] = conditional_probability(self, k, j)
        return m


def conditional_probability(s: ResponseStrategy, chosen: int, missing: int) -> float:
    """Probability that the owner of ``s`` takes ``chosen`` from the pair without ``missing``."""
    chosen, missing = food(chosen), food(missing)
    if chosen == missing:
        raise DomainError("chosen food cannot be the food missing from the pair")
    t = s.params[missing]
    sign = 1.0 if s.owner is Owner.CAT2 else -1.0
    plus = (1.0 + sign * t) / 2.0
    if chosen == (missing - 1) % 3:
        return plus
    return (1.0 - sign * t) / 2.0


# -- preference classes ------------------------------------------------------


@dataclass(frozen=True)
class TransitiveOrder:
    """Strict linear order, strongest food first."""

    order: tuple[int, int, int]

    def __str__(self) -> str:
        return " > ".join(str(k) for k in self.order)


@dataclass(frozen=True)
class CycleA:
    """1 over 0, 2 over 1 and 0 over 2."""

    def __str__(self) -> str:
        return "cycleA"


@dataclass(frozen=True)
class CycleB:
    """0 over 1, 1 over 2 and 2 over 0."""

    def __str__(self) -> str:
        return "cycleB"


@dataclass(frozen=True)
class Boundary:
    """At least one pair is chosen with probability exactly 1/2."""

    ties: frozenset = field(default_factory=frozenset)

    def __str__(self) -> str:
        return "boundary"


PreferenceClass = Union[TransitiveOrder, CycleA, CycleB, Boundary]


def is_intransitive(c: PreferenceClass) -> bool:
    return isinstance(c, (CycleA, CycleB))


def is_transitive(c: PreferenceClass) -> bool:
    return isinstance(c, TransitiveOrder)


def class_family(c: PreferenceClass) -> str:
    """Coarse label used by region maps and output files."""
    if is_transitive(c):
        return "transitive"
    if is_intransitive(c):
        return "intransitive"
    return "boundary"


def classify_preferences(s: ResponseStrategy) -> PreferenceClass:
    """Classify the pairwise preferences of ``s``.

    A food is preferred within a pair when it is taken with probability
    above 1/2. Ties are decided on the stored parameter, which is exact.
    """
    sign = 1 if s.owner is Owner.CAT2 else -1
    wins = {k: 0 for k in FOODS}
    beats: set[tuple[int, int]] = set()
    ties = set()
    for j in FOODS:
        plus, minus = (j - 1) % 3, (j + 1) % 3
        t = s.params[j]
        if t == 0.0:
            ties.add(tuple(sorted((plus, minus))))
            continue
        winner, loser = (plus, minus) if sign * t > 0 else (minus, plus)
        beats.add((winner, loser))
        wins[winner] += 1
    if ties:
        return Boundary(frozenset(ties))
    if beats == {(1, 0), (2, 1), (0, 2)}:
        return CycleA()
    if beats == {(0, 1), (1, 2), (2, 0)}:
        return CycleB()
    order = tuple(sorted(FOODS, key=lambda k: -wins[k]))
    return TransitiveOrder(order)  # type: ignore[arg-type]
