"""Seeded simulation of the repeated game.

Each iteration: Cat 1 keeps a food drawn from the first-move frequencies;
Cat 2 eats one food of the remaining pair; Cat 1 eats one food of the pair
formed by its kept food and Cat 2's leftover; the last food is discarded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .classical import PureChoiceFunction
from .core import DomainError, FrequencyTriple, Owner, ResponseStrategy, SimplexPoint, SpherePoint
from .quantum import sphere_strategy

Cat1Strategy = Union[ResponseStrategy, SpherePoint, PureChoiceFunction]
Cat2Strategy = Union[ResponseStrategy, SpherePoint]


def as_response(strategy, owner: Owner) -> ResponseStrategy:
    """Reduce any supported strategy form to its conditional probabilities."""
    if isinstance(strategy, SpherePoint):
        return sphere_strategy(strategy, owner)
    if isinstance(strategy, PureChoiceFunction):
        if owner is not Owner.CAT1:
            raise DomainError("choice functions are only supported for Cat 1")
        return strategy.as_strategy(owner)
    if isinstance(strategy, ResponseStrategy):
        if strategy.owner is not owner:
            raise DomainError(f"expected a {owner.name} strategy, got {strategy.owner.name}")
        return strategy
    raise DomainError(f"unsupported strategy type {type(strategy).__name__}")


@dataclass(frozen=True)
class GameConfig:
    P: SimplexPoint
    cat1: Cat1Strategy
    cat2: Cat2Strategy
    iterations: int
    seed: int = 0

    def __post_init__(self):
        if int(self.iterations) < 1:
            raise DomainError(f"iterations must be at least 1, got {self.iterations}")
        if int(self.seed) < 0:
            raise DomainError(f"seed must be non-negative, got {self.seed}")
        as_response(self.cat1, Owner.CAT1)
        as_response(self.cat2, Owner.CAT2)


@dataclass(frozen=True)
class GameTally:
    cat1_counts: tuple[int, int, int]
    cat2_counts: tuple[int, int, int]
    discarded_counts: tuple[int, int, int]
    iterations: int

    def __post_init__(self):
        for name in ("cat1_counts", "cat2_counts", "discarded_counts"):
            counts = tuple(int(c) for c in getattr(self, name))
            if len(counts) != 3 or min(counts) < 0 or sum(counts) != self.iterations:
                raise DomainError(f"{name}={counts} does not sum to {self.iterations} iterations")
            object.__setattr__(self, name, counts)


def _pick(matrix: np.ndarray, missing: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Food chosen from each pair without ``missing[i]`` given uniform draws ``u``."""
    favoured = (missing - 1) % 3
    other = (missing + 1) % 3
    p = matrix[favoured, missing]
    return np.where(u < p, favoured, other)


def play(P, m1: np.ndarray, m2: np.ndarray, u: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Play one iteration per row of ``u`` (columns: first move, Cat 2, Cat 1).

    ``m1`` and ``m2`` are the ``[chosen, missing]`` probability matrices of
    Cat 1 and Cat 2. Returns the foods eaten by Cat 1, by Cat 2, and discarded.
    """
    cdf = np.cumsum(np.asarray(P, dtype=float))
    kept = np.minimum(np.searchsorted(cdf, u[:, 0], side="right"), 2)
    eaten2 = _pick(m2, kept, u[:, 1])
    eaten1 = _pick(m1, eaten2, u[:, 2])
    discarded = 3 - eaten1 - eaten2
    return eaten1, eaten2, discarded


def run_game(cfg: GameConfig, chunk: int = 1 << 20) -> GameTally:
    """Simulate ``cfg.iterations`` rounds; identical configs give identical tallies."""
    m1 = as_response(cfg.cat1, Owner.CAT1).matrix()
    m2 = as_response(cfg.cat2, Owner.CAT2).matrix()
    rng = np.random.default_rng(cfg.seed)
    c1, c2, cd = np.zeros(3, int), np.zeros(3, int), np.zeros(3, int)
    left = int(cfg.iterations)
    while left:
        n = min(left, chunk)
        u = rng.random((n, 3))
        e1, e2, d = play(cfg.P.p, m1, m2, u)
        c1 += np.bincount(e1, minlength=3)
        c2 += np.bincount(e2, minlength=3)
        cd += np.bincount(d, minlength=3)
        left -= n
    return GameTally(tuple(c1), tuple(c2), tuple(cd), int(cfg.iterations))


def empirical_frequencies(t: GameTally) -> tuple[FrequencyTriple, FrequencyTriple]:
    """``(lambda, omega)``: observed diets of Cat 1 and Cat 2."""
    n = t.iterations
    lam = FrequencyTriple(tuple(c / n for c in t.cat1_counts))
    omega = FrequencyTriple(tuple(c / n for c in t.cat2_counts))
    return lam, omega


def three_sigma(p: float, n: int) -> float:
    """Three binomial standard deviations of a frequency estimate."""
    return 3.0 * float(np.sqrt(p * (1.0 - p) / n))
