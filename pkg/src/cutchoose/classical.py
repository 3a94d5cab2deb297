"""Classical mixed-strategy model: diets, optimal first moves and their inverses."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DegenerateSystemError,
    DomainError,
    FrequencyTriple,
    NotAtOptimumError,
    Owner,
    PreferenceClass,
    ResponseStrategy,
    SimplexPoint,
    SingularInputError,
    classify_preferences,
)

ALGEBRA_TOL = 1e-12
SOLVE_TOL = 1e-10
THIRD = 1.0 / 3.0


class OutsideSimplexError(DomainError):
    """The balancing first move for a strategy has a negative component."""


def _require(s: ResponseStrategy, owner: Owner, role: str) -> None:
    if s.owner is not owner:
        raise DomainError(f"{role} must be owned by {owner.name}, got {s.owner.name}")


def _as_l(l) -> tuple[float, float, float]:
    if isinstance(l, ResponseStrategy):
        return l.params
    return ResponseStrategy.cat2(l).params


# -- diets ------------------------------------------------------------------


def cat2_diet(P: SimplexPoint, s2: ResponseStrategy) -> FrequencyTriple:
    """Frequencies of the foods eaten by Cat 2."""
    _require(s2, Owner.CAT2, "s2")
    p = s2.prob
    w0 = p(0, 1) * P[1] + p(0, 2) * P[2]
    w1 = p(1, 0) * P[0] + p(1, 2) * P[2]
    w2 = p(2, 0) * P[0] + p(2, 1) * P[1]
    return FrequencyTriple((w0, w1, w2))


def cat1_diet(P: SimplexPoint, s2: ResponseStrategy, s1: ResponseStrategy) -> FrequencyTriple:
    """Frequencies of the foods eaten by Cat 1.

    Cat 1 picks from the pair left over after Cat 2 has eaten, so the
    weight on ``q(k, j)`` is the probability that Cat 2 took food ``j``.
    """
    _require(s2, Owner.CAT2, "s2")
    _require(s1, Owner.CAT1, "s1")
    p, q = s2.prob, s1.prob
    took0 = p(0, 1) * P[1] + p(0, 2) * P[2]
    took1 = p(1, 0) * P[0] + p(1, 2) * P[2]
    took2 = p(2, 0) * P[0] + p(2, 1) * P[1]
    lam0 = q(0, 1) * took1 + q(0, 2) * took2
    lam1 = q(1, 2) * took2 + q(1, 0) * took0
    lam2 = q(2, 1) * took1 + q(2, 0) * took0
    return FrequencyTriple((lam0, lam1, lam2))


# -- Cat 2 optimum ----------------------------------------------------------


def cat2_optimality_residual(P, l) -> np.ndarray:
    """Left minus right sides of the three linear balance conditions on ``l``.

    All three vanish exactly when Cat 2's diet is balanced. They always sum
    to zero, so any two of them imply the third.
    """
    P0, P1, P2 = (float(v) for v in P)
    l0, l1, l2 = (float(v) for v in l)
    return np.array(
        [
            l1 * P1 - l2 * P2 - (2 / 3 - (P1 + P2)),
            l2 * P2 - l0 * P0 - (2 / 3 - (P0 + P2)),
            l0 * P0 - l1 * P1 - (2 / 3 - (P0 + P1)),
        ]
    )


def first_move_solution(l) -> np.ndarray:
    """Solve the balance conditions for the first move, without simplex checks.

    The result lies on the plane P0 + P1 + P2 = 1 but may have negative
    components; about half the parameter cube maps outside the simplex.
    """
    l0, l1, l2 = _as_l(l)
    den = 3.0 * (1.0 + l0 * l1 + l0 * l2 + l1 * l2)
    if abs(den) < ALGEBRA_TOL:
        raise SingularInputError(f"denominator vanishes for l={(l0, l1, l2)}")
    num = np.array(
        [
            1.0 + l1 - l2 + 3.0 * l1 * l2,
            1.0 - l0 + l2 + 3.0 * l0 * l2,
            1.0 + l0 - l1 + 3.0 * l0 * l1,
        ]
    )
    # num.sum() == den identically; dividing by it keeps the sum at 1 to the last ulp
    return num / num.sum()


def optimal_first_move(l) -> SimplexPoint:
    """First-move frequencies for which Cat 2's strategy ``l`` yields a balanced diet.

    Raises:
        SingularInputError: ``1 + l0 l1 + l0 l2 + l1 l2`` vanishes.
        OutsideSimplexError: the solution has a negative component, so no
            first move makes ``l`` optimal.
    """
    P = first_move_solution(l)
    if P.min() < -ALGEBRA_TOL:
        raise OutsideSimplexError(f"l={tuple(_as_l(l))} balances no first move: P={P}")
    return SimplexPoint(tuple(P))


def first_move_solutions(ls: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`first_move_solution`.

    Returns ``(P, ok)`` where ``ok`` flags rows that are nonsingular and lie
    on the simplex. Rows with ``ok`` false hold undefined values.
    """
    ls = np.asarray(ls, dtype=float)
    l0, l1, l2 = ls[:, 0], ls[:, 1], ls[:, 2]
    num = np.stack(
        [
            1.0 + l1 - l2 + 3.0 * l1 * l2,
            1.0 - l0 + l2 + 3.0 * l0 * l2,
            1.0 + l0 - l1 + 3.0 * l0 * l1,
        ],
        axis=1,
    )
    den = num.sum(axis=1)
    ok = np.abs(den) >= ALGEBRA_TOL
    P = num / np.where(ok, den, 1.0)[:, None]
    ok &= P.min(axis=1) >= -ALGEBRA_TOL
    return np.clip(P, 0.0, None), ok


@dataclass(frozen=True)
class StrategyLine:
    """The line ``point + s * direction`` of Cat 2 strategies balancing one first move."""

    point: tuple[float, float, float]
    direction: tuple[float, float, float]

    def at(self, s: float) -> np.ndarray:
        return np.asarray(self.point) + s * np.asarray(self.direction)

    def sample(self, ss) -> np.ndarray:
        ss = np.asarray(ss, dtype=float)
        return np.asarray(self.point)[None, :] + ss[:, None] * np.asarray(self.direction)[None, :]


def cat2_solution_line(P: SimplexPoint) -> StrategyLine:
    """All ``l`` (unrestricted by the cube) making Cat 2's diet balanced at ``P``.

    The three balance conditions have rank two for interior ``P``; the null
    direction is proportional to ``(1/P0, 1/P1, 1/P2)``. The anchor is the
    minimum-norm solution, hence orthogonal to the direction.
    """
    if not P.is_interior:
        raise DegenerateSystemError(f"solution line needs an interior first move, got {P.p}")
    P0, P1, P2 = P.p
    d = np.array([1.0 / P0, 1.0 / P1, 1.0 / P2])
    d /= np.linalg.norm(d)
    # particular solution with l0 = 0, from the second and first conditions
    l2 = (2 / 3 - P0 - P2) / P2
    l1 = (2 / 3 - P1 - P2 + l2 * P2) / P1
    particular = np.array([0.0, l1, l2])
    anchor = particular - (particular @ d) * d
    return StrategyLine(tuple(anchor), tuple(d))


def _slab_interval(line: StrategyLine, lower, upper) -> tuple[float, float] | None:
    """Parameter range where ``lower <= line(s) <= upper`` componentwise."""
    a, d = np.asarray(line.point), np.asarray(line.direction)
    lo, hi = -math.inf, math.inf
    for ai, di, lw, up in zip(a, d, lower, upper):
        if di == 0.0:
            if ai < lw - ALGEBRA_TOL or ai > up + ALGEBRA_TOL:
                return None
            continue
        s1, s2 = (lw - ai) / di, (up - ai) / di
        lo, hi = max(lo, min(s1, s2)), min(hi, max(s1, s2))
    if lo <= hi:
        return (lo, hi)
    if lo - hi <= ALGEBRA_TOL:
        mid = 0.5 * (lo + hi)
        return (mid, mid)
    return None


def cat2_classical_feasible(P: SimplexPoint) -> tuple[float, float] | None:
    """Segment ``(s_min, s_max)`` of the solution line inside the cube, or None."""
    line = cat2_solution_line(P)
    return _slab_interval(line, (-1.0, -1.0, -1.0), (1.0, 1.0, 1.0))


def cat2_classical_classes(P: SimplexPoint) -> set[PreferenceClass]:
    """Strict preference classes whose closed sign orthant meets the feasible segment.

    The six transitive orders and two cycles correspond one-to-one to the
    eight sign orthants of the parameter cube.
    """
    line = cat2_solution_line(P)
    found: set[PreferenceClass] = set()
    for signs in itertools.product((1.0, -1.0), repeat=3):
        lower = tuple(0.0 if s > 0 else -1.0 for s in signs)
        upper = tuple(1.0 if s > 0 else 0.0 for s in signs)
        if _slab_interval(line, lower, upper) is not None:
            found.add(classify_preferences(ResponseStrategy.cat2(signs)))
    return found


# -- Cat 1 optimum ----------------------------------------------------------


def cat1_optimality_residual(P, l, L) -> np.ndarray:
    """Cat 1's three balance conditions, each as (4 * lambda_k) - 4/3."""
    P0, P1, P2 = (float(v) for v in P)
    l0, l1, l2 = _as_l(l)
    L0, L1, L2 = L.params if isinstance(L, ResponseStrategy) else ResponseStrategy.cat1(L).params
    r0 = (
        (1 - L1) * (1 - l0) * P0
        + (1 + L2) * (1 + l0) * P0
        + (1 + L2) * (1 - l1) * P1
        + (1 - L1) * (1 + l2) * P2
    )
    r1 = (
        (1 - L2) * (1 + l0) * P0
        + (1 + L0) * (1 + l1) * P1
        + (1 - L2) * (1 - l1) * P1
        + (1 + L0) * (1 - l2) * P2
    )
    r2 = (
        (1 + L1) * (1 - l0) * P0
        + (1 - L0) * (1 + l1) * P1
        + (1 - L0) * (1 - l2) * P2
        + (1 + L1) * (1 + l2) * P2
    )
    return np.array([r0, r1, r2]) - 4.0 / 3.0


@dataclass(frozen=True)
class Cat1OptimalFamily:
    """Cat 1 strategies ``L = (c, c, c)``, optimal once Cat 2 is balanced."""

    P: SimplexPoint
    l: tuple[float, float, float]

    def member(self, c: float) -> ResponseStrategy:
        return ResponseStrategy.cat1((c, c, c))

    def __contains__(self, s: ResponseStrategy) -> bool:
        L = s.params
        return s.owner is Owner.CAT1 and max(L) - min(L) < SOLVE_TOL


def cat1_optimal_family(P: SimplexPoint, l) -> Cat1OptimalFamily:
    s2 = ResponseStrategy.cat2(_as_l(l))
    dev = cat2_diet(P, s2).max_deviation((THIRD, THIRD, THIRD))
    if dev >= SOLVE_TOL:
        raise NotAtOptimumError(f"Cat 2 is not balanced at P={P.p}, l={s2.params}: deviation {dev:.3g}")
    return Cat1OptimalFamily(P, s2.params)


# -- deterministic choice functions ------------------------------------------

PAIRS = ((0, 1), (0, 2), (1, 2))


@dataclass(frozen=True)
class PureChoiceFunction:
    """Deterministic choice over the three pairs.

    Bit ``b`` of ``index`` belongs to ``PAIRS[b]``: 0 takes the smaller
    food of the pair, 1 the larger. Index 0 always takes the smaller one.
    """

    index: int

    def __post_init__(self):
        if self.index not in range(8):
            raise DomainError(f"choice function index must be in 0..7, got {self.index}")

    def choose(self, pair: tuple[int, int]) -> int:
        pair = tuple(sorted(pair))
        bit = (self.index >> PAIRS.index(pair)) & 1
        return pair[bit]

    @property
    def mapping(self) -> dict[tuple[int, int], int]:
        return {pair: self.choose(pair) for pair in PAIRS}

    def as_strategy(self, owner: Owner = Owner.CAT1) -> ResponseStrategy:
        sign = 1.0 if owner is Owner.CAT2 else -1.0
        params = []
        for j in range(3):
            plus = (j - 1) % 3
            pair = tuple(sorted({0, 1, 2} - {j}))
            params.append(sign if self.choose(pair) == plus else -sign)
        return ResponseStrategy(tuple(params), owner)


@dataclass(frozen=True)
class AuditEntry:
    function: PureChoiceFunction
    diet: FrequencyTriple
    balanced: bool


def pure_choice_function_audit(P: SimplexPoint, l) -> list[AuditEntry]:
    """Cat 1's diet under each of the eight deterministic choice functions."""
    s2 = ResponseStrategy.cat2(_as_l(l))
    report = []
    for k in range(8):
        f = PureChoiceFunction(k)
        lam = cat1_diet(P, s2, f.as_strategy())
        report.append(AuditEntry(f, lam, lam.is_balanced(SOLVE_TOL)))
    return report
