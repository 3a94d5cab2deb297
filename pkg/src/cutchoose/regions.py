"""Where in the first-move simplex Cat 2 can balance its diet, by strategy type.

Two routes are kept side by side: analytic membership tests (hexagon,
star triangles, line/sphere intersection) and sampling maps that push
random strategies through the closed-form optimal first move.
"""

from __future__ import annotations

import enum
import functools
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from . import classical
from .core import (
    DomainError,
    SimplexPoint,
    classify_preferences,
    is_intransitive,
    is_transitive,
)
from .quantum import cat2_quantum_feasible, l_from_x, sphere_strategy

BOUNDARY_TOL = 1e-12
BLOCK = 4096
MAX_BLOCKS = 100_000


class Model(str, enum.Enum):
    CLASSICAL = "classical"
    QUANTUM = "quantum"


class ClassFilter(str, enum.Enum):
    ANY = "any"
    TRANSITIVE = "transitive"
    INTRANSITIVE = "intransitive"


class StarArm(enum.Enum):
    A = "cycleA"
    B = "cycleB"
    BOTH = "both"


@dataclass(frozen=True)
class RegionQuery:
    model: Model = Model.CLASSICAL
    class_filter: ClassFilter = ClassFilter.ANY
    player: str = "cat2"

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        object.__setattr__(self, "class_filter", ClassFilter(self.class_filter))
        if self.player != "cat2":
            raise DomainError("region maps are defined for Cat 2 only")


@dataclass(frozen=True)
class LabeledPoint:
    """A sampled first move, the class of the strategy that produced it, and its memberships."""

    p: SimplexPoint
    family: str
    labels: frozenset

    def __post_init__(self):
        models = {m for m, _ in self.labels}
        for m in models:
            if (m, ClassFilter.ANY) not in self.labels:
                raise DomainError(f"labels {set(self.labels)} miss the 'any' membership for {m}")


# -- analytic membership -----------------------------------------------------


def hexagon_membership(P: SimplexPoint) -> bool:
    return max(P.p) <= 2 / 3 + BOUNDARY_TOL


def _in_triangle_a(P) -> bool:
    p0, p1, p2 = P
    return max(p0 - p1, p1 - p2, p2 - p0) <= 1 / 3 + BOUNDARY_TOL


def _in_triangle_b(P) -> bool:
    p0, p1, p2 = P
    return max(p1 - p0, p2 - p1, p0 - p2) <= 1 / 3 + BOUNDARY_TOL


# Cleared by validate_star_triangles when the triangles disagree with the oracle.
_TRIANGLES_TRUSTED = True


def _exact_star(P: SimplexPoint) -> tuple[bool, bool]:
    if not P.is_interior:
        # boundary first moves have no solution line; only vertices of the
        # triangles touch the simplex edges
        return _in_triangle_a(P.p), _in_triangle_b(P.p)
    names = {str(c) for c in classical.cat2_classical_classes(P)}
    return "cycleA" in names, "cycleB" in names


def star_membership(P: SimplexPoint) -> StarArm | None:
    """Which cycle orientations Cat 2 can play optimally at ``P`` (classical model).

    Triangle A has vertices (1/3,0,2/3), (2/3,1/3,0), (0,2/3,1/3), i.e.
    ``P_i - P_(i+1) <= 1/3`` for all i. Triangle B is its mirror image.
    """
    if _TRIANGLES_TRUSTED:
        a, b = _in_triangle_a(P.p), _in_triangle_b(P.p)
    else:
        a, b = _exact_star(P)
    if a and b:
        return StarArm.BOTH
    if a:
        return StarArm.A
    if b:
        return StarArm.B
    return None


def classical_membership(P: SimplexPoint, class_filter: ClassFilter | str) -> bool:
    """Membership from the solution line and the sign orthants of the cube."""
    class_filter = ClassFilter(class_filter)
    if class_filter is ClassFilter.ANY:
        return classical.cat2_classical_feasible(P) is not None
    classes = classical.cat2_classical_classes(P)
    if class_filter is ClassFilter.TRANSITIVE:
        return any(is_transitive(c) for c in classes)
    return any(is_intransitive(c) for c in classes)


def quantum_membership(P: SimplexPoint, class_filter: ClassFilter | str) -> bool:
    class_filter = ClassFilter(class_filter)
    points = cat2_quantum_feasible(P)
    if class_filter is ClassFilter.ANY:
        return bool(points)
    classes = [classify_preferences(sphere_strategy(x)) for x in points]
    if class_filter is ClassFilter.TRANSITIVE:
        return any(is_transitive(c) for c in classes)
    return any(is_intransitive(c) for c in classes)


# -- star oracle -------------------------------------------------------------


@functools.lru_cache(maxsize=4)
def _octant_images(per_axis: int) -> tuple[np.ndarray, np.ndarray]:
    """Images of regular grids over the closed positive and negative octants."""
    ticks = np.linspace(0.0, 1.0, per_axis)
    g = np.stack(np.meshgrid(ticks, ticks, ticks, indexing="ij"), axis=-1).reshape(-1, 3)
    out = []
    for octant in (g, -g):
        P, ok = classical.first_move_solutions(octant)
        image = P[ok]
        image.flags.writeable = False
        out.append(image)
    return out[0], out[1]


def star_oracle(points: np.ndarray, per_axis: int = 121, radius: float = 3e-3) -> np.ndarray:
    """Brute-force star test: is some sampled octant image within ``radius``?

    Returns a boolean array of shape (n, 2): column 0 for the all-positive
    octant (cycle A), column 1 for the all-negative one (cycle B).
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    result = np.zeros((len(points), 2), dtype=bool)
    for col, image in enumerate(_octant_images(per_axis)):
        dist, _ = cKDTree(image).query(points)
        result[:, col] = dist <= radius
    return result


def simplex_grid(resolution: int, interior: bool = False) -> np.ndarray:
    """All points ``(i, j, k) / resolution`` of the simplex."""
    start = 1 if interior else 0
    rows = [
        (i, j, resolution - i - j)
        for i in range(start, resolution + 1)
        for j in range(start, resolution + 1 - i)
        if resolution - i - j >= start
    ]
    return np.array(rows, dtype=float) / resolution


@dataclass(frozen=True)
class StarValidation:
    agreement: float
    disagreements: np.ndarray
    n_points: int


def validate_star_triangles(resolution: int = 100, threshold: float = 0.999) -> StarValidation:
    """Compare the analytic triangles against :func:`star_oracle` on a grid.

    If agreement falls below ``threshold`` the triangles stop being used by
    :func:`star_membership` and a warning is issued.
    """
    global _TRIANGLES_TRUSTED
    grid = simplex_grid(resolution)
    oracle = star_oracle(grid)
    analytic = np.array([[_in_triangle_a(p), _in_triangle_b(p)] for p in grid])
    bad = np.any(oracle != analytic, axis=1)
    agreement = 1.0 - bad.mean()
    if agreement < threshold:
        _TRIANGLES_TRUSTED = False
        warnings.warn(
            f"star triangles agree with the sampling oracle on only {agreement:.4%} of grid points; "
            "falling back to exact line tests",
            RuntimeWarning,
            stacklevel=2,
        )
    return StarValidation(float(agreement), grid[bad], len(grid))


# -- sampling maps -----------------------------------------------------------


def sign_families(ls: np.ndarray) -> np.ndarray:
    """Vectorized ``class_family(classify_preferences(...))`` for Cat 2 parameters."""
    ls = np.asarray(ls)
    pos = (ls > 0).all(axis=1)
    neg = (ls < 0).all(axis=1)
    tie = (ls == 0).any(axis=1)
    fam = np.full(len(ls), "transitive", dtype=object)
    fam[pos | neg] = "intransitive"
    fam[tie] = "boundary"
    return fam


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))


def _sample_block(query: RegionQuery, seed: int, block: int) -> tuple[np.ndarray, np.ndarray]:
    rng = _block_rng(seed, block)
    if query.model is Model.CLASSICAL:
        ls = rng.uniform(-1.0, 1.0, size=(BLOCK, 3))
    else:
        xs = rng.standard_normal(size=(BLOCK, 3))
        xs /= np.linalg.norm(xs, axis=1, keepdims=True)
        ls = np.stack(l_from_x(xs.T), axis=1)
    P, ok = classical.first_move_solutions(ls)
    fam = sign_families(ls)
    if query.class_filter is not ClassFilter.ANY:
        ok &= fam == query.class_filter.value
    return P[ok], fam[ok]


def montecarlo_map(query: RegionQuery, n: int, seed: int, workers: int = 1) -> list[LabeledPoint]:
    """``n`` first moves at which a random optimal Cat 2 strategy exists.

    Strategies are drawn uniformly from the cube (classical) or the sphere
    (quantum) and mapped to the first move they balance; draws that balance
    no first move, or fail the class filter, are rejected. Draws come in
    fixed-size blocks, each with its own generator spawned from ``seed``,
    so the output does not depend on ``workers``.
    """
    if n < 1:
        raise DomainError(f"sample count must be at least 1, got {n}")
    if seed < 0:
        raise DomainError(f"seed must be non-negative, got {seed}")
    Ps, fams = [], []
    have, block = 0, 0
    with ThreadPoolExecutor(max_workers=workers) as pool:
        while have < n:
            if block >= MAX_BLOCKS:
                raise RuntimeError(f"only {have} of {n} samples accepted after {block} blocks")
            batch = range(block, block + max(workers, 1))
            for P, fam in pool.map(lambda b: _sample_block(query, seed, b), batch):
                Ps.append(P)
                fams.append(fam)
                have += len(P)
            block += len(batch)
    P = np.concatenate(Ps)[:n]
    fam = np.concatenate(fams)[:n]
    model = query.model
    out = []
    for p, f in zip(P, fam):
        labels = {(model, ClassFilter.ANY)}
        if f != "boundary":
            labels.add((model, ClassFilter(f)))
        out.append(LabeledPoint(SimplexPoint(tuple(p / p.sum())), str(f), frozenset(labels)))
    return out
