"""Pure one-qubit strategies.

A strategy is a ray ``|z> = |0> + z|1>`` with ``z`` in the extended complex
plane. Measuring it in one of three mutually unbiased bases gives the
choice probabilities for one pair of foods:

    pair {0,1} (no food 2): computational basis, |0> -> food 0, |1> -> food 1
    pair {0,2} (no food 1): |+>  -> food 0, |->  -> food 2
    pair {1,2} (no food 0): |+i> -> food 1, |-i> -> food 2

The sphere chart is ``z = (x1 + i x2) / (1 - x3)`` with the north pole at
``z = inf``. On the sphere, Cat 2's classical parameters are
``l = (-x2, x1, x3)``; Cat 1's are the negation of that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classical import cat2_solution_line
from .core import (
    INFINITY,
    DomainError,
    ExtendedComplex,
    Owner,
    ResponseStrategy,
    SimplexPoint,
    SpherePoint,
    is_infinity,
)

TANGENT_TOL = 1e-12


@dataclass(frozen=True)
class QubitBasis:
    """Orthonormal basis of C^2 with each vector tagged by the food it selects."""

    vectors: tuple[np.ndarray, np.ndarray]
    foods: tuple[int, int]

    def __post_init__(self):
        vs = tuple(np.asarray(v, dtype=complex) for v in self.vectors)
        gram = np.array([[np.vdot(a, b) for b in vs] for a in vs])
        if not np.allclose(gram, np.eye(2), atol=1e-12, rtol=0):
            raise DomainError("basis vectors are not orthonormal")
        object.__setattr__(self, "vectors", vs)

    @property
    def missing(self) -> int:
        return ({0, 1, 2} - set(self.foods)).pop()


def mub_triple() -> tuple[QubitBasis, QubitBasis, QubitBasis]:
    """Computational, +/- and +/-i bases, in that order."""
    r = 1.0 / math.sqrt(2.0)
    z_basis = QubitBasis((np.array([1, 0]), np.array([0, 1])), (0, 1))
    x_basis = QubitBasis((r * np.array([1, 1]), r * np.array([1, -1])), (0, 2))
    y_basis = QubitBasis((r * np.array([1, 1j]), r * np.array([1, -1j])), (1, 2))
    return z_basis, x_basis, y_basis


def ket(z: ExtendedComplex) -> np.ndarray:
    """Unit vector for the ray ``|0> + z|1>``."""
    if is_infinity(z):
        return np.array([0.0, 1.0], dtype=complex)
    v = np.array([1.0, complex(z)], dtype=complex)
    return v / np.linalg.norm(v)


def born_probabilities(z: ExtendedComplex) -> dict[tuple[int, int], float]:
    """``{(chosen, missing): probability}`` by measuring ``|z>`` in each basis."""
    psi = ket(z)
    out = {}
    for basis in mub_triple():
        for vec, k in zip(basis.vectors, basis.foods):
            out[(k, basis.missing)] = float(abs(np.vdot(vec, psi)) ** 2)
    return out


def z_probabilities(z: ExtendedComplex) -> dict[tuple[int, int], float]:
    """The six choice probabilities as rational functions of ``z``.

    The Moebius ratios ``(1 - z)/(1 + z)`` and ``(1 + iz)/(1 - iz)`` are
    cleared of denominators, which removes the poles at ``z = -1`` and
    ``z = -i``. At infinity the limiting values are used.
    """
    if is_infinity(z):
        c0b2, c0b1, c1b0 = 0.0, 0.5, 0.5
    else:
        z = complex(z)
        r2 = abs(z) ** 2
        c0b2 = 1.0 / (1.0 + r2)
        a, b = abs(1 + z) ** 2, abs(1 - z) ** 2
        c0b1 = a / (a + b)
        a, b = abs(1 - 1j * z) ** 2, abs(1 + 1j * z) ** 2
        c1b0 = a / (a + b)
    return {
        (0, 2): c0b2,
        (1, 2): 1.0 - c0b2,
        (0, 1): c0b1,
        (2, 1): 1.0 - c0b1,
        (1, 0): c1b0,
        (2, 0): 1.0 - c1b0,
    }


def _favoured(probs: dict[tuple[int, int], float]) -> tuple[float, float, float]:
    return tuple(probs[((j - 1) % 3, j)] for j in range(3))  # type: ignore[return-value]


def probs_from_z(z: ExtendedComplex, owner: Owner = Owner.CAT2) -> ResponseStrategy:
    return ResponseStrategy.from_favoured(_favoured(z_probabilities(z)), owner)


def sphere_probabilities(x: SpherePoint) -> dict[tuple[int, int], float]:
    """The six choice probabilities as affine functions of the sphere point."""
    x1, x2, x3 = x.x
    return {
        (0, 2): (1 - x3) / 2,
        (1, 2): (1 + x3) / 2,
        (0, 1): (1 + x1) / 2,
        (2, 1): (1 - x1) / 2,
        (1, 0): (1 + x2) / 2,
        (2, 0): (1 - x2) / 2,
    }


def l_from_x(x):
    x1, x2, x3 = x
    return (-x2, x1, x3)


def x_from_l(l):
    l0, l1, l2 = l
    return (l1, -l0, l2)


def sphere_strategy(x: SpherePoint, owner: Owner = Owner.CAT2) -> ResponseStrategy:
    """Classical parameters of the qubit strategy ``x`` for the given player."""
    l = l_from_x(x.x)
    if owner is Owner.CAT1:
        l = tuple(-v for v in l)
    return ResponseStrategy(l, owner)


def sphere_from_z(z: ExtendedComplex) -> SpherePoint:
    if is_infinity(z):
        return SpherePoint((0.0, 0.0, 1.0))
    z = complex(z)
    r2 = abs(z) ** 2
    x = np.array([2 * z.real, 2 * z.imag, r2 - 1.0]) / (1.0 + r2)
    return SpherePoint(tuple(x / np.linalg.norm(x)))


def z_from_sphere(x: SpherePoint) -> ExtendedComplex:
    x1, x2, x3 = x.x
    if x3 > 0:
        # (1 + x3) / (x1 - i x2) equals the chart value and avoids 1 - x3 cancellation
        w = complex(x1, -x2)
        if w == 0:
            return INFINITY
        return (1.0 + x3) / w
    return complex(x1, x2) / (1.0 - x3)


def cat2_quantum_feasible(P: SimplexPoint) -> list[SpherePoint]:
    """Qubit strategies giving Cat 2 a balanced diet at first move ``P``.

    Intersects the classical solution line with the unit sphere. The anchor
    of the line is orthogonal to its unit direction, so the line meets the
    sphere at ``s = +-sqrt(1 - |anchor|^2)``.
    """
    line = cat2_solution_line(P)
    a, d = np.asarray(line.point), np.asarray(line.direction)
    disc = 1.0 - float(a @ a)
    if disc < -TANGENT_TOL:
        return []
    if disc <= TANGENT_TOL:
        roots = [0.0]
    else:
        root = math.sqrt(disc)
        roots = [-root, root]
    points = []
    for s in roots:
        l = a + s * d
        x = np.array(x_from_l(l))
        points.append(SpherePoint(tuple(x / np.linalg.norm(x))))
    return points


def cat1_quantum_conditions(X) -> np.ndarray:
    """Linear conditions on Cat 1's sphere point once Cat 2 is balanced."""
    X1, X2, X3 = (float(v) for v in X)
    return np.array([X1 - X3, X2 + X3, X1 + X2])


def cat1_quantum_optima() -> tuple[SpherePoint, SpherePoint]:
    """The two unit vectors solving :func:`cat1_quantum_conditions`.

    The conditions have rank two; the null direction is the cross product
    of two independent rows.
    """
    n = np.cross([1.0, 0.0, -1.0], [0.0, 1.0, 1.0])
    n /= np.linalg.norm(n)
    return SpherePoint(tuple(-n)), SpherePoint(tuple(n))
