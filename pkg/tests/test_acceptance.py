"""Acceptance criteria, one test each, run at their stated tolerances.

Every test records a PASS/FAIL line through the ``acceptance`` fixture; the
lines are repeated in a summary section at the end of the pytest run.
"""

import math
import time

import numpy as np

from cutchoose import cli
from cutchoose.classical import (
    OutsideSimplexError,
    cat1_diet,
    cat1_optimal_family,
    cat1_optimality_residual,
    cat2_classical_feasible,
    cat2_diet,
    first_move_solution,
    optimal_first_move,
    pure_choice_function_audit,
)
from cutchoose.core import (
    Owner,
    ResponseStrategy,
    SimplexPoint,
    SingularInputError,
    SpherePoint,
    classify_preferences,
    is_intransitive,
    is_transitive,
)
from cutchoose.quantum import (
    cat1_quantum_optima,
    mub_triple,
    sphere_probabilities,
    sphere_strategy,
    z_from_sphere,
    z_probabilities,
)
from cutchoose.regions import (
    ClassFilter,
    Model,
    RegionQuery,
    hexagon_membership,
    montecarlo_map,
    quantum_membership,
    star_membership,
    star_oracle,
)
from cutchoose.sim import GameConfig, empirical_frequencies, run_game

THIRDS = (1 / 3, 1 / 3, 1 / 3)


def feasible_scenario(rng):
    """Random Cat 2 strategy together with the first move that balances it."""
    while True:
        l = tuple(rng.uniform(-1, 1, 3))
        try:
            return optimal_first_move(l), l
        except (OutsideSimplexError, SingularInputError):
            continue


def eq2_diet(P, l):
    """Cat 2's diet for an array of first moves and strategies, row by row."""
    P0, P1, P2 = P.T
    l0, l1, l2 = l.T
    return 0.5 * np.stack(
        [
            (1 + l1) * P1 + (1 - l2) * P2,
            (1 - l0) * P0 + (1 + l2) * P2,
            (1 + l0) * P0 + (1 - l1) * P1,
        ],
        axis=1,
    )


def test_criterion_1_closed_form(acceptance):
    rng = np.random.default_rng(1)
    ls = rng.uniform(-1, 1, (10_000, 3))
    ls = ls[(np.abs(ls) < 1).all(axis=1)]
    start = time.perf_counter()
    raw = np.array([first_move_solution(l) for l in ls])
    identity_err = np.abs(eq2_diet(raw, ls) - 1 / 3).max()
    diet_err, on_simplex = 0.0, 0
    for l, P in zip(ls, raw):
        if P.min() < 0:
            continue
        on_simplex += 1
        omega = cat2_diet(optimal_first_move(l), ResponseStrategy.cat2(l))
        diet_err = max(diet_err, omega.max_deviation(THIRDS))
    elapsed = time.perf_counter() - start
    passed = len(ls) == 10_000 and identity_err < 1e-12 and diet_err < 1e-12 and elapsed < 1.0
    acceptance(
        1,
        passed,
        f"identity err {identity_err:.2e} over {len(ls)} l, cat2_diet err {diet_err:.2e} "
        f"over {on_simplex} on-simplex l, {elapsed:.2f}s",
    )


def test_criterion_2_feasibility_bound(acceptance):
    n, mismatches, checked = 200, 0, 0
    for i in range(1, n):
        for j in range(1, n - i):
            P = SimplexPoint((i / n, j / n, (n - i - j) / n))
            checked += 1
            mismatches += (cat2_classical_feasible(P) is not None) != (max(P.p) <= 2 / 3 + 1e-12)
    acceptance(2, mismatches == 0, f"{mismatches} mismatches over {checked} interior grid points")


def test_criterion_3_cat1_classical(acceptance):
    rng = np.random.default_rng(3)
    mismatches, transitive_members, members = 0, 0, 0
    for trial in range(10_000):
        P, l = feasible_scenario(rng)
        kind = trial % 3
        if kind == 0:
            c = rng.uniform(-1, 1)
            L = np.array([c, c, c])
        elif kind == 1:
            L = rng.uniform(-1, 1, 3)
        else:
            c = rng.uniform(-0.99, 0.99)
            L = np.clip(c + rng.choice([-1, 1], 3) * 10 ** rng.uniform(-6, -2, 3), -1, 1)
        s1 = ResponseStrategy.cat1(L)
        residual_zero = np.abs(cat1_optimality_residual(P.p, l, s1)).max() < 1e-10
        equal = np.abs(L[:, None] - L[None, :]).max() < 1e-10
        mismatches += residual_zero != equal
        if equal and L[0] != 0:
            members += 1
            assert s1 in cat1_optimal_family(P, l)
            cls = classify_preferences(s1)
            transitive_members += not is_intransitive(cls) or is_transitive(cls)
    passed = mismatches == 0 and transitive_members == 0 and members > 3000
    acceptance(
        3,
        passed,
        f"{mismatches} residual/equality mismatches over 10000 trials, "
        f"{transitive_members} non-cyclic among {members} strict optimal members",
    )


def test_criterion_4_quantum_optima(acceptance):
    r = 1 / math.sqrt(3)
    first, second = cat1_quantum_optima()
    err = max(
        max(abs(a - b) for a, b in zip(first.x, (-r, r, -r))),
        max(abs(a - b) for a, b in zip(second.x, (r, -r, r))),
    )
    classes = [classify_preferences(sphere_strategy(x, Owner.CAT1)) for x in (first, second)]
    passed = err < 1e-14 and all(is_intransitive(c) for c in classes)
    acceptance(4, passed, f"component err {err:.1e}, classes {[str(c) for c in classes]}")


def test_criterion_5_centroid_contrast(acceptance):
    c = SimplexPoint(THIRDS)
    tr = quantum_membership(c, ClassFilter.TRANSITIVE)
    intr = quantum_membership(c, ClassFilter.INTRANSITIVE)
    acceptance(5, (not tr) and intr, f"transitive={tr}, intransitive={intr}")


def test_criterion_6_region_reproduction(acceptance, tmp_path, capsys):
    start = time.perf_counter()
    anyq = montecarlo_map(RegionQuery(Model.CLASSICAL, ClassFilter.ANY), 10_000, seed=7)
    intr = montecarlo_map(RegionQuery(Model.CLASSICAL, ClassFilter.INTRANSITIVE), 10_000, seed=7)
    outside_hex = sum(not hexagon_membership(lp.p) for lp in anyq)
    outside_star = sum(star_membership(lp.p) is None for lp in intr)
    oracle = star_oracle(np.array([lp.p.p for lp in intr]))
    oracle_misses = int((~oracle.any(axis=1)).sum())
    csv_path, svg_path = tmp_path / "region.csv", tmp_path / "region.svg"
    base = ["region", "--model", "classical", "--class", "intransitive", "--samples", "10000", "--seed", "7"]
    codes = [
        cli.main([*base, "--format", "csv", "--out", str(csv_path)]),
        cli.main([*base, "--format", "svg", "--out", str(svg_path)]),
    ]
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    csv_rows = csv_path.read_text().count("\n") - 1
    svg_ok = svg_path.read_text().count("<circle") == 10_000
    passed = (
        len(anyq) == len(intr) == 10_000
        and outside_hex == outside_star == oracle_misses == 0
        and codes == [0, 0]
        and csv_rows == 10_000
        and svg_ok
        and elapsed < 5.0
    )
    acceptance(
        6,
        passed,
        f"{outside_hex} outside hexagon, {outside_star} outside star, {oracle_misses} oracle misses, "
        f"csv rows {csv_rows}, svg ok {svg_ok}, {elapsed:.2f}s",
    )


def test_criterion_7_simulation_oracle(acceptance):
    rng = np.random.default_rng(7)
    start = time.perf_counter()
    P, l = feasible_scenario(rng)
    c = rng.uniform(-1, 1)
    tally = run_game(GameConfig(P, ResponseStrategy.cat1((c, c, c)), ResponseStrategy.cat2(l), 1_000_000, 70))
    lam, omega = empirical_frequencies(tally)
    optimal_dev = max(lam.max_deviation(THIRDS), omega.max_deviation(THIRDS))
    scenario_dev = 0.0
    for k in range(20):
        P = SimplexPoint(tuple(rng.dirichlet((1, 1, 1))))
        s2 = ResponseStrategy.cat2(rng.uniform(-1, 1, 3))
        s1 = ResponseStrategy.cat1(rng.uniform(-1, 1, 3))
        lam, omega = empirical_frequencies(run_game(GameConfig(P, s1, s2, 1_000_000, 100 + k)))
        scenario_dev = max(
            scenario_dev,
            lam.max_deviation(cat1_diet(P, s2, s1).f),
            omega.max_deviation(cat2_diet(P, s2).f),
        )
    elapsed = time.perf_counter() - start
    passed = optimal_dev < 0.002 and scenario_dev < 0.002 and elapsed < 30.0
    acceptance(
        7,
        passed,
        f"optimal max dev {optimal_dev:.5f}, 20 scenarios max dev {scenario_dev:.5f}, {elapsed:.2f}s",
    )


def test_criterion_8_mub_and_chart(acceptance):
    bases = mub_triple()
    cross = [
        abs(np.vdot(u, v)) ** 2
        for a in range(3)
        for b in range(a + 1, 3)
        for u in bases[a].vectors
        for v in bases[b].vectors
    ]
    mub_err = max(abs(p - 0.5) for p in cross)
    rng = np.random.default_rng(8)
    xs = rng.standard_normal((10_000, 3))
    xs /= np.linalg.norm(xs, axis=1, keepdims=True)
    chart_err = 0.0
    for row in xs:
        x = SpherePoint(tuple(row))
        via_z, direct = z_probabilities(z_from_sphere(x)), sphere_probabilities(x)
        chart_err = max(chart_err, max(abs(via_z[k] - direct[k]) for k in direct))
    passed = len(cross) == 12 and mub_err < 1e-14 and chart_err < 1e-12
    acceptance(8, passed, f"{len(cross)} overlaps, max err {mub_err:.1e}; chart err {chart_err:.1e} over 10000 points")


def test_criterion_9_pure_function_audit(acceptance):
    rows = pure_choice_function_audit(SimplexPoint(THIRDS), (0.0, 0.0, 0.0))
    balanced = [e.function.index for e in rows if e.balanced]
    acceptance(9, len(rows) == 8 and not balanced, f"balanced choice functions: {balanced}")
