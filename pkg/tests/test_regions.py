import numpy as np
import pytest

from cutchoose import regions
from cutchoose.classical import cat2_solution_line, optimal_first_move
from cutchoose.core import DomainError, SimplexPoint
from cutchoose.regions import (
    ClassFilter,
    LabeledPoint,
    Model,
    RegionQuery,
    StarArm,
    classical_membership,
    hexagon_membership,
    montecarlo_map,
    quantum_membership,
    simplex_grid,
    star_membership,
    star_oracle,
    validate_star_triangles,
)

THIRDS = (1 / 3, 1 / 3, 1 / 3)


def test_hexagon_examples():
    assert hexagon_membership(SimplexPoint(THIRDS))
    assert not hexagon_membership(SimplexPoint((0.7, 0.2, 0.1)))
    assert hexagon_membership(SimplexPoint((2 / 3, 1 / 3, 0)))


def test_star_examples():
    assert star_membership(SimplexPoint(THIRDS)) is StarArm.BOTH
    assert star_membership(SimplexPoint((1 / 3, 0, 2 / 3))) is StarArm.A
    assert optimal_first_move((1, 1, 0)).p == pytest.approx((1 / 3, 0, 2 / 3), abs=1e-15)
    assert star_membership(SimplexPoint((2 / 3, 0, 1 / 3))) is StarArm.B
    assert star_membership(SimplexPoint((0.9, 0.05, 0.05))) is None
    # inside the hexagon, between two arms of the star: transitive strategies only
    P = SimplexPoint((0.48, 0.48, 0.04))
    assert star_membership(P) is None
    assert hexagon_membership(P) and classical_membership(P, "transitive")
    assert not classical_membership(P, "intransitive")


def test_star_point_near_triangle_vertex():
    # (0.64, 0.32, 0.04) lies in triangle A: an all-positive preimage exists
    P = SimplexPoint((0.64, 0.32, 0.04))
    assert star_membership(P) is StarArm.A
    line = cat2_solution_line(P)
    l = line.at(0.3)
    assert (l > 0).all() and (l <= 1).all()
    assert optimal_first_move(l).p == pytest.approx(P.p, abs=1e-12)
    assert star_oracle([P.p]).tolist() == [[True, False]]


def test_star_oracle_agreement_grid():
    v = validate_star_triangles(resolution=100)
    assert v.n_points == 5151
    assert v.agreement >= 0.999
    assert regions._TRIANGLES_TRUSTED


def test_star_inside_hexagon_fine_grid():
    for p in simplex_grid(200):
        P = SimplexPoint(tuple(p))
        if star_membership(P) is not None:
            assert hexagon_membership(P)


def test_classical_membership_matches_analytic_regions():
    for p in simplex_grid(60, interior=True):
        P = SimplexPoint(tuple(p))
        hexa = hexagon_membership(P)
        assert classical_membership(P, "any") == hexa
        assert classical_membership(P, "transitive") == hexa
        assert classical_membership(P, "intransitive") == (star_membership(P) is not None)


def test_quantum_membership_examples():
    c = SimplexPoint(THIRDS)
    assert not quantum_membership(c, ClassFilter.TRANSITIVE)
    assert quantum_membership(c, ClassFilter.INTRANSITIVE)
    assert quantum_membership(c, ClassFilter.ANY)
    assert not quantum_membership(SimplexPoint((0.7, 0.2, 0.1)), ClassFilter.ANY)


def test_quantum_contrast_and_nesting_grid():
    contrast = 0
    for p in simplex_grid(60, interior=True):
        P = SimplexPoint(tuple(p))
        anyq = quantum_membership(P, "any")
        tr = quantum_membership(P, "transitive")
        intr = quantum_membership(P, "intransitive")
        assert (tr or intr) <= anyq
        assert anyq <= classical_membership(P, "any")
        contrast += anyq and not tr
    assert contrast > 0


def test_montecarlo_classical_any_in_hexagon():
    pts = montecarlo_map(RegionQuery(Model.CLASSICAL, ClassFilter.ANY), 10_000, seed=7)
    assert len(pts) == 10_000
    assert all(hexagon_membership(lp.p) for lp in pts)
    fams = {lp.family for lp in pts}
    assert fams <= {"transitive", "intransitive", "boundary"}


def test_montecarlo_classical_intransitive_in_star():
    pts = montecarlo_map(RegionQuery(Model.CLASSICAL, ClassFilter.INTRANSITIVE), 10_000, seed=7)
    assert all(star_membership(lp.p) is not None for lp in pts)
    assert all(lp.family == "intransitive" for lp in pts)


def test_montecarlo_quantum_labels_agree_with_membership():
    for f in ClassFilter:
        pts = montecarlo_map(RegionQuery(Model.QUANTUM, f), 300, seed=3)
        for lp in pts:
            assert (Model.QUANTUM, ClassFilter.ANY) in lp.labels
            if lp.p.is_interior:
                assert quantum_membership(lp.p, ClassFilter.ANY)
                if lp.family != "boundary":
                    assert quantum_membership(lp.p, ClassFilter(lp.family))


def test_montecarlo_nesting_labels():
    for model in Model:
        for lp in montecarlo_map(RegionQuery(model, ClassFilter.ANY), 2000, seed=1):
            if (model, ClassFilter.TRANSITIVE) in lp.labels or (model, ClassFilter.INTRANSITIVE) in lp.labels:
                assert (model, ClassFilter.ANY) in lp.labels


def test_montecarlo_determinism_and_schedule_independence():
    q = RegionQuery(Model.CLASSICAL, ClassFilter.TRANSITIVE)
    a = montecarlo_map(q, 5000, seed=42)
    b = montecarlo_map(q, 5000, seed=42)
    c = montecarlo_map(q, 5000, seed=42, workers=4)
    assert a == b == c
    assert montecarlo_map(q, 5000, seed=43) != a


def test_montecarlo_rejects_bad_inputs():
    with pytest.raises(DomainError):
        montecarlo_map(RegionQuery(), 0, seed=1)
    with pytest.raises(DomainError):
        montecarlo_map(RegionQuery(), 10, seed=-1)
    with pytest.raises(DomainError):
        RegionQuery(player="cat1")
    with pytest.raises(ValueError):
        RegionQuery(model="entangled")


def test_labeled_point_invariant():
    with pytest.raises(DomainError):
        LabeledPoint(SimplexPoint(THIRDS), "transitive", frozenset({(Model.CLASSICAL, ClassFilter.TRANSITIVE)}))


def test_sign_families_match_classifier():
    from cutchoose.core import ResponseStrategy, class_family, classify_preferences

    rng = np.random.default_rng(4)
    ls = np.concatenate([rng.uniform(-1, 1, (500, 3)), rng.choice([-1.0, 0.0, 1.0], (200, 3))])
    fams = regions.sign_families(ls)
    for l, f in zip(ls, fams):
        assert class_family(classify_preferences(ResponseStrategy.cat2(l))) == f


def test_triangle_demotion(monkeypatch):
    # registered first so teardown restores the trusted state
    monkeypatch.setattr(regions, "_TRIANGLES_TRUSTED", True)
    monkeypatch.setattr(regions, "_in_triangle_a", lambda p: True)
    with pytest.warns(RuntimeWarning):
        v = validate_star_triangles(resolution=30)
    assert v.agreement < 0.999
    assert not regions._TRIANGLES_TRUSTED
    assert star_membership(SimplexPoint((0.8, 0.1, 0.1))) is None
    assert star_membership(SimplexPoint(THIRDS)) is StarArm.BOTH
