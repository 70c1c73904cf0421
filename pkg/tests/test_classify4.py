"""Tests for the 4-dimensional pipeline, the arc enumeration and the case tables."""

import pytest

from orbitspace.catalog import CaseDescriptor
from orbitspace.classify4 import (
    THEOREM_B,
    SphereOnly,
    SpherePlusPoint,
    SpherePlusTwoPoints,
    TheoremBCase,
    TwoSpheres,
    admissible_groups,
    build_orbit_space,
    classify_config,
    classify_space,
    cohomogeneity_one,
    distinct_actions,
    enumerate_arc_cases,
    euler_check,
    fixed_point_euler,
    theoremB_lookup,
)
from orbitspace.errors import IllegalWeights, InvariantRange, NoSuchCase, UnsupportedConfiguration
from orbitspace.manifolds import ManifoldExpr
from orbitspace.orbit_data import WeightedArc, WeightedCircle, WeightedOrbitSpace, validate_legality
from orbitspace.plumbing import assemble_chain, intersection_matrix

K_MAX = 12

S4 = ManifoldExpr.of("S4")
CP2 = ManifoldExpr.of("CP2")
MINUS_CP2 = ManifoldExpr.of("-CP2")
S2XS2 = ManifoldExpr.of("S2xS2")
MIXED = ManifoldExpr.of("CP2", "-CP2")
TWO_CP2 = ManifoldExpr.of("CP2", "CP2")
TWO_MINUS_CP2 = ManifoldExpr.of("-CP2", "-CP2")

Z2_ARC = WeightedArc(0, [(2, 1)], -1)


def supported_configs():
    configs = [SphereOnly(), SpherePlusPoint(1), SpherePlusPoint(-1)]
    configs += [TwoSpheres(omega) for omega in range(-10, 11)]
    configs += [SpherePlusTwoPoints(point_signs=(a, b)) for a in (1, -1) for b in (1, -1)]
    configs += [SpherePlusTwoPoints(arc=case.arc) for case in enumerate_arc_cases(K_MAX)]
    return configs


@pytest.fixture(scope="module")
def cases():
    return enumerate_arc_cases(K_MAX)


def test_build_orbit_space():
    assert build_orbit_space(SphereOnly()) == WeightedOrbitSpace(spheres=(0,), simply_connected=True)
    assert build_orbit_space(SpherePlusTwoPoints(point_signs=(1, 1))) == \
        WeightedOrbitSpace(spheres=(-2,), points=(1, 1), simply_connected=True)
    assert build_orbit_space(SpherePlusTwoPoints(arc=Z2_ARC)) == \
        WeightedOrbitSpace(spheres=(1,), arcs=(Z2_ARC,), simply_connected=True)


def test_build_orbit_space_rejects_illegal_arc():
    with pytest.raises(IllegalWeights):
        build_orbit_space(SpherePlusTwoPoints(arc=WeightedArc(0, [(5, 4)], 0)))


def test_two_points_need_exactly_one_description():
    with pytest.raises(InvariantRange):
        SpherePlusTwoPoints()
    with pytest.raises(InvariantRange):
        SpherePlusTwoPoints(arc=Z2_ARC, point_signs=(1, 1))
    with pytest.raises(InvariantRange):
        SpherePlusTwoPoints(point_signs=(1, 2))


def test_sphere_only_is_s4():
    result = classify_config(SphereOnly())
    assert result.manifold == S4
    assert result.extendable
    assert result.trace.qm.n == 0


@pytest.mark.parametrize("sign, expected", [(1, MINUS_CP2), (-1, CP2)])
def test_sphere_and_point(sign, expected):
    result = classify_config(SpherePlusPoint(sign))
    assert result.manifold == expected
    assert result.trace.qm.to_list() == [[-sign]]


@pytest.mark.parametrize("omega", range(-10, 11))
def test_two_spheres_depend_on_parity(omega):
    result = classify_config(TwoSpheres(omega))
    assert result.manifold == (S2XS2 if omega % 2 == 0 else MIXED)
    assert result.trace.qm.to_list() == [[omega, 1], [1, 0]]


@pytest.mark.parametrize("signs, expected", [
    ((1, 1), TWO_MINUS_CP2),
    ((1, -1), MIXED),
    ((-1, 1), MIXED),
    ((-1, -1), TWO_CP2),
])
def test_sphere_and_two_points(signs, expected):
    assert classify_config(SpherePlusTwoPoints(point_signs=signs)).manifold == expected


def test_mixed_point_signs_form():
    result = classify_config(SpherePlusTwoPoints(point_signs=(1, -1)))
    assert result.trace.qm.to_list() == [[0, 1], [1, 1]]


def test_z2_arc():
    result = classify_config(SpherePlusTwoPoints(arc=Z2_ARC))
    assert result.manifold == TWO_CP2
    assert result.extendable
    assert result.trace.euler_ok
    assert result.trace.qm.to_list() == [[1, 1], [1, 2]]
    assert result.trace.reduction.steps == [(1, 2, -1)]
    assert not result.trace.notes


@pytest.mark.parametrize("k", range(2, K_MAX + 1))
def test_arc_parity(k):
    expected = S2XS2 if k % 2 == 0 else MIXED
    for arc in (WeightedArc(0, [(k, 1)], 0), WeightedArc(-1, [(k, k - 1)], -1)):
        result = classify_config(SpherePlusTwoPoints(arc=arc))
        assert result.manifold == expected
        assert result.trace.euler_ok


@pytest.mark.parametrize("k", range(3, K_MAX + 1))
def test_zero_zero_arc_needs_beta_one(k):
    with pytest.raises(IllegalWeights):
        classify_config(SpherePlusTwoPoints(arc=WeightedArc(0, [(k, k - 1)], 0)))


def test_enumeration_matches_table(cases):
    assert len(cases) == 2 * (K_MAX - 1) + 2
    rows = [case.row() for case in cases]
    expected = [(0, 0, 1, -1, 0, k, 1, -k) for k in range(2, K_MAX + 1)]
    expected.append((0, -1, 1, 1, 1, 2, 1, 2))
    expected.append((-1, 0, -1, -1, -1, 2, 1, -2))
    expected += [(-1, -1, -1, 1, 0, k, k - 1, k) for k in range(2, K_MAX + 1)]
    assert rows == expected


def test_enumerated_manifolds(cases):
    for case in cases:
        if case.alpha == 2 and case.b_start != case.b_end:
            assert case.manifold in (TWO_CP2, TWO_MINUS_CP2)
        elif case.alpha % 2 == 1:
            assert case.manifold == MIXED
        else:
            assert case.manifold == S2XS2
        assert case.euler_ok
        assert euler_check(SpherePlusTwoPoints(arc=case.arc), case.manifold)


def test_single_z2_action_to_two_cp2(cases):
    hits = {case.canonical for case in cases if case.manifold == TWO_CP2}
    assert hits == {Z2_ARC}


def test_orientation_partners(cases):
    index = next(i for i, c in enumerate(cases) if c.manifold == TWO_CP2)
    partner = cases[index].orientation_partner
    assert cases[partner].manifold == TWO_MINUS_CP2
    assert cases[partner].orientation_partner == index
    assert all(c.orientation_partner is None for c in cases if c.alpha > 2)


def test_distinct_actions(cases):
    groups = distinct_actions(cases)
    assert len(groups) == (K_MAX - 1) + 2
    assert groups[WeightedArc(0, [(5, 1)], 0)] == [3, 13 + 3]


def test_enumeration_bound():
    with pytest.raises(InvariantRange):
        enumerate_arc_cases(1)
    assert len(enumerate_arc_cases(2)) == 4


def test_euler_check_negative():
    assert euler_check(SphereOnly(), S4)
    assert euler_check(SpherePlusTwoPoints(point_signs=(1, -1)), S2XS2)
    assert not euler_check(SpherePlusPoint(), S4)


def test_fixed_point_euler():
    assert fixed_point_euler(build_orbit_space(SphereOnly())) == 2
    assert fixed_point_euler(build_orbit_space(SpherePlusPoint())) == 3
    assert fixed_point_euler(build_orbit_space(SpherePlusTwoPoints(arc=Z2_ARC))) == 4


@pytest.mark.parametrize("config", supported_configs(), ids=repr)
def test_every_config_passes_euler_and_chain_shape(config):
    space = build_orbit_space(config)
    assert validate_legality(space).is_legal
    chain = assemble_chain(space)
    assert chain.t == 2 * chain.m + chain.l - 1
    b0 = intersection_matrix(chain).to_list()
    for i in range(chain.t):
        for j in range(chain.t):
            if abs(i - j) == 1:
                assert b0[i][j] == 1
            elif i != j:
                assert b0[i][j] == 0
    result = classify_config(config)
    assert result.trace.euler_ok
    assert result.trace.euler_ok == euler_check(config, result.manifold)


def test_classification_is_deterministic():
    first = classify_config(SpherePlusTwoPoints(arc=WeightedArc(-1, [(7, 6)], -1)))
    second = classify_config(SpherePlusTwoPoints(arc=WeightedArc(-1, [(7, 6)], -1)))
    assert first.manifold == second.manifold
    assert first.trace == second.trace


@pytest.mark.parametrize("mutant, rule", [
    (WeightedOrbitSpace(spheres=(1,), arcs=(WeightedArc(0, [(2, 1), (4, 3)], -1),)), "L1"),
    (WeightedOrbitSpace(spheres=(0,), arcs=(WeightedArc(0, [(3, 2)], 0),)), "L2"),
    (WeightedOrbitSpace(spheres=(0,), arcs=(Z2_ARC,)), "L3"),
    (WeightedOrbitSpace(spheres=(0,), circles=(WeightedCircle([(2, 1)]),), simply_connected=True), "L4"),
])
def test_single_violation_mutants(mutant, rule):
    assert validate_legality(mutant).rules == {rule}
    with pytest.raises(IllegalWeights):
        classify_space(mutant)


def test_multi_segment_arc_is_unsupported():
    space = WeightedOrbitSpace(spheres=(1,), arcs=(WeightedArc(0, [(2, 1), (3, 2)], -1),))
    with pytest.raises(UnsupportedConfiguration):
        classify_space(space.as_simply_connected())


@pytest.mark.parametrize("group, tokens, expected", [
    ("SO3", ["dim=1", "shape=interval", "isotropy=O(2),SO(2),O(2)"], ["RP4 # RP4"]),
    ("SU2", ["dim=0", "shape=cohomogeneity_one"], ["S4", "RP4", "CP2"]),
    ("S1", ["dim=1", "shape=interval", "isotropy=S1,1,S1"], ["S2xS2", "CP2 # CP2", "CP2 # -CP2"]),
    ("S1", ["dim=0", "shape=point", "isotropy=S1"], ["CP2"]),
])
def test_theorem_b_lookup(group, tokens, expected):
    row = theoremB_lookup(TheoremBCase(group, CaseDescriptor.parse(tokens)))
    assert [m.label() for m in row.manifolds] == expected


def test_theorem_b_family_rows():
    row = theoremB_lookup(TheoremBCase("S1", CaseDescriptor.parse(["dim=1", "shape=circle", "isotropy=Z_q"])))
    assert len(row.manifolds) == 1
    assert row.manifolds[0].is_family
    assert "covered by S3xR" in row.manifolds[0].label()


def test_theorem_b_boundary_rows():
    row = theoremB_lookup(TheoremBCase(
        "S1", CaseDescriptor.parse(["dim=2", "shape=surface", "isotropy=S1", "fixed=S2", "boundary=true"])))
    assert [m.label() for m in row.manifolds] == ["S2xS2", "CP2 # -CP2"]


def test_theorem_b_unknown_case():
    with pytest.raises(NoSuchCase):
        theoremB_lookup(TheoremBCase("SO4", CaseDescriptor.parse(["dim=2", "shape=disk"])))
    with pytest.raises(InvariantRange):
        TheoremBCase("SO5", CaseDescriptor(0, "point"))


def test_theorem_b_groups():
    assert THEOREM_B.groups == ("S1", "SO3", "SO4", "SU2")


@pytest.mark.parametrize("dimension, expected", [
    (1, [("SO(2)", "SO(1)")]),
    (3, [("SO(4)", "SO(3)"), ("SU(2)", "SU(1)")]),
    (6, [("SO(7)", "SO(6)"), ("G2", "SU(3)")]),
    (7, [("SO(8)", "SO(7)"), ("SU(4)", "SU(3)"), ("Sp(2)", "Sp(1)"), ("Spin(7)", "G2")]),
    (15, [("SO(16)", "SO(15)"), ("SU(8)", "SU(7)"), ("Sp(4)", "Sp(3)"), ("Spin(9)", "Spin(7)")]),
])
def test_admissible_groups(dimension, expected):
    assert admissible_groups(dimension) == expected


def test_cohomogeneity_one():
    assert cohomogeneity_one("SU", 2) == ("S4", "RP4", "CP2")
    assert cohomogeneity_one("Spin9") == ("S16", "RP16", "CaP2")
    with pytest.raises(InvariantRange):
        cohomogeneity_one("SO", 0)
    with pytest.raises(InvariantRange):
        cohomogeneity_one("E8", 1)
