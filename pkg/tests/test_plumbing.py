"""Tests for plumbing blocks, chain assembly and the tridiagonal forms."""

import pytest
from hypothesis import given, settings, strategies as st

from orbitspace.errors import IllegalWeights, IncompatibleWeights, InvariantRange, UnsupportedConfiguration
from orbitspace.orbit_data import SeifertInvariant, WeightedArc, WeightedCircle, WeightedOrbitSpace, validate_legality
from orbitspace.plumbing import (
    Family,
    PlumbingChain,
    adjacent_compatible,
    assemble_chain,
    columns_match,
    intersection_form,
    intersection_matrix,
    make_block_c,
    make_block_d,
    make_block_g,
    make_block_h,
    make_block_i,
    make_block_j,
)

signs = st.sampled_from([1, -1])
twists = st.integers(-6, 6)


def families(chain):
    return [b.family.value for b in chain.blocks]


@st.composite
def legal_c_data(draw):
    b1 = draw(st.sampled_from([0, -1]))
    b2 = draw(st.sampled_from([0, -1]))
    alpha = 2 if b1 != b2 else draw(st.integers(2, 40))
    beta = 1 if b1 == 0 else alpha - 1
    return b1, SeifertInvariant(alpha, beta), b2


def test_z2_arc_block_c():
    block = make_block_c(0, SeifertInvariant(2, 1), -1)
    assert block.omega == 1
    assert block.param("eps1") == 1 and block.param("eps2") == 1
    assert block.action_matrix == ((2, -2, 1, -1), (1, -1, 0, -1))
    assert block.hemisphere_determinants() == (-1, 1)


def test_block_c_rejects_illegal_endpoint():
    with pytest.raises(IllegalWeights):
        make_block_c(0, SeifertInvariant(3, 2), 0)


def test_block_g_omega():
    assert make_block_g(-1, SeifertInvariant(2, 1)).omega == 2
    assert make_block_g(0, SeifertInvariant(5, 1)).omega == -5


@given(legal_c_data(), signs, twists)
@settings(max_examples=500, deadline=None)
def test_c_block_hemisphere_determinants(data, eps, n):
    b1, inv, b2 = data
    block = make_block_c(b1, inv, b2, eps=eps, n=n)
    assert block.hemisphere_determinants() == (-1, 1)
    assert block.omega == block.formula_omega()


@given(signs, signs, signs, twists)
@settings(max_examples=200, deadline=None)
def test_point_block_determinants(eps1, eps2, eps, n):
    assert make_block_d(eps1, eps2, eps=eps, n=n).hemisphere_determinants() == (-1, 1)
    assert make_block_h(eps1, eps=eps, n=n).hemisphere_determinants() == (-1, 1)


@given(legal_c_data(), signs, twists)
@settings(max_examples=200, deadline=None)
def test_g_block_determinants(data, eps, n):
    _, inv, b2 = data
    assert make_block_g(b2, inv, eps=eps, n=n).hemisphere_determinants() == (-1, 1)


@given(st.integers(-20, 20), signs, signs, twists)
@settings(max_examples=200, deadline=None)
def test_sphere_block_determinants(omega, eps, delta, n):
    for block in (make_block_j(omega, eps=eps, n=n, delta=delta), make_block_i(eps=eps, n=n, delta=delta)):
        first, second = block.hemisphere_determinants()
        assert first in (1, -1)
        assert second == -first


def test_sign_parameters_are_checked():
    with pytest.raises(InvariantRange):
        make_block_h(2)
    with pytest.raises(InvariantRange):
        make_block_j(1, delta=0)


def test_adjacent_compatible_reports_mismatched_junction():
    c = make_block_c(0, SeifertInvariant(2, 1), -1)
    g = make_block_g(0, SeifertInvariant(2, 1))
    assert "b'=0" in adjacent_compatible(c, g)
    assert adjacent_compatible(c, make_block_g(-1, SeifertInvariant(2, 1))) is None
    with pytest.raises(IncompatibleWeights):
        PlumbingChain((c, g, make_block_j(1)), m=1, l=2)


def test_adjacent_compatible_points():
    assert adjacent_compatible(make_block_d(1, -1), make_block_h(-1)) is None
    assert adjacent_compatible(make_block_d(1, -1), make_block_h(1)) is not None


def test_columns_match_is_reported_not_enforced():
    c = make_block_c(0, SeifertInvariant(2, 1), -1)
    g = make_block_g(-1, SeifertInvariant(2, 1))
    assert isinstance(columns_match(c, g), bool)
    chain = assemble_chain(WeightedOrbitSpace(spheres=(1,), arcs=(WeightedArc(0, [(2, 1)], -1),)))
    assert len(chain.to_dict()["columns_match"]) == 2


@pytest.mark.parametrize("space, expected_families, expected_omegas, l", [
    (WeightedOrbitSpace(spheres=(0,)), ["J"], [0], 0),
    (WeightedOrbitSpace(spheres=(-1,), points=(1,)), ["H", "J"], [-1, -1], 1),
    (WeightedOrbitSpace(spheres=(1,), points=(-1,)), ["H", "J"], [1, 1], 1),
    (WeightedOrbitSpace(spheres=(-2,), points=(1, 1)), ["D", "H", "J"], [-2, -1, -2], 2),
    (WeightedOrbitSpace(spheres=(0,), points=(1, -1)), ["D", "H", "J"], [0, 1, 0], 2),
    (WeightedOrbitSpace(spheres=(3, -3)), ["J", "I", "J"], [3, 0, -3], 0),
    (WeightedOrbitSpace(spheres=(1,), arcs=(WeightedArc(0, [(2, 1)], -1),)), ["C", "G", "J"], [1, 2, 1], 2),
    (WeightedOrbitSpace(spheres=(0,), arcs=(WeightedArc(0, [(5, 1)], 0),)), ["C", "G", "J"], [0, -5, 0], 2),
])
def test_chain_templates(space, expected_families, expected_omegas, l):
    chain = assemble_chain(space)
    assert families(chain) == expected_families
    assert chain.omegas == expected_omegas
    assert chain.m == len(space.spheres)
    assert chain.l == l
    assert chain.t == 2 * chain.m + chain.l - 1


def test_z2_arc_forms():
    chain = assemble_chain(WeightedOrbitSpace(spheres=(1,), arcs=(WeightedArc(0, [(2, 1)], -1),)))
    assert intersection_matrix(chain).to_list() == [[1, 1, 0], [1, 2, 1], [0, 1, 1]]
    assert intersection_form(chain).to_list() == [[1, 1], [1, 2]]


def test_single_sphere_form_is_empty():
    chain = assemble_chain(WeightedOrbitSpace(spheres=(0,)))
    assert intersection_matrix(chain).to_list() == [[0]]
    assert intersection_form(chain).n == 0


@pytest.mark.parametrize("sphere, arc", [
    (1, WeightedArc(0, [(2, 1), (3, 2)], -1)),
    (1, WeightedArc(0, [(3, 1), (2, 1)], -1)),
    (-1, WeightedArc(-1, [(3, 2), (2, 1)], 0)),
])
def test_multi_segment_arc_has_no_template(sphere, arc):
    space = WeightedOrbitSpace(spheres=(sphere,), arcs=(arc,))
    assert validate_legality(space).is_legal
    with pytest.raises(UnsupportedConfiguration, match="single-segment"):
        assemble_chain(space)


def test_illegal_space_is_rejected_before_assembly():
    with pytest.raises(IllegalWeights):
        assemble_chain(WeightedOrbitSpace(spheres=(0,), arcs=(WeightedArc(0, [(2, 1)], -1),)))


@pytest.mark.parametrize("space", [
    WeightedOrbitSpace(spheres=(-3,), points=(1, 1, 1)),
    WeightedOrbitSpace(points=(1, -1)),
    WeightedOrbitSpace(spheres=(0,), circles=(WeightedCircle([(2, 1)]),)),
    WeightedOrbitSpace(spheres=(2,), arcs=(WeightedArc(0, [(2, 1)], -1), WeightedArc(0, [(2, 1)], -1))),
    WeightedOrbitSpace(spheres=(1, -1), points=(1, -1)),
])
def test_unsupported_configurations(space):
    with pytest.raises(UnsupportedConfiguration):
        assemble_chain(space)


def test_block_to_dict():
    data = make_block_h(1).to_dict()
    assert data["family"] == "H"
    assert data["omega"] == -1
    assert data["params"] == {"eps": 1, "eps1": 1, "n": 0}
    assert Family("J") is Family.J
