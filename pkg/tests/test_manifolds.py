import pytest

from orbitspace.errors import InvariantRange
from orbitspace.manifolds import ManifoldExpr, Summand, lens


def test_identity_summands_are_dropped():
    assert ManifoldExpr.of("S4", "CP2") == ManifoldExpr.of("CP2")
    assert ManifoldExpr.connected_sum(4, []).label() == "S4"
    assert ManifoldExpr.connected_sum(3, []).label() == "S3"
    assert ManifoldExpr.of("S4").is_identity


def test_labels_are_sorted_and_expanded():
    expr = ManifoldExpr.connected_sum(4, [(Summand("-CP2"), 2), (Summand("CP2"), 1)])
    assert expr.label() == "CP2 # -CP2 # -CP2"
    assert expr.count("-CP2") == 2


def test_lens_labels():
    assert lens(2, 1).label() == "RP3"
    assert lens(5, 2).label() == "L(5,2)"
    assert ManifoldExpr.parse_label("RP3 # L(5,2)") == ManifoldExpr.connected_sum(3, [lens(2, 1), lens(5, 2)])


@pytest.mark.parametrize("label", ["CP2 # -CP2", "S2xS2", "-CP2 # -CP2", "S2xS1 # RP2xS1", "RP4 # RP4", "S2~xS1"])
def test_parse_label_inverts_label(label):
    assert ManifoldExpr.parse_label(label).label() == label


def test_parse_label_errors():
    with pytest.raises(InvariantRange):
        ManifoldExpr.parse_label("K3")
    with pytest.raises(InvariantRange):
        ManifoldExpr.parse_label("CP2 # S2xS1")


def test_reverse():
    assert ManifoldExpr.of("CP2", "CP2").reverse() == ManifoldExpr.of("-CP2", "-CP2")
    assert ManifoldExpr.parse_label("L(5,2)").reverse() == ManifoldExpr.parse_label("L(5,3)")
    assert ManifoldExpr.of("CP2", "CP2").is_orientation_pair(ManifoldExpr.of("-CP2", "-CP2"))
    assert not ManifoldExpr.of("S2xS2").is_orientation_pair(ManifoldExpr.of("S2xS2"))


@pytest.mark.parametrize("label, chi", [
    ("S4", 2), ("CP2", 3), ("-CP2", 3), ("S2xS2", 4), ("CP2 # -CP2", 4), ("-CP2 # -CP2", 4), ("RP4", 1),
])
def test_euler_characteristic(label, chi):
    assert ManifoldExpr.parse_label(label).euler_characteristic() == chi


def test_families():
    expr = ManifoldExpr.family("covered by S2xR2")
    assert expr.is_family
    assert expr.label() == "covered by S2xR2"
    assert expr.euler_characteristic() is None
    assert ManifoldExpr.parse_label("S2xS1").euler_characteristic() == 0
