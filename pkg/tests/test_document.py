"""Tests for the description-file parser and serializer."""

import sys

import pytest

from orbitspace.classify3 import SeifertOrbitData
from orbitspace.classify4 import SphereOnly, SpherePlusPoint, SpherePlusTwoPoints, TwoSpheres
from orbitspace.document import parse, parse_file, serialize
from orbitspace.errors import EmptyOrbitSpace, InvalidSeifertInvariant, InvariantRange, ParseError
from orbitspace.intforms import IntSymMatrix
from orbitspace.orbit_data import WeightedArc, WeightedCircle, WeightedOrbitSpace, validate_legality

Z2_TEXT = "orbitspace4 { sphere a=1\narc b'=0 seifert=(2,1) b''=-1 }"


def test_parse_orbitspace():
    document = parse(Z2_TEXT)
    assert document.kind == "orbitspace4"
    assert document.payload == WeightedOrbitSpace(spheres=(1,), arcs=(WeightedArc(0, [(2, 1)], -1),))
    assert validate_legality(document.payload).is_legal
    assert document.locations["arc 1"].line == 2


def test_parse_points_and_circles():
    document = parse(b"orbitspace4 {\n  point b=+1\n  point b=-1\n  circle seifert=(3,1),(2,1)\n  sphere a=0\n}\n")
    space = document.payload
    assert [p.weight for p in space.points] == [1, -1]
    assert space.circles == (WeightedCircle([(3, 1), (2, 1)]),)
    assert not space.simply_connected


def test_parse_seifert3():
    document = parse("seifert3 { b=0 eps=o g=0 hbar=2 t=0 }")
    assert document.kind == "seifert3"
    assert document.payload == SeifertOrbitData(0, "o", 0, 2, 0)


def test_seifert3_keys_in_any_order():
    document = parse("seifert3 {\n  seifert=(2,1),(2,1)  # two exceptional orbits\n  t=0 hbar=1 g=0 eps=o b=0\n}")
    assert document.payload.exceptional == SeifertOrbitData(0, "o", 0, 1, 0, ((2, 1), (2, 1))).exceptional


def test_parse_matrix():
    assert parse("matrix { n=2 rows=0 1 / 1 0 }").payload == IntSymMatrix.from_rows([[0, 1], [1, 0]])
    assert parse("matrix { n=2 rows=0 1 1 0 }").payload == IntSymMatrix.from_rows([[0, 1], [1, 0]])
    assert parse("matrix { n=0 }").payload.n == 0


def test_parse_raw_matrix():
    document = parse("2\n1 1\n1 2\n")
    assert document.kind == "matrix"
    assert document.payload == IntSymMatrix.from_rows([[1, 1], [1, 2]])


@pytest.mark.parametrize("text, expected", [
    ("config { fix=s2 }", SphereOnly()),
    ("config { fix=s2+pt }", SpherePlusPoint(1)),
    ("config { fix=s2+pt sign=-1 }", SpherePlusPoint(-1)),
    ("config { fix=s2+s2 omega=3 }", TwoSpheres(3)),
    ("config { fix=s2+2pt signs=+1,-1 }", SpherePlusTwoPoints(point_signs=(1, -1))),
    ("config { fix=s2+2pt arc=[0;(2,1);-1] }", SpherePlusTwoPoints(arc=WeightedArc(0, [(2, 1)], -1))),
])
def test_parse_config(text, expected):
    document = parse(text)
    assert document.kind == "config"
    assert document.payload == expected


@pytest.mark.parametrize("text", [
    Z2_TEXT,
    "orbitspace4 { point b=+1 point b=-1 sphere a=0 circle seifert=(2,1) }",
    "seifert3 { b=0 eps=n g=1 hbar=1 t=0 seifert=(5,2) }",
    "matrix { n=3 rows=1 1 0 / 1 2 1 / 0 1 2 }",
    "matrix { n=0 }",
    "config { fix=s2 }",
    "config { fix=s2+pt sign=-1 }",
    "config { fix=s2+s2 omega=-4 }",
    "config { fix=s2+2pt signs=-1,+1 }",
    "config { fix=s2+2pt arc=[-1;(7,6);-1] }",
])
def test_serialize_round_trip(text):
    document = parse(text)
    text_form = serialize(document)
    assert parse(text_form) == document
    assert serialize(parse(text_form)) == text_form


@pytest.mark.parametrize("text, line, column", [
    ("orbitspace4 { sphere a=x }", 1, 24),
    ("orbitspace4 {\n  sphere a=1\n  bogus\n}", 3, 3),
    ("matrix { n=2 rows=0 1 / 1 }", 1, 1),
    ("seifert3 { b=0 eps=q g=0 hbar=1 t=0 }", 1, 20),
])
def test_parse_error_location(text, line, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.location.line == line
    assert info.value.location.column == column
    assert info.value.code == "E_PARSE"
    assert info.value.exit_code == 2


def test_unexpected_end_of_input():
    text = "orbitspace4 { sphere a=1\n"
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.location.line >= 1


def test_invalid_utf8():
    with pytest.raises(ParseError) as info:
        parse(b"orbitspace4 {\n sphere a=1 \xff }")
    assert info.value.location.line == 2


@pytest.mark.skipif(not hasattr(sys, "get_int_max_str_digits"), reason="no integer string length limit")
def test_oversized_integer_literal():
    with pytest.raises(ParseError) as info:
        parse("orbitspace4 {\n  sphere a=" + "9" * 5000 + "\n}")
    assert info.value.code == "E_PARSE"
    assert info.value.location.line == 2
    assert info.value.location.column == 12


@pytest.mark.parametrize("text", [
    "seifert3 { b=0 eps=o g=0 hbar=1 }",
    "seifert3 { b=0 b=0 eps=o g=0 hbar=1 t=0 }",
    "matrix { rows=1 }",
    "matrix { n=2 rows=1 2 3 }",
    "matrix { n=-1 }",
    "config { sign=1 }",
    "config { fix=s2 omega=3 }",
    "config { fix=s2+s2 }",
    "config { fix=s2+2pt }",
])
def test_structural_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_semantic_errors_keep_their_codes():
    with pytest.raises(InvalidSeifertInvariant) as info:
        parse("orbitspace4 { sphere a=0\n arc b'=0 seifert=(4,2) b''=0 }")
    assert info.value.message.startswith("2:")
    with pytest.raises(EmptyOrbitSpace):
        parse("orbitspace4 { }")
    with pytest.raises(InvariantRange):
        parse("orbitspace4 { point b=2 }")
    with pytest.raises(InvariantRange):
        parse("matrix { n=2 rows=1 2 / 3 4 }")


def test_comments_and_blank_lines():
    document = parse("# header\n\norbitspace4 {  # start\n  sphere a=0  # the fixed sphere\n}\n")
    assert document.payload == WeightedOrbitSpace(spheres=(0,))


def test_parse_file(tmp_path):
    path = tmp_path / "z2.txt"
    path.write_text(Z2_TEXT)
    document = parse_file(path)
    assert document == parse(Z2_TEXT)
    assert document.source == str(path)
