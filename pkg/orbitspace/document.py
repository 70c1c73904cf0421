"""Parser and serializer for orbit-space description files.

Four document kinds are understood; newlines are whitespace and ``#``
starts a comment::

    orbitspace4 { sphere a=1  arc b'=0 seifert=(2,1) b''=-1 }
    seifert3 { b=0 eps=o g=0 hbar=2 t=0 seifert=(2,1),(2,1) }
    matrix { n=2 rows=0 1 / 1 0 }
    config { fix=s2+2pt arc=[0;(2,1);-1] }

A bare matrix (``n`` followed by n*n integers) is accepted as well.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken, VisitError

from .classify3 import SeifertOrbitData
from .classify4 import SphereOnly, SpherePlusPoint, SpherePlusTwoPoints, TwoSpheres
from .errors import OrbitSpaceError, ParseError, SourceLocation
from .intforms import IntSymMatrix
from .orbit_data import (
    IsolatedFixedPoint,
    SeifertInvariant,
    WeightedArc,
    WeightedCircle,
    WeightedOrbitSpace,
    WeightedSphere,
)

logger = logging.getLogger(__name__)

GRAMMAR = r"""
start: document

?document: orbitspace | seifert3 | matrix | config | raw_matrix

orbitspace: "orbitspace4" "{" os_item* "}"
?os_item: sphere | point | arc | circle
sphere: "sphere" "a" "=" INT
point: "point" "b" "=" INT
arc: "arc" "b'" "=" INT "seifert" "=" pairs "b''" "=" INT
circle: "circle" "seifert" "=" pairs
pairs: pair ("," pair)*
pair: "(" INT "," INT ")"

seifert3: "seifert3" "{" s3_item* "}"
s3_item: "b" "=" INT            -> s3_b
       | "eps" "=" eps_value    -> s3_eps
       | "g" "=" INT            -> s3_g
       | "hbar" "=" INT         -> s3_hbar
       | "t" "=" INT            -> s3_t
       | "seifert" "=" pairs    -> s3_seifert
eps_value: "o"                  -> eps_o
         | "n"                  -> eps_n

matrix: "matrix" "{" m_item* "}"
m_item: "n" "=" INT             -> m_n
      | "rows" "=" row_values   -> m_rows
row_values: (INT | SLASH)+

config: "config" "{" c_item* "}"
c_item: "fix" "=" FIX           -> c_fix
      | "omega" "=" INT         -> c_omega
      | "signs" "=" INT "," INT -> c_signs
      | "sign" "=" INT          -> c_sign
      | "arc" "=" arc_literal   -> c_arc
arc_literal: "[" INT ";" pairs ";" INT "]"

raw_matrix: INT INT*

FIX: /s2\+2pt|s2\+s2|s2\+pt|s2/
SLASH: "/"
INT: /[+-]?[0-9]+/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

KINDS = ("orbitspace4", "seifert3", "matrix", "config")


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Any
    locations: Dict[str, SourceLocation] = field(default_factory=dict, compare=False, hash=False)
    source: Optional[str] = field(default=None, compare=False)


def _loc(meta) -> SourceLocation:
    return SourceLocation(
        line=getattr(meta, "line", 1),
        column=getattr(meta, "column", 1),
        end_line=getattr(meta, "end_line", None),
        end_column=getattr(meta, "end_column", None),
    )


def _located(meta, factory, *args):
    """Call a domain constructor, prefixing any error with the source position."""
    try:
        return factory(*args)
    except OrbitSpaceError as e:
        e.message = f"{_loc(meta)}: {e.message}"
        e.args = (e.message,)
        raise


def _keyed(meta, items: List[Tuple[str, Any, SourceLocation]], document: str) -> Dict[str, Any]:
    values: Dict[str, Any] = {}
    for key, value, location in items:
        if key in values:
            raise ParseError(f"duplicate key {key!r} in {document}", location)
        values[key] = value
    return values


class DocumentTransformer(Transformer):
    """Transforms the parse tree into a :class:`Document`."""

    def __init__(self, source: Optional[str] = None):
        super().__init__()
        self.source = source

    def start(self, items):
        return items[0]

    def INT(self, token: Token) -> int:
        try:
            return int(token)
        except ValueError:
            location = SourceLocation(getattr(token, "line", None) or 1, getattr(token, "column", None) or 1)
            raise ParseError(f"integer literal with {len(token)} characters is too long", location) from None

    # orbitspace4

    @v_args(meta=True)
    def sphere(self, meta, items):
        return "sphere", _located(meta, WeightedSphere, items[0]), _loc(meta)

    @v_args(meta=True)
    def point(self, meta, items):
        return "point", _located(meta, IsolatedFixedPoint, items[0]), _loc(meta)

    @v_args(meta=True)
    def pair(self, meta, items):
        return _located(meta, SeifertInvariant, items[0], items[1])

    def pairs(self, items):
        return tuple(items)

    @v_args(meta=True)
    def arc(self, meta, items):
        b_start, segments, b_end = items
        return "arc", _located(meta, WeightedArc, b_start, segments, b_end), _loc(meta)

    @v_args(meta=True)
    def circle(self, meta, items):
        return "circle", _located(meta, WeightedCircle, items[0]), _loc(meta)

    @v_args(meta=True)
    def orbitspace(self, meta, items):
        buckets: Dict[str, list] = {"sphere": [], "point": [], "arc": [], "circle": []}
        locations = {"document": _loc(meta)}
        for kind, value, location in items:
            locations[f"{kind} {len(buckets[kind]) + 1}"] = location
            buckets[kind].append(value)
        space = _located(meta, lambda: WeightedOrbitSpace(
            spheres=tuple(buckets["sphere"]), points=tuple(buckets["point"]),
            arcs=tuple(buckets["arc"]), circles=tuple(buckets["circle"])))
        return Document("orbitspace4", space, locations, self.source)

    # seifert3

    def _item(key):
        @v_args(meta=True)
        def handler(self, meta, items):
            return key, items[0], _loc(meta)
        return handler

    s3_b = _item("b")
    s3_eps = _item("eps")
    s3_g = _item("g")
    s3_hbar = _item("hbar")
    s3_t = _item("t")
    s3_seifert = _item("seifert")

    def eps_o(self, _):
        return "o"

    def eps_n(self, _):
        return "n"

    @v_args(meta=True)
    def seifert3(self, meta, items):
        values = _keyed(meta, items, "seifert3")
        missing = [k for k in ("b", "eps", "g", "hbar", "t") if k not in values]
        if missing:
            raise ParseError(f"seifert3 is missing {', '.join(missing)}", _loc(meta))
        data = _located(meta, SeifertOrbitData, values["b"], values["eps"], values["g"],
                        values["hbar"], values["t"], values.get("seifert", ()))
        return Document("seifert3", data, {"document": _loc(meta)}, self.source)

    # matrix

    m_n = _item("n")

    def row_values(self, items):
        return list(items)

    m_rows = _item("rows")

    @v_args(meta=True)
    def matrix(self, meta, items):
        values = _keyed(meta, items, "matrix")
        if "n" not in values:
            raise ParseError("matrix is missing n", _loc(meta))
        n = values["n"]
        tokens = values.get("rows", [])
        rows = _rows(n, tokens, _loc(meta))
        matrix = _located(meta, IntSymMatrix.from_rows, rows)
        return Document("matrix", matrix, {"document": _loc(meta)}, self.source)

    @v_args(meta=True)
    def raw_matrix(self, meta, items):
        n, values = items[0], items[1:]
        rows = _rows(n, values, _loc(meta))
        matrix = _located(meta, IntSymMatrix.from_rows, rows)
        return Document("matrix", matrix, {"document": _loc(meta)}, self.source)

    # config

    def _token_item(key):
        @v_args(meta=True)
        def handler(self, meta, items):
            return key, str(items[0]) if key == "fix" else items[0], _loc(meta)
        return handler

    c_fix = _token_item("fix")
    c_omega = _item("omega")
    c_sign = _item("sign")
    c_arc = _item("arc")

    @v_args(meta=True)
    def c_signs(self, meta, items):
        return "signs", (items[0], items[1]), _loc(meta)

    @v_args(meta=True)
    def arc_literal(self, meta, items):
        b_start, segments, b_end = items
        return _located(meta, WeightedArc, b_start, segments, b_end)

    @v_args(meta=True)
    def config(self, meta, items):
        values = _keyed(meta, items, "config")
        location = _loc(meta)
        fix = values.pop("fix", None)
        if fix is None:
            raise ParseError("config is missing fix", location)
        allowed = {"s2": set(), "s2+pt": {"sign"}, "s2+s2": {"omega"}, "s2+2pt": {"signs", "arc"}}[fix]
        extra = set(values) - allowed
        if extra:
            raise ParseError(f"fix={fix} does not take {', '.join(sorted(extra))}", location)
        if fix == "s2":
            payload = SphereOnly()
        elif fix == "s2+pt":
            payload = _located(meta, SpherePlusPoint, values.get("sign", 1))
        elif fix == "s2+s2":
            if "omega" not in values:
                raise ParseError("fix=s2+s2 needs omega", location)
            payload = TwoSpheres(values["omega"])
        else:
            if ("signs" in values) == ("arc" in values):
                raise ParseError("fix=s2+2pt needs exactly one of signs and arc", location)
            payload = _located(meta, SpherePlusTwoPoints, values.get("arc"), values.get("signs"))
        return Document("config", payload, {"document": location}, self.source)

    del _item, _token_item


def _rows(n: int, tokens: List[Union[int, Token]], location: SourceLocation) -> List[List[int]]:
    if n < 0:
        raise ParseError(f"matrix size must be nonnegative, got {n}", location)
    has_slash = any(isinstance(t, Token) and t.type == "SLASH" for t in tokens)
    if has_slash:
        groups: List[List[int]] = [[]]
        for t in tokens:
            if isinstance(t, Token) and t.type == "SLASH":
                groups.append([])
            else:
                groups[-1].append(t)
        if len(groups) != n or any(len(g) != n for g in groups):
            raise ParseError(f"expected {n} rows of {n} integers separated by '/'", location)
        return groups
    if len(tokens) != n * n:
        raise ParseError(f"expected {n * n} matrix entries, got {len(tokens)}", location)
    return [list(tokens[i * n:(i + 1) * n]) for i in range(n)]


_PARSER = Lark(GRAMMAR, parser="lalr", lexer="contextual", propagate_positions=True)


def _end_of(text: str) -> SourceLocation:
    lines = text.split("\n")
    return SourceLocation(len(lines), len(lines[-1]) + 1)


def _error_location(error: UnexpectedInput, text: str) -> SourceLocation:
    line, column = getattr(error, "line", -1), getattr(error, "column", -1)
    if not isinstance(line, int) or not isinstance(column, int) or line < 1 or column < 1:
        return _end_of(text)
    return SourceLocation(line, column)


def _describe(error: UnexpectedInput, text: str) -> str:
    if isinstance(error, UnexpectedCharacters):
        position = error.pos_in_stream
        char = text[position] if 0 <= position < len(text) else ""
        return f"unexpected character {char!r}"
    if isinstance(error, UnexpectedToken):
        expected = ", ".join(sorted(error.expected))
        if error.token.type == "$END":
            return f"unexpected end of input, expected one of: {expected}"
        return f"unexpected {str(error.token)!r}, expected one of: {expected}"
    return "unexpected end of input"


def parse(text: Union[bytes, str], source: Optional[str] = None) -> Document:
    """Parse one description document.

    Args:
        text: UTF-8 bytes or a string
        source: Optional file name for diagnostics

    Returns:
        The parsed document

    Raises:
        ParseError: On malformed input, with line and column
        OrbitSpaceError: When a value violates its type's constraints
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            prefix = text[:e.start].decode("utf-8", errors="replace")
            raise ParseError("input is not valid UTF-8", _end_of(prefix)) from None
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as e:
        raise ParseError(_describe(e, text), _error_location(e, text)) from None
    try:
        return DocumentTransformer(source).transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, OrbitSpaceError):
            raise e.orig_exc from None
        raise


def parse_file(path: Union[str, Path]) -> Document:
    path = Path(path)
    return parse(path.read_bytes(), source=str(path))


def _pairs(segments) -> str:
    return ",".join(f"({s.alpha},{s.beta})" for s in segments)


def _arc_literal(arc: WeightedArc) -> str:
    return f"[{arc.b_start};{_pairs(arc.segments)};{arc.b_end}]"


def serialize(document: Document) -> str:
    """Canonical text of a document; parsing it gives the document back."""
    payload = document.payload
    if document.kind == "orbitspace4":
        lines = [f"  sphere a={s.euler}" for s in payload.spheres]
        lines += [f"  point b={p.weight:+d}" for p in payload.points]
        lines += [f"  arc b'={a.b_start} seifert={_pairs(a.segments)} b''={a.b_end}" for a in payload.arcs]
        lines += [f"  circle seifert={_pairs(c.segments)}" for c in payload.circles]
        return "orbitspace4 {\n" + "\n".join(lines) + "\n}\n"
    if document.kind == "seifert3":
        text = (f"seifert3 {{ b={payload.b} eps={payload.epsilon} g={payload.g} "
                f"hbar={payload.h_bar} t={payload.t}")
        if payload.exceptional:
            text += f" seifert={_pairs(payload.exceptional)}"
        return text + " }\n"
    if document.kind == "matrix":
        if payload.n == 0:
            return "matrix { n=0 }\n"
        rows = " / ".join(" ".join(str(v) for v in row) for row in payload.entries)
        return f"matrix {{ n={payload.n} rows={rows} }}\n"
    if document.kind == "config":
        if isinstance(payload, SphereOnly):
            return "config { fix=s2 }\n"
        if isinstance(payload, SpherePlusPoint):
            return f"config {{ fix=s2+pt sign={payload.sign:+d} }}\n"
        if isinstance(payload, TwoSpheres):
            return f"config {{ fix=s2+s2 omega={payload.omega1} }}\n"
        if payload.arc is not None:
            return f"config {{ fix=s2+2pt arc={_arc_literal(payload.arc)} }}\n"
        first, second = payload.point_signs
        return f"config {{ fix=s2+2pt signs={first:+d},{second:+d} }}\n"
    raise ParseError(f"cannot serialize document kind {document.kind!r}")
