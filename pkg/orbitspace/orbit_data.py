"""Weighted orbit spaces of circle actions and their legality rules.

A weighted orbit space is stored purely combinatorially: boundary spheres
with an Euler weight, isolated fixed points with a sign, arcs and circles
of exceptional orbits labelled by Seifert invariants.  Rules checked by
:func:`validate_legality`:

    L1  adjacent segments (a, b), (a', b') satisfy a*b' - b*a' = +-1
    L2  arc endpoints satisfy b' * a_1 + b_1 = +-1 and b'' * a_n + b_n = +-1
    L3  sum of sphere weights, point weights and arc values c = b'' - b' is 0
    L4  no circles when the target is simply connected
"""

import logging
from dataclasses import dataclass, field, replace
from math import gcd
from typing import Iterable, List, Sequence, Tuple, Union

from .errors import (
    EmptyOrbitSpace,
    IllegalWeights,
    InternalInvariantError,
    InvalidSeifertInvariant,
    InvariantRange,
)

logger = logging.getLogger(__name__)


def _require_int(name: str, value) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvariantRange(f"{name} must be an integer, got {value!r}")


@dataclass(frozen=True, order=True)
class SeifertInvariant:
    """Coprime pair (alpha, beta) with 1 <= beta < alpha."""

    alpha: int
    beta: int

    def __post_init__(self):
        if isinstance(self.alpha, bool) or isinstance(self.beta, bool) or \
                not isinstance(self.alpha, int) or not isinstance(self.beta, int):
            raise InvalidSeifertInvariant(
                f"Seifert invariant needs integers, got ({self.alpha!r},{self.beta!r})")
        if self.alpha < 2:
            raise InvalidSeifertInvariant(f"alpha must be >= 2, got {self.alpha}")
        if not 1 <= self.beta < self.alpha:
            raise InvalidSeifertInvariant(
                f"beta must satisfy 1 <= beta < alpha, got ({self.alpha},{self.beta})")
        if gcd(self.alpha, self.beta) != 1:
            raise InvalidSeifertInvariant(
                f"alpha and beta must be coprime, got ({self.alpha},{self.beta})")

    def complement(self) -> "SeifertInvariant":
        """The invariant seen from the opposite orientation."""
        return SeifertInvariant(self.alpha, self.alpha - self.beta)

    def __str__(self) -> str:
        return f"({self.alpha},{self.beta})"


def as_segments(values: Iterable) -> Tuple[SeifertInvariant, ...]:
    """Seifert invariants from invariants or (alpha, beta) pairs."""
    result = []
    for value in values:
        if isinstance(value, SeifertInvariant):
            result.append(value)
        else:
            alpha, beta = value
            result.append(SeifertInvariant(alpha, beta))
    return tuple(result)


@dataclass(frozen=True)
class WeightedArc:
    """An arc of exceptional orbits [b'; (a1,b1), ..., (an,bn); b'']."""

    b_start: int
    segments: Tuple[SeifertInvariant, ...]
    b_end: int

    def __post_init__(self):
        _require_int("b'", self.b_start)
        _require_int("b''", self.b_end)
        object.__setattr__(self, "segments", as_segments(self.segments))
        if not self.segments:
            raise InvariantRange("a weighted arc needs at least one segment")

    @property
    def c(self) -> int:
        return self.b_end - self.b_start

    @property
    def sort_key(self):
        # endpoint weight 0 sorts before -1
        return (-self.b_start, self.segments, -self.b_end)

    def __str__(self) -> str:
        inner = ",".join(str(s) for s in self.segments)
        return f"[{self.b_start};{inner};{self.b_end}]"


def _reverse_segments(segments: Sequence[SeifertInvariant]) -> Tuple[SeifertInvariant, ...]:
    return tuple(s.complement() for s in reversed(segments))


def _minimal_rotation(segments: Tuple[SeifertInvariant, ...]) -> Tuple[SeifertInvariant, ...]:
    rotations = [segments[i:] + segments[:i] for i in range(len(segments))]
    return min(rotations)


@dataclass(frozen=True, eq=False)
class WeightedCircle:
    """A cyclic chain of exceptional-orbit segments.

    Two circles are equal when they agree up to rotation and orientation
    reversal.
    """

    segments: Tuple[SeifertInvariant, ...]

    def __post_init__(self):
        object.__setattr__(self, "segments", as_segments(self.segments))
        if not self.segments:
            raise InvariantRange("a weighted circle needs at least one segment")

    @property
    def canonical_segments(self) -> Tuple[SeifertInvariant, ...]:
        return min(_minimal_rotation(self.segments),
                   _minimal_rotation(_reverse_segments(self.segments)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedCircle):
            return NotImplemented
        return self.canonical_segments == other.canonical_segments

    def __hash__(self) -> int:
        return hash(self.canonical_segments)

    def __str__(self) -> str:
        return "{" + ",".join(str(s) for s in self.segments) + "}"


@dataclass(frozen=True, order=True)
class WeightedSphere:
    euler: int

    def __post_init__(self):
        _require_int("sphere weight", self.euler)


@dataclass(frozen=True, order=True)
class IsolatedFixedPoint:
    weight: int

    def __post_init__(self):
        _require_int("point weight", self.weight)
        if self.weight not in (1, -1):
            raise InvariantRange(f"isolated fixed point weight must be +1 or -1, got {self.weight}")


@dataclass(frozen=True)
class WeightedOrbitSpace:
    """Spheres, points, arcs and circles of a weighted orbit space."""

    spheres: Tuple[WeightedSphere, ...] = ()
    points: Tuple[IsolatedFixedPoint, ...] = ()
    arcs: Tuple[WeightedArc, ...] = ()
    circles: Tuple[WeightedCircle, ...] = ()
    simply_connected: bool = False

    def __post_init__(self):
        object.__setattr__(self, "spheres", tuple(
            s if isinstance(s, WeightedSphere) else WeightedSphere(s) for s in self.spheres))
        object.__setattr__(self, "points", tuple(
            p if isinstance(p, IsolatedFixedPoint) else IsolatedFixedPoint(p) for p in self.points))
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "circles", tuple(self.circles))
        if not (self.spheres or self.points or self.arcs or self.circles):
            raise EmptyOrbitSpace("a weighted orbit space needs at least one sphere, point, arc or circle")

    def as_simply_connected(self) -> "WeightedOrbitSpace":
        return replace(self, simply_connected=True)

    @property
    def weight_sum(self) -> int:
        return (sum(s.euler for s in self.spheres)
                + sum(p.weight for p in self.points)
                + sum(a.c for a in self.arcs))

    def describe(self) -> str:
        parts = [f"sphere a={s.euler}" for s in self.spheres]
        parts += [f"point b={p.weight:+d}" for p in self.points]
        parts += [f"arc {a}" for a in self.arcs]
        parts += [f"circle {c}" for c in self.circles]
        return "{ " + "; ".join(parts) + " }"


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    where: str = ""

    def to_dict(self) -> dict:
        return {"rule": self.rule, "message": self.message, "where": self.where}


@dataclass(frozen=True)
class LegalityReport:
    """Every violated rule of one orbit space; empty means legal."""

    violations: Tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def is_legal(self) -> bool:
        return not self.violations

    @property
    def rules(self) -> frozenset:
        return frozenset(v.rule for v in self.violations)

    def raise_if_illegal(self) -> None:
        if self.violations:
            detail = "; ".join(f"{v.rule} {v.where}: {v.message}" for v in self.violations)
            raise IllegalWeights(f"orbit space is not legally weighted: {detail}")

    def to_dict(self) -> dict:
        return {"legal": self.is_legal, "violations": [v.to_dict() for v in self.violations]}


def arc_c(arc: WeightedArc) -> int:
    return arc.c


def _det(first: SeifertInvariant, second: SeifertInvariant) -> int:
    return first.alpha * second.beta - first.beta * second.alpha


def adjacency_determinants(chain: Union[WeightedArc, WeightedCircle]) -> Tuple[int, ...]:
    """Determinants of adjacent segment pairs, cyclically for circles."""
    segments = chain.segments
    pairs = list(zip(segments, segments[1:]))
    if isinstance(chain, WeightedCircle) and len(segments) > 1:
        pairs.append((segments[-1], segments[0]))
    return tuple(_det(a, b) for a, b in pairs)


def endpoint_value(b: int, inv: SeifertInvariant) -> int:
    """b * alpha + beta, which must be +-1 at a legal arc endpoint."""
    return b * inv.alpha + inv.beta


def validate_legality(space: WeightedOrbitSpace) -> LegalityReport:
    """Check rules L1-L4 and collect every violation."""
    violations: List[Violation] = []

    chains = [(f"arc {i + 1}", arc) for i, arc in enumerate(space.arcs)]
    chains += [(f"circle {i + 1}", circle) for i, circle in enumerate(space.circles)]
    for where, chain in chains:
        for index, det in enumerate(adjacency_determinants(chain)):
            if det not in (1, -1):
                count = len(chain.segments)
                first, second = chain.segments[index], chain.segments[(index + 1) % count]
                violations.append(Violation(
                    "L1", f"det[[{first.alpha},{first.beta}],[{second.alpha},{second.beta}]] = {det}",
                    f"{where} segments {index + 1}-{(index + 1) % count + 1}"))

    for i, arc in enumerate(space.arcs):
        start = endpoint_value(arc.b_start, arc.segments[0])
        if start not in (1, -1):
            violations.append(Violation(
                "L2", f"b'*alpha_1 + beta_1 = {start}, expected +-1", f"arc {i + 1} start"))
        end = endpoint_value(arc.b_end, arc.segments[-1])
        if end not in (1, -1):
            violations.append(Violation(
                "L2", f"b''*alpha_n + beta_n = {end}, expected +-1", f"arc {i + 1} end"))

    total = space.weight_sum
    if total != 0:
        violations.append(Violation("L3", f"sum of weights is {total}, expected 0", "global"))

    if space.simply_connected and space.circles:
        violations.append(Violation(
            "L4", f"{len(space.circles)} weighted circle(s) in a simply connected target", "global"))

    report = LegalityReport(tuple(violations))
    if "L2" not in report.rules:
        for arc in space.arcs:
            if arc.b_start not in (0, -1) or arc.b_end not in (0, -1):
                raise InternalInvariantError(f"legal arc {arc} has endpoint weight outside {{0,-1}}")
    if violations:
        logger.debug(f"Orbit space {space.describe()} has {len(violations)} violation(s)")
    return report


def reverse_arc(arc: WeightedArc) -> WeightedArc:
    """Reverse the orientation of an arc.

    [b'; (a1,b1),...,(an,bn); b''] becomes
    [-1-b''; (an,an-bn),...,(a1,a1-b1); -1-b'].
    """
    return WeightedArc(-1 - arc.b_end, _reverse_segments(arc.segments), -1 - arc.b_start)


def reverse_circle(circle: WeightedCircle) -> WeightedCircle:
    return WeightedCircle(_reverse_segments(circle.segments))


def canonical_arc(arc: WeightedArc) -> WeightedArc:
    return min(arc, reverse_arc(arc), key=lambda a: a.sort_key)


def canonical_form(space: WeightedOrbitSpace) -> WeightedOrbitSpace:
    """Representative of the space up to arc and circle reversal, with sorted lists."""
    arcs = sorted((canonical_arc(a) for a in space.arcs), key=lambda a: a.sort_key)
    circles = sorted((WeightedCircle(c.canonical_segments) for c in space.circles),
                     key=lambda c: c.segments)
    return WeightedOrbitSpace(
        spheres=tuple(sorted(space.spheres)),
        points=tuple(sorted(space.points)),
        arcs=tuple(arcs),
        circles=tuple(circles),
        simply_connected=space.simply_connected,
    )
