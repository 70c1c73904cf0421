"""Closed 3-manifolds with a circle action that has fixed points.

The action is described by Seifert data {b; (eps, g, h, t), (a1,b1), ...}:
eps is "o" for an orientable orbit surface and "n" for a non-orientable
one, g its genus, h the number of boundary circles of fixed points, t the
number of boundary circles of Z2 isotropy and (ai, bi) the exceptional
orbits.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

from .catalog import Catalog, CaseDescriptor, CatalogRow, family, one_of
from .errors import FixedPointFree, InternalInvariantError, InvariantRange
from .manifolds import ManifoldExpr, Summand, lens
from .orbit_data import SeifertInvariant, as_segments

logger = logging.getLogger(__name__)

TWISTED_CASE_NOTE = ("non-orientable orbit surface without Z2 boundary: counted as one twisted S2~xS1 "
                     "summand plus g+h-2 copies of S2xS1, so that (n,1,1,0) gives S2~xS1 alone")


@dataclass(frozen=True)
class SeifertOrbitData:
    b: int
    epsilon: str
    g: int
    h_bar: int
    t: int
    exceptional: Tuple[SeifertInvariant, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "exceptional", as_segments(self.exceptional))
        if self.epsilon not in ("o", "n"):
            raise InvariantRange(f"eps must be 'o' or 'n', got {self.epsilon!r}")
        for name in ("g", "h_bar", "t"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise InvariantRange(f"{name} must be a nonnegative integer, got {value!r}")
        if self.epsilon == "n" and self.g < 1:
            raise InvariantRange("a non-orientable orbit surface has genus at least 1")
        if self.epsilon == "n":
            for inv in self.exceptional:
                if not 2 * inv.beta < inv.alpha:
                    raise InvariantRange(
                        f"non-orientable data needs 0 < beta < alpha/2, got {inv}")
        if self.h_bar + self.t != 0 and self.b != 0:
            raise InvariantRange(f"b must be 0 when h + t > 0, got b={self.b}")
        if (self.epsilon == "n" and self.h_bar + self.t == 0
                and all(inv.alpha != 2 for inv in self.exceptional) and self.b not in (0, 1)):
            raise InvariantRange(f"b must be 0 or 1 for this non-orientable data, got b={self.b}")

    def __str__(self) -> str:
        inner = "".join(f",{inv}" for inv in self.exceptional)
        return f"{{{self.b};({self.epsilon},{self.g},{self.h_bar},{self.t}){inner}}}"


def raymond_case(data: SeifertOrbitData) -> int:
    if data.epsilon == "o":
        return 1
    return 2 if data.t > 0 else 3


def raymond_classify(data: SeifertOrbitData) -> ManifoldExpr:
    """Connected-sum decomposition of a circle 3-manifold with fixed points."""
    if data.h_bar == 0:
        raise FixedPointFree(f"{data} has no fixed points (h = 0)")
    lenses = [lens(inv.alpha, inv.beta) for inv in data.exceptional]
    projective = (Summand("RP2xS1"), data.t)
    case = raymond_case(data)
    if case == 1:
        parts = [(Summand("S2xS1"), 2 * data.g + data.h_bar - 1), projective]
    elif case == 2:
        parts = [(Summand("S2xS1"), data.g + data.h_bar - 1), projective]
    else:
        parts = [Summand("S2~xS1"), (Summand("S2xS1"), data.g + data.h_bar - 2)]
    result = ManifoldExpr.connected_sum(3, parts + lenses)
    logger.debug(f"Raymond case {case}: {data} -> {result}")
    return result


def _raymond(b, eps, g, h, t, *exceptional) -> SeifertOrbitData:
    return SeifertOrbitData(b, eps, g, h, t, tuple(exceptional))


def _row(group, descriptor, manifolds, note="", witness=None) -> CatalogRow:
    return CatalogRow(group, descriptor, manifolds, note, witness)


THEOREM_A = Catalog("3-dimensional catalog", [
    _row("SO3", CaseDescriptor(0, "cohomogeneity_one"), one_of("S3", "RP3")),
    _row("SO3", CaseDescriptor(0, "point", ("SO(3)",)), one_of("S3")),
    _row("SO3", CaseDescriptor(0, "point", ("O(2)",)), one_of("RP3")),
    _row("S1", CaseDescriptor(0, "point", ("1",)), one_of("S3"),
         witness=_raymond(0, "o", 0, 1, 0)),
    _row("S1", CaseDescriptor(0, "point", ("Z_q",)), family("lens space L(q,q')", 3)),
    _row("S1", CaseDescriptor(1, "interval", ("1", "1", "1")), one_of("S3"),
         witness=_raymond(0, "o", 0, 1, 0)),
    _row("S1", CaseDescriptor(1, "interval", ("1", "1", "Z2")), one_of("RP3"),
         witness=_raymond(0, "o", 0, 1, 0, (2, 1))),
    _row("S1", CaseDescriptor(1, "interval", ("Z2", "1", "Z2")), one_of("RP3 # RP3"),
         note="4^2 = 16 inequivalent actions",
         witness=_raymond(0, "o", 0, 1, 0, (2, 1), (2, 1))),
    _row("S1", CaseDescriptor(1, "circle", ("1",)), one_of("S2~xS1"),
         witness=_raymond(0, "n", 1, 1, 0)),
    _row("S1", CaseDescriptor(1, "circle", ("Z2",)), one_of("RP2xS1"),
         witness=_raymond(0, "o", 0, 1, 1)),
    _row("S1", CaseDescriptor(1, "circle", ("S1",)), one_of("S2xS1"),
         witness=_raymond(0, "o", 0, 2, 0)),
])


def theoremA_lookup(group: str, descriptor: CaseDescriptor) -> CatalogRow:
    """Row of the 3-dimensional catalog; raises NoSuchCase for unknown cases."""
    row = THEOREM_A.lookup(group, descriptor)
    if row.witness is not None:
        derived = raymond_classify(row.witness)
        if derived not in row.manifolds:
            raise InternalInvariantError(
                f"catalog row {group} {descriptor} lists {[m.label() for m in row.manifolds]} "
                f"but its Seifert data {row.witness} gives {derived}")
    return row
