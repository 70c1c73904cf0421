"""Connected-sum expressions over a fixed alphabet of prime summands."""

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple, Union

from .errors import InvariantRange

# Display order of summand kinds in a normalized expression.
KINDS = ("S4", "S3", "CP2", "-CP2", "S2xS2", "S2xS1", "S2~xS1", "RP2xS1", "L", "RP4", "family")

_DIMENSION = {
    "S4": 4, "CP2": 4, "-CP2": 4, "S2xS2": 4, "RP4": 4,
    "S3": 3, "S2xS1": 3, "S2~xS1": 3, "RP2xS1": 3, "L": 3,
}

_EULER_4D = {"S4": 2, "CP2": 3, "-CP2": 3, "S2xS2": 4, "RP4": 1}

_LENS_RE = re.compile(r"^L\((\d+),(\d+)\)$")


@dataclass(frozen=True)
class Summand:
    """One prime summand, a lens space L(alpha, beta), or a named family."""

    kind: str
    alpha: int = 0
    beta: int = 0
    text: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvariantRange(f"unknown summand kind {self.kind!r}")

    @property
    def sort_key(self):
        return (KINDS.index(self.kind), self.alpha, self.beta, self.text)

    def label(self) -> str:
        if self.kind == "L":
            if (self.alpha, self.beta) == (2, 1):
                return "RP3"
            return f"L({self.alpha},{self.beta})"
        if self.kind == "family":
            return self.text
        return self.kind

    def reverse(self) -> "Summand":
        if self.kind == "CP2":
            return Summand("-CP2")
        if self.kind == "-CP2":
            return Summand("CP2")
        if self.kind == "L":
            return Summand("L", self.alpha, self.alpha - self.beta)
        return self


def lens(alpha: int, beta: int) -> Summand:
    return Summand("L", alpha, beta)


SummandCounts = Iterable[Union[Summand, Tuple[Summand, int]]]


@dataclass(frozen=True)
class ManifoldExpr:
    """A normalized connected sum.

    Identity summands (S4, S3) are dropped unless nothing else is left, and
    the remaining summands are sorted.  A family value ("quotient of ...",
    "... -bundle over ...") is a single opaque summand.
    """

    dimension: int
    summands: Tuple[Summand, ...]

    def __post_init__(self):
        identity = "S4" if self.dimension == 4 else "S3"
        kept = [s for s in self.summands if s.kind not in ("S4", "S3")]
        if not kept:
            kept = [Summand(identity)]
        object.__setattr__(self, "summands", tuple(sorted(kept, key=lambda s: s.sort_key)))

    @classmethod
    def connected_sum(cls, dimension: int, parts: SummandCounts) -> "ManifoldExpr":
        summands = []
        for part in parts:
            if isinstance(part, Summand):
                summands.append(part)
            else:
                summand, count = part
                if count < 0:
                    raise InvariantRange(f"negative summand count {count} for {summand.label()}")
                summands.extend([summand] * count)
        return cls(dimension, tuple(summands))

    @classmethod
    def of(cls, *kinds: str) -> "ManifoldExpr":
        """Expression from plain labels, e.g. ``ManifoldExpr.of("CP2", "-CP2")``."""
        return cls.parse_label(" # ".join(kinds))

    @classmethod
    def family(cls, text: str, dimension: int = 4) -> "ManifoldExpr":
        return cls(dimension, (Summand("family", text=text),))

    @classmethod
    def parse_label(cls, text: str, dimension: Optional[int] = None) -> "ManifoldExpr":
        summands = []
        for piece in (p.strip() for p in text.split("#")):
            if piece == "RP3":
                summands.append(lens(2, 1))
                continue
            match = _LENS_RE.match(piece)
            if match:
                summands.append(lens(int(match.group(1)), int(match.group(2))))
            elif piece in _DIMENSION:
                summands.append(Summand(piece))
            else:
                raise InvariantRange(f"unknown summand label {piece!r}")
        dims = {_DIMENSION[s.kind] for s in summands}
        if dimension is None:
            if len(dims) != 1:
                raise InvariantRange(f"mixed dimensions in {text!r}")
            dimension = dims.pop()
        return cls(dimension, tuple(summands))

    @property
    def is_family(self) -> bool:
        return any(s.kind == "family" for s in self.summands)

    @property
    def is_identity(self) -> bool:
        return len(self.summands) == 1 and self.summands[0].kind in ("S4", "S3")

    def count(self, label: str) -> int:
        return sum(1 for s in self.summands if s.label() == label)

    def label(self) -> str:
        return " # ".join(s.label() for s in self.summands)

    def __str__(self) -> str:
        return self.label()

    def reverse(self) -> "ManifoldExpr":
        return ManifoldExpr(self.dimension, tuple(s.reverse() for s in self.summands))

    def is_orientation_pair(self, other: "ManifoldExpr") -> bool:
        return self != other and self.reverse() == other

    def euler_characteristic(self) -> Optional[int]:
        """Euler characteristic of a closed sum; None for families."""
        if self.is_family:
            return None
        if self.dimension % 2 == 1:
            return 0
        return 2 + sum(_EULER_4D[s.kind] - 2 for s in self.summands)
