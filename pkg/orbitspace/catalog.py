"""Static case tables keyed by acting group and orbit-space descriptor."""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import NoSuchCase
from .manifolds import ManifoldExpr

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CaseDescriptor:
    """Shape of the set C of orbits at maximal distance from the fixed set.

    ``dim_c`` is the dimension of C, ``shape`` its topology (point,
    interval, circle, disk, cylinder, mobius, closed, surface or
    cohomogeneity_one), ``isotropy`` the isotropy labels along C,
    ``fixed`` the topology of a fixed surface where it matters and
    ``boundary`` whether C lies in the boundary of the orbit space.
    """

    dim_c: int
    shape: str
    isotropy: Tuple[str, ...] = ()
    fixed: str = ""
    boundary: bool = False

    @classmethod
    def parse(cls, tokens: Sequence[str]) -> "CaseDescriptor":
        """Build a descriptor from ``key=value`` tokens.

        Example: ``dim=1 shape=interval isotropy=Z2,1,Z2``.
        """
        values: Dict[str, str] = {}
        for token in tokens:
            key, sep, value = token.partition("=")
            if not sep:
                raise NoSuchCase(f"descriptor token {token!r} is not key=value")
            values[key.strip()] = value.strip()
        unknown = set(values) - {"dim", "shape", "isotropy", "fixed", "boundary"}
        if unknown:
            raise NoSuchCase(f"unknown descriptor keys: {', '.join(sorted(unknown))}")
        try:
            dim_c = int(values.get("dim", "0"))
        except ValueError:
            raise NoSuchCase(f"descriptor dim must be an integer, got {values['dim']!r}") from None
        isotropy = tuple(p for p in values.get("isotropy", "").split(",") if p)
        return cls(
            dim_c=dim_c,
            shape=values.get("shape", ""),
            isotropy=isotropy,
            fixed=values.get("fixed", ""),
            boundary=values.get("boundary", "false").lower() in ("1", "true", "yes"),
        )

    def __str__(self) -> str:
        parts = [f"dim={self.dim_c}", f"shape={self.shape}"]
        if self.isotropy:
            parts.append("isotropy=" + ",".join(self.isotropy))
        if self.fixed:
            parts.append(f"fixed={self.fixed}")
        if self.boundary:
            parts.append("boundary=true")
        return " ".join(parts)


@dataclass(frozen=True)
class CatalogRow:
    group: str
    descriptor: CaseDescriptor
    manifolds: Tuple[ManifoldExpr, ...]
    note: str = ""
    witness: Optional[object] = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "descriptor": str(self.descriptor),
            "manifolds": [m.label() for m in self.manifolds],
            "note": self.note,
        }


class Catalog:
    """Lookup table of case rows."""

    def __init__(self, name: str, rows: Iterable[CatalogRow]):
        self.name = name
        self._rows: Dict[Tuple[str, CaseDescriptor], CatalogRow] = {}
        for row in rows:
            self._rows[(row.group, row.descriptor)] = row

    @property
    def groups(self) -> Tuple[str, ...]:
        return tuple(sorted({group for group, _ in self._rows}))

    def rows(self, group: Optional[str] = None) -> Tuple[CatalogRow, ...]:
        return tuple(row for (g, _), row in self._rows.items() if group is None or g == group)

    def lookup(self, group: str, descriptor: CaseDescriptor) -> CatalogRow:
        row = self._rows.get((group, descriptor))
        if row is None:
            raise NoSuchCase(f"{self.name} has no case for group {group} with {descriptor}")
        logger.debug(f"{self.name} lookup {group} {descriptor} -> {[m.label() for m in row.manifolds]}")
        return row


def one_of(*labels: str) -> Tuple[ManifoldExpr, ...]:
    return tuple(ManifoldExpr.parse_label(label) for label in labels)


def family(text: str, dimension: int = 4) -> Tuple[ManifoldExpr, ...]:
    return (ManifoldExpr.family(text, dimension),)
