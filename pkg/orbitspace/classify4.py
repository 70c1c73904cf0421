"""Fixed-point homogeneous circle actions on simply connected 4-manifolds.

A configuration of the fixed-point set is turned into its legally weighted
orbit space, then into a plumbing chain, an intersection form and finally
a connected sum.  The module also enumerates every single-segment weighted
arc up to a bound, and carries the structural case tables.
"""

import logging
from collections import OrderedDict
from dataclasses import dataclass, field, replace
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

from .catalog import Catalog, CaseDescriptor, CatalogRow, family, one_of
from .errors import InvariantRange
from .intforms import FormInvariants, IntSymMatrix, Reduction, classify, invariants, reduce_trace
from .manifolds import ManifoldExpr
from .orbit_data import (
    SeifertInvariant,
    WeightedArc,
    WeightedOrbitSpace,
    canonical_arc,
    endpoint_value,
    validate_legality,
)
from .plumbing import PlumbingChain, assemble_chain, intersection_form, intersection_matrix

logger = logging.getLogger(__name__)

# (b', b'') families in table order.
ARC_FAMILIES = ((0, 0), (0, -1), (-1, 0), (-1, -1))


@dataclass(frozen=True)
class SphereOnly:
    """Fix = S2."""


@dataclass(frozen=True)
class SpherePlusPoint:
    """Fix = S2 and one isolated point of the given sign."""

    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvariantRange(f"point sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True)
class TwoSpheres:
    """Fix = two spheres with weights omega1 and -omega1."""

    omega1: int


@dataclass(frozen=True)
class SpherePlusTwoPoints:
    """Fix = S2 and two isolated points.

    With ``arc`` the two points bound a weighted arc of finite isotropy;
    with ``point_signs`` there is no finite isotropy.
    """

    arc: Optional[WeightedArc] = None
    point_signs: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if (self.arc is None) == (self.point_signs is None):
            raise InvariantRange("exactly one of arc and point_signs must be given")
        if self.point_signs is not None:
            signs = tuple(self.point_signs)
            if len(signs) != 2 or any(s not in (1, -1) for s in signs):
                raise InvariantRange(f"point_signs must be two signs, got {self.point_signs}")
            object.__setattr__(self, "point_signs", signs)


FixedPointConfig = Union[SphereOnly, SpherePlusPoint, TwoSpheres, SpherePlusTwoPoints]


def build_orbit_space(config: FixedPointConfig) -> WeightedOrbitSpace:
    """Legal weighted orbit space of a configuration; sphere weights make the sum vanish."""
    if isinstance(config, SphereOnly):
        space = WeightedOrbitSpace(spheres=(0,))
    elif isinstance(config, SpherePlusPoint):
        space = WeightedOrbitSpace(spheres=(-config.sign,), points=(config.sign,))
    elif isinstance(config, TwoSpheres):
        space = WeightedOrbitSpace(spheres=(config.omega1, -config.omega1))
    elif isinstance(config, SpherePlusTwoPoints) and config.arc is not None:
        space = WeightedOrbitSpace(spheres=(-config.arc.c,), arcs=(config.arc,))
    elif isinstance(config, SpherePlusTwoPoints):
        first, second = config.point_signs
        space = WeightedOrbitSpace(spheres=(-first - second,), points=(first, second))
    else:
        raise InvariantRange(f"unknown fixed point configuration {config!r}")
    space = space.as_simply_connected()
    validate_legality(space).raise_if_illegal()
    return space


def fixed_point_euler(space: WeightedOrbitSpace) -> int:
    """Euler characteristic of the fixed-point set described by an orbit space."""
    return (2 * len(space.spheres) + len(space.points)
            + sum(len(arc.segments) + 1 for arc in space.arcs))


def euler_check(config: Union[FixedPointConfig, WeightedOrbitSpace], result: ManifoldExpr) -> bool:
    """chi(M) = chi(Fix)"""
    space = config if isinstance(config, WeightedOrbitSpace) else build_orbit_space(config)
    return result.euler_characteristic() == fixed_point_euler(space)


@dataclass(frozen=True)
class Trace:
    space: WeightedOrbitSpace
    chain: PlumbingChain
    b0: IntSymMatrix
    qm: IntSymMatrix
    invariants: FormInvariants
    reduction: Reduction
    euler_ok: bool
    notes: Tuple[str, ...] = field(default_factory=tuple)


class Classification(NamedTuple):
    manifold: ManifoldExpr
    extendable: bool
    trace: Trace


def classify_space(space: WeightedOrbitSpace, **search) -> Classification:
    """Run the plumbing pipeline on a weighted orbit space.

    Keyword arguments are passed to :func:`reduce_trace`.
    """
    chain = assemble_chain(space)
    b0 = intersection_matrix(chain)
    qm = intersection_form(chain)
    manifold = classify(qm)
    reduction = reduce_trace(qm, **search)
    euler_ok = euler_check(space, manifold)
    notes = ("reduction search exhausted; identification uses invariants only",) if reduction.exhausted else ()
    trace = Trace(space, chain, b0, qm, invariants(qm), reduction, euler_ok, notes)
    logger.info(f"Classified {space.describe()} as {manifold}")
    return Classification(manifold, not space.circles, trace)


def classify_config(config: FixedPointConfig, **search) -> Classification:
    return classify_space(build_orbit_space(config), **search)


@dataclass(frozen=True)
class ArcCase:
    arc: WeightedArc
    eps_start: int
    eps_end: int
    omega1: int
    omega2: int
    form: IntSymMatrix
    manifold: ManifoldExpr
    canonical: WeightedArc
    euler_ok: bool
    orientation_partner: Optional[int] = None

    @property
    def b_start(self) -> int:
        return self.arc.b_start

    @property
    def b_end(self) -> int:
        return self.arc.b_end

    @property
    def alpha(self) -> int:
        return self.arc.segments[0].alpha

    @property
    def beta(self) -> int:
        return self.arc.segments[0].beta

    def row(self) -> Tuple[int, int, int, int, int, int, int, int]:
        """(b', b'', eps', eps'', omega1, alpha, beta, omega2)"""
        return (self.b_start, self.b_end, self.eps_start, self.eps_end,
                self.omega1, self.alpha, self.beta, self.omega2)

    def to_dict(self) -> dict:
        return {
            "arc": str(self.arc),
            "b_start": self.b_start,
            "b_end": self.b_end,
            "eps_start": self.eps_start,
            "eps_end": self.eps_end,
            "omega1": self.omega1,
            "alpha": self.alpha,
            "beta": self.beta,
            "omega2": self.omega2,
            "QM": self.form.to_list(),
            "manifold": self.manifold.label(),
            "canonical": str(self.canonical),
            "orientation_partner": self.orientation_partner,
            "euler_check": self.euler_ok,
        }


def _arc_case(arc: WeightedArc) -> ArcCase:
    result = classify_config(SpherePlusTwoPoints(arc=arc))
    c_block, g_block = result.trace.chain.blocks[0], result.trace.chain.blocks[1]
    return ArcCase(
        arc=arc,
        eps_start=c_block.param("eps1"),
        eps_end=c_block.param("eps2"),
        omega1=c_block.omega,
        omega2=g_block.omega,
        form=result.trace.qm,
        manifold=result.manifold,
        canonical=canonical_arc(arc),
        euler_ok=result.trace.euler_ok,
    )


def enumerate_arc_cases(k_max: int) -> List[ArcCase]:
    """Every legal single-segment arc [b'; (alpha, beta); b''] with alpha <= k_max.

    Cases come in (b', b'') family order, then by alpha and beta.  Arcs
    related by reversal are kept separately and share ``canonical``; a case
    whose manifold is the orientation reverse of another case with the same
    alpha points to it through ``orientation_partner``.
    """
    if k_max < 2:
        raise InvariantRange(f"k_max must be at least 2, got {k_max}")
    cases: List[ArcCase] = []
    for b_start, b_end in ARC_FAMILIES:
        for alpha in range(2, k_max + 1):
            for beta in sorted({1, alpha - 1}):
                inv = SeifertInvariant(alpha, beta)
                if endpoint_value(b_start, inv) not in (1, -1) or endpoint_value(b_end, inv) not in (1, -1):
                    continue
                cases.append(_arc_case(WeightedArc(b_start, (inv,), b_end)))

    linked = []
    for case in cases:
        partner = next((j for j, other in enumerate(cases)
                        if other.alpha == case.alpha and case.manifold.is_orientation_pair(other.manifold)),
                       None)
        linked.append(replace(case, orientation_partner=partner))
    logger.info(f"Enumerated {len(linked)} arc cases up to alpha={k_max}")
    return linked


def distinct_actions(cases: List[ArcCase]) -> Dict[WeightedArc, List[int]]:
    """Indices of enumerated cases grouped by canonical arc."""
    groups: Dict[WeightedArc, List[int]] = OrderedDict()
    for index, case in enumerate(cases):
        groups.setdefault(case.canonical, []).append(index)
    return dict(groups)


def _row(group, descriptor, manifolds, note="") -> CatalogRow:
    return CatalogRow(group, descriptor, manifolds, note)


_S3_BUNDLE = "S3-bundle over S1 (S3xS1 or S3~xS1)"

THEOREM_B = Catalog("4-dimensional catalog", [
    _row("SO4", CaseDescriptor(0, "cohomogeneity_one"), one_of("S4", "RP4")),
    _row("SU2", CaseDescriptor(0, "cohomogeneity_one"), one_of("S4", "RP4", "CP2")),

    _row("SO3", CaseDescriptor(0, "point", ("SO(2)",)), one_of("S4")),
    _row("SO3", CaseDescriptor(0, "point", ("O(2)",)), one_of("RP4")),
    _row("SO3", CaseDescriptor(1, "interval", ("SO(2)", "SO(2)", "SO(2)")), one_of("S4")),
    _row("SO3", CaseDescriptor(1, "interval", ("O(2)", "SO(2)", "SO(2)")), one_of("RP4")),
    _row("SO3", CaseDescriptor(1, "interval", ("O(2)", "SO(2)", "O(2)")), one_of("RP4 # RP4")),
    _row("SO3", CaseDescriptor(1, "cylinder", ("SO(3)",)), family("S3-bundle over S1 (S3xS1)")),
    _row("SO3", CaseDescriptor(1, "cylinder", ("O(2)",)),
         family("RP3-bundle over S1, covered by S3xR")),
    _row("SO3", CaseDescriptor(1, "mobius", ("SO(2)",)), family("S3~xS1")),

    _row("S1", CaseDescriptor(0, "point", ("S1",)), one_of("CP2")),
    _row("S1", CaseDescriptor(0, "point", ("1",)), one_of("S4")),
    _row("S1", CaseDescriptor(0, "point", ("Z2",)), one_of("RP4")),

    _row("S1", CaseDescriptor(1, "circle", ("Z_q",)),
         family("lens space-bundle over S1, covered by S3xR")),
    _row("S1", CaseDescriptor(1, "circle", ("1",)), family(_S3_BUNDLE + ", covered by S3xR")),
    _row("S1", CaseDescriptor(1, "interval", ("1", "1", "1")), one_of("S4")),
    _row("S1", CaseDescriptor(1, "interval", ("1", "1", "Z2")), one_of("RP4")),
    _row("S1", CaseDescriptor(1, "interval", ("Z2", "1", "Z2")), one_of("RP4 # RP4"),
         note="non-orientable, covered by S3xR"),
    _row("S1", CaseDescriptor(1, "interval", ("S1", "1", "1")), one_of("CP2")),
    _row("S1", CaseDescriptor(1, "interval", ("S1", "1", "S1")),
         one_of("S2xS2", "CP2 # CP2", "CP2 # -CP2")),
    _row("S1", CaseDescriptor(1, "interval", ("S1", "1", "Z2")),
         family("double covered by CP2 # +-CP2")),
    _row("S1", CaseDescriptor(1, "interval", ("S1", "Z_l", "S1")),
         one_of("S2xS2", "CP2 # CP2", "CP2 # -CP2")),

    _row("S1", CaseDescriptor(2, "surface", ("S1",), fixed="S2", boundary=True),
         one_of("S2xS2", "CP2 # -CP2")),
    _row("S1", CaseDescriptor(2, "surface", ("S1",), fixed="RP2", boundary=True),
         family("quotient of S2xS2 or CP2 # -CP2")),
    _row("S1", CaseDescriptor(2, "surface", ("S1",), fixed="T2", boundary=True),
         family("covered by S2xR2")),
    _row("S1", CaseDescriptor(2, "surface", ("S1",), fixed="K2", boundary=True),
         family("covered by S2xR2")),
    _row("S1", CaseDescriptor(2, "surface", ("Z2",), boundary=True), family("RP2-bundle over F")),

    _row("S1", CaseDescriptor(2, "closed", ("1",)), family("S2-bundle over C")),
    _row("S1", CaseDescriptor(2, "disk", ("1",)), one_of("S4")),
    _row("S1", CaseDescriptor(2, "disk", ("Z2-boundary",)), family("quotient of S2xS2")),
    _row("S1", CaseDescriptor(2, "disk", ("Z2-point",)), one_of("RP4")),
    _row("S1", CaseDescriptor(2, "disk", ("Z2-point", "Z2-point")), one_of("RP4 # RP4")),
    _row("S1", CaseDescriptor(2, "cylinder", ("1",)), family(_S3_BUNDLE)),
    _row("S1", CaseDescriptor(2, "cylinder", ("Z2-boundary", "Z2-boundary")),
         family("covered by S2xR2")),
    _row("S1", CaseDescriptor(2, "cylinder", ("Z2-boundary",)), family("RP3-bundle over S1")),
    _row("S1", CaseDescriptor(2, "mobius", ("1",)), family(_S3_BUNDLE)),
    _row("S1", CaseDescriptor(2, "mobius", ("Z2-boundary",)), family("covered by S2xT2 (S2xR2)")),
])


@dataclass(frozen=True)
class TheoremBCase:
    group: str
    descriptor: CaseDescriptor

    def __post_init__(self):
        if self.group not in ("SO4", "SU2", "SO3", "S1"):
            raise InvariantRange(f"group must be one of SO4, SU2, SO3, S1, got {self.group!r}")


def theoremB_lookup(case: TheoremBCase) -> CatalogRow:
    return THEOREM_B.lookup(case.group, case.descriptor)


# group -> manifolds of a cohomogeneity one fixed point homogeneous action, in terms of n
_COHOMOGENEITY_ONE = {
    "SO": lambda n: (f"S{n}", f"RP{n}"),
    "SU": lambda n: (f"S{2 * n}", f"RP{2 * n}", f"CP{n}"),
    "Sp": lambda n: (f"S{4 * n}", f"S{4 * n}/Gamma", f"CP{2 * n}", f"HP{n}"),
    "G2": lambda n: ("S7", "RP7"),
    "Spin7": lambda n: ("S8", "RP8"),
    "Spin9": lambda n: ("S16", "RP16", "CaP2"),
}


def cohomogeneity_one(group: str, n: int = 0) -> Tuple[str, ...]:
    """Manifolds carrying a cohomogeneity one fixed point homogeneous action of the group."""
    if group not in _COHOMOGENEITY_ONE:
        raise InvariantRange(f"unknown group family {group!r}; expected one of {sorted(_COHOMOGENEITY_ONE)}")
    if group in ("SO", "SU", "Sp") and n < 1:
        raise InvariantRange(f"{group}(n) needs n >= 1, got {n}")
    return _COHOMOGENEITY_ONE[group](n)


def admissible_groups(sphere_dim: int) -> List[Tuple[str, str]]:
    """Pairs (G, H) with G acting transitively on the sphere of that dimension with isotropy H."""
    k = sphere_dim
    if k < 1:
        raise InvariantRange(f"sphere dimension must be at least 1, got {k}")
    groups = [(f"SO({k + 1})", f"SO({k})")]
    if k % 2 == 1 and k >= 3:
        m = (k - 1) // 2
        groups.append((f"SU({m + 1})", f"SU({m})"))
    if k % 4 == 3 and k >= 7:
        m = (k - 3) // 4
        groups.append((f"Sp({m + 1})", f"Sp({m})"))
    if k == 6:
        groups.append(("G2", "SU(3)"))
    if k == 7:
        groups.append(("Spin(7)", "G2"))
    if k == 15:
        groups.append(("Spin(9)", "Spin(7)"))
    return groups
