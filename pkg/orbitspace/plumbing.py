"""Equivariant plumbing of disk bundles over the 2-sphere.

Each catalog block is a disk bundle Y_omega together with the action data
on its two hemispheres.  A hemisphere carries a column pair (u, v) for the
circle action and (w, t) for the torus extension; the second hemisphere is
glued to the first by

    u2 = -u1,  v2 = -omega*u1 + v1,  w2 = -w1,  t2 = -omega*w1 + t1

so every block stores only its first-hemisphere column and derives the rest.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

from .errors import (
    IllegalWeights,
    IncompatibleWeights,
    InternalInvariantError,
    InvariantRange,
    UnsupportedConfiguration,
)
from .intforms import IntSymMatrix
from .orbit_data import (
    SeifertInvariant,
    WeightedOrbitSpace,
    endpoint_value,
    validate_legality,
)

logger = logging.getLogger(__name__)


class Family(Enum):
    C = "C"  # weighted arc with both end points
    D = "D"  # two isolated fixed points
    G = "G"  # fixed disk and half an arc
    H = "H"  # isolated fixed point and fixed disk
    I = "I"  # two fixed disks
    J = "J"  # weighted boundary sphere


def _sign(name: str, value: int) -> None:
    if value not in (1, -1):
        raise InvariantRange(f"{name} must be +1 or -1, got {value}")


@dataclass(frozen=True)
class BundleBlock:
    family: Family
    omega: int
    params: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(sorted(dict(self.params).items())))

    @property
    def p(self) -> Dict[str, int]:
        return dict(self.params)

    def param(self, name: str) -> int:
        return self.p[name]

    def formula_omega(self) -> int:
        p = self.p
        if self.family is Family.C:
            return p["eps1"] * p["eps2"] * (abs(p["b2"]) - abs(p["b1"]))
        if self.family is Family.D:
            return -p["eps1"] - p["eps2"]
        if self.family is Family.G:
            return p["eps1"] * p["alpha"]
        if self.family is Family.H:
            return -p["eps1"]
        if self.family is Family.I:
            return 0
        return p["omega"]

    def first_hemisphere(self) -> Tuple[int, int, int, int]:
        """(u1, v1, w1, t1)"""
        p = self.p
        eps, n = p["eps"], p["n"]
        if self.family is Family.C:
            a, b, e1 = p["alpha"], p["beta"], p["eps1"]
            return eps * a, eps * e1, eps * (b + n * a), eps * e1 * (abs(p["b1"]) + n)
        if self.family is Family.D:
            e1 = p["eps1"]
            return eps, -eps * e1, eps * n, -eps * e1 * (n + e1)
        if self.family is Family.G:
            a, b, e1 = p["alpha"], p["beta"], p["eps1"]
            return eps, eps * e1 * a, eps * (abs(p["b1"]) + n), eps * e1 * (b + n * a)
        if self.family is Family.H:
            e1 = p["eps1"]
            return eps, -eps * e1, eps * n, -eps * e1 * (n + e1)
        if self.family is Family.I:
            return eps, 0, n, p["delta"]
        return 0, eps, p["delta"], n

    @property
    def action_matrix(self) -> Tuple[Tuple[int, int, int, int], Tuple[int, int, int, int]]:
        """Rows (u1, u2, w1, w2) and (v1, v2, t1, t2)."""
        u1, v1, w1, t1 = self.first_hemisphere()
        omega = self.formula_omega()
        u2, v2, w2, t2 = -u1, -omega * u1 + v1, -w1, -omega * w1 + t1
        return (u1, u2, w1, w2), (v1, v2, t1, t2)

    def hemisphere_determinants(self) -> Tuple[int, int]:
        (u1, u2, w1, w2), (v1, v2, t1, t2) = self.action_matrix
        return u1 * t1 - w1 * v1, u2 * t2 - w2 * v2

    def check(self) -> None:
        """Re-derive omega and the hemisphere determinants."""
        expected = self.formula_omega()
        if expected != self.omega:
            raise InternalInvariantError(
                f"block {self.family.value} stores omega={self.omega} but its parameters give {expected}")
        for name, value in self.params:
            if name.startswith("eps") or name == "delta":
                if value not in (1, -1):
                    raise InternalInvariantError(f"block {self.family.value} has {name}={value}")
        for index, det in enumerate(self.hemisphere_determinants(), start=1):
            if det not in (1, -1):
                raise InternalInvariantError(
                    f"block {self.family.value} hemisphere {index} has determinant {det}")

    def to_dict(self) -> dict:
        top, bottom = self.action_matrix
        return {
            "family": self.family.value,
            "omega": self.omega,
            "params": dict(self.params),
            "action_matrix": [list(top), list(bottom)],
        }


def _block(family: Family, **params: int) -> BundleBlock:
    draft = BundleBlock(family, 0, tuple(params.items()))
    block = BundleBlock(family, draft.formula_omega(), draft.params)
    block.check()
    return block


def make_block_c(b1: int, inv: SeifertInvariant, b2: int, eps: int = 1, n: int = 0) -> BundleBlock:
    """Block for a single-segment weighted arc [b'; (alpha, beta); b'']."""
    _sign("eps", eps)
    start = endpoint_value(b1, inv)
    if start not in (1, -1):
        raise IllegalWeights(f"b'*alpha + beta = {b1}*{inv.alpha} + {inv.beta} = {start}, expected +-1")
    end = endpoint_value(b2, inv)
    if end not in (1, -1):
        raise IllegalWeights(f"b''*alpha + beta = {b2}*{inv.alpha} + {inv.beta} = {end}, expected +-1")
    return _block(Family.C, b1=b1, b2=b2, alpha=inv.alpha, beta=inv.beta,
                  eps1=inv.beta - inv.alpha * abs(b1),
                  eps2=inv.alpha * abs(b2) - inv.beta,
                  eps=eps, n=n)


def make_block_d(eps1: int, eps2: int, eps: int = 1, n: int = 0) -> BundleBlock:
    _sign("eps'", eps1)
    _sign("eps''", eps2)
    _sign("eps", eps)
    return _block(Family.D, eps1=eps1, eps2=eps2, eps=eps, n=n)


def make_block_g(b1: int, inv: SeifertInvariant, eps: int = 1, n: int = 0) -> BundleBlock:
    """Block for a fixed disk meeting the last segment of an arc."""
    _sign("eps", eps)
    value = endpoint_value(b1, inv)
    if value not in (1, -1):
        raise IllegalWeights(f"b'*alpha' + beta' = {b1}*{inv.alpha} + {inv.beta} = {value}, expected +-1")
    return _block(Family.G, b1=b1, alpha=inv.alpha, beta=inv.beta,
                  eps1=inv.alpha * abs(b1) - inv.beta, eps=eps, n=n)


def make_block_h(eps1: int, eps: int = 1, n: int = 0) -> BundleBlock:
    _sign("eps'", eps1)
    _sign("eps", eps)
    return _block(Family.H, eps1=eps1, eps=eps, n=n)


def make_block_i(eps: int = 1, n: int = 0, delta: int = 1) -> BundleBlock:
    _sign("eps", eps)
    _sign("delta", delta)
    return _block(Family.I, eps=eps, n=n, delta=delta)


def make_block_j(omega: int, eps: int = 1, n: int = 0, delta: int = 1) -> BundleBlock:
    _sign("eps", eps)
    _sign("delta", delta)
    return _block(Family.J, omega=omega, eps=eps, n=n, delta=delta)


def adjacent_compatible(left: BundleBlock, right: BundleBlock) -> Optional[str]:
    """Reason the two blocks cannot be plumbed in this order, or None."""
    pair = (left.family, right.family)
    lp, rp = left.p, right.p
    if pair == (Family.C, Family.G):
        if (lp["alpha"], lp["beta"]) != (rp["alpha"], rp["beta"]):
            return (f"G block Seifert data ({rp['alpha']},{rp['beta']}) differs from "
                    f"C block ({lp['alpha']},{lp['beta']})")
        if lp["b2"] != rp["b1"]:
            return f"G block b'={rp['b1']} differs from C block b''={lp['b2']}"
        if lp["eps2"] != rp["eps1"]:
            return f"G block eps'={rp['eps1']} differs from C block eps''={lp['eps2']}"
    elif pair == (Family.C, Family.C):
        if lp["b2"] != rp["b1"]:
            return f"junction weights differ: b''={lp['b2']} then b'={rp['b1']}"
    elif pair == (Family.D, Family.H):
        if lp["eps2"] != rp["eps1"]:
            return f"shared point has eps''={lp['eps2']} in D but eps'={rp['eps1']} in H"
    elif right.family is Family.I and right.omega != 0:
        return "I block must have omega 0"
    return None


def columns_match(left: BundleBlock, right: BundleBlock) -> bool:
    """Sign +1 plumbing swaps coordinates: u2 of the left is v1 of the right and back."""
    (_, lu2, _, _), (_, lv2, _, _) = left.action_matrix
    (ru1, _, _, _), (rv1, _, _, _) = right.action_matrix
    return lu2 == rv1 and lv2 == ru1


@dataclass(frozen=True)
class PlumbingChain:
    blocks: Tuple[BundleBlock, ...]
    m: int
    l: int

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if self.t != 2 * self.m + self.l - 1:
            raise InternalInvariantError(
                f"chain has t={self.t} blocks but 2m+l-1 = {2 * self.m + self.l - 1}")
        for block in self.blocks:
            block.check()
        for left, right in zip(self.blocks, self.blocks[1:]):
            reason = adjacent_compatible(left, right)
            if reason:
                raise IncompatibleWeights(reason)

    @property
    def t(self) -> int:
        return len(self.blocks)

    @property
    def omegas(self) -> List[int]:
        return [b.omega for b in self.blocks]

    def to_dict(self) -> dict:
        return {
            "blocks": [b.to_dict() for b in self.blocks],
            "omegas": self.omegas,
            "t": self.t,
            "m": self.m,
            "l": self.l,
            "columns_match": [columns_match(a, b) for a, b in zip(self.blocks, self.blocks[1:])],
        }


def assemble_chain(space: WeightedOrbitSpace) -> PlumbingChain:
    """Linear plumbing chain for a supported legal orbit space.

    Templates, with the weighted boundary spheres at the end:
    {sphere} -> J; {point, sphere} -> H J; {point, point, sphere} -> D H J;
    {sphere, sphere} -> J I J; {arc, sphere} -> C G J.

    Only single-segment arcs have a template: a C block carries one
    Seifert pair.
    """
    validate_legality(space).raise_if_illegal()
    if space.circles:
        raise UnsupportedConfiguration("orbit spaces with weighted circles have no linear plumbing chain")
    if len(space.arcs) > 1:
        raise UnsupportedConfiguration(f"{len(space.arcs)} weighted arcs; at most one is supported")

    spheres, points, arcs = space.spheres, space.points, space.arcs
    shape = (len(spheres), len(points), len(arcs))

    if shape == (1, 0, 0):
        blocks = [make_block_j(spheres[0].euler)]
        l = 0
    elif shape == (1, 1, 0):
        blocks = [make_block_h(points[0].weight), make_block_j(spheres[0].euler)]
        l = 1
    elif shape == (1, 2, 0):
        first, second = points[0].weight, points[1].weight
        blocks = [make_block_d(first, second), make_block_h(second), make_block_j(spheres[0].euler)]
        l = 2
    elif shape == (2, 0, 0):
        blocks = [make_block_j(spheres[0].euler), make_block_i(), make_block_j(spheres[1].euler)]
        l = 0
    elif shape == (1, 0, 1):
        arc = arcs[0]
        if len(arc.segments) > 1:
            raise UnsupportedConfiguration(
                f"arc {arc} has {len(arc.segments)} segments; only single-segment arcs have a plumbing template")
        segment = arc.segments[0]
        blocks = [make_block_c(arc.b_start, segment, arc.b_end),
                  make_block_g(arc.b_end, segment),
                  make_block_j(spheres[0].euler)]
        l = 2
    else:
        raise UnsupportedConfiguration(
            f"no plumbing template for {len(spheres)} sphere(s), {len(points)} point(s), {len(arcs)} arc(s)")

    chain = PlumbingChain(tuple(blocks), m=len(spheres), l=l)
    logger.debug(f"Assembled chain {[b.family.value for b in chain.blocks]} with omegas {chain.omegas}")
    return chain


def intersection_matrix(chain: PlumbingChain) -> IntSymMatrix:
    """Tridiagonal matrix B0: omegas on the diagonal, 1 next to it."""
    t = chain.t
    rows = [[0] * t for _ in range(t)]
    for i, omega in enumerate(chain.omegas):
        rows[i][i] = omega
        if i + 1 < t:
            rows[i][i + 1] = rows[i + 1][i] = 1
    return IntSymMatrix.from_rows(rows)


def intersection_form(chain: PlumbingChain) -> IntSymMatrix:
    """B0 without its last row and column."""
    b0 = intersection_matrix(chain)
    return IntSymMatrix.from_rows([row[:-1] for row in b0.to_list()[:-1]])
