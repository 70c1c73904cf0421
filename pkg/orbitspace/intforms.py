"""Integral symmetric bilinear forms.

Congruence moves, exact invariants, classification of unimodular forms as
connected sums of S4, +-CP2 and S2xS2, a breadth-first reduction search
that records a replayable trace, and a brute-force congruence oracle.

Indices in elementary operations are 1-based: ``(i, j, k)`` adds k times
row i to row j and then k times column i to column j.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, List, NamedTuple, Sequence, Tuple

import numpy as np
from sympy import Matrix, Rational, eye

from .errors import InvariantRange, NoSuchSum, NotUnimodular, UnsupportedConfiguration
from .manifolds import ManifoldExpr, Summand

logger = logging.getLogger(__name__)

Step = Tuple[int, int, int]

# Oracle search spaces larger than this are refused.
MAX_ORACLE_CANDIDATES = 10_000_000


@dataclass(frozen=True)
class IntSymMatrix:
    """Symmetric matrix of exact integers."""

    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise InvariantRange(f"matrix is not square: row of length {len(row)} in size {n}")
            for value in row:
                if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                    raise InvariantRange(f"matrix entry {value!r} is not an integer")
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise InvariantRange(f"matrix is not symmetric at ({i + 1},{j + 1})")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntSymMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntSymMatrix":
        n = len(values)
        return cls(tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def empty(cls) -> "IntSymMatrix":
        return cls(())

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def max_abs(self) -> int:
        return max((abs(v) for row in self.entries for v in row), default=0)

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    def to_sympy(self) -> Matrix:
        return Matrix(self.n, self.n, [v for row in self.entries for v in row])

    def determinant(self) -> int:
        if self.n == 0:
            return 1
        return int(self.to_sympy().det(method="bareiss"))

    def vector_norm(self, x: Sequence[int]) -> int:
        """x . B x"""
        return sum(x[i] * self.entries[i][j] * x[j] for i in range(self.n) for j in range(self.n))

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in self.entries) + "]"


@dataclass(frozen=True)
class FormInvariants:
    rank: int
    signature: Tuple[int, int]
    determinant: int
    parity: str

    @property
    def is_unimodular(self) -> bool:
        return abs(self.determinant) == 1

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "signature": list(self.signature),
            "determinant": self.determinant,
            "parity": self.parity,
        }


class Reduction(NamedTuple):
    matrix: IntSymMatrix
    steps: List[Step]
    exhausted: bool


def elementary_op(B: IntSymMatrix, i: int, j: int, k: int) -> IntSymMatrix:
    """Add k * row i to row j, then k * column i to column j (1-based)."""
    n = B.n
    if i == j:
        raise IndexError(f"elementary operation needs distinct indices, got i=j={i}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"indices ({i},{j}) out of range for size {n}")
    return IntSymMatrix(_apply(B.entries, i - 1, j - 1, k))


def _apply(entries, i: int, j: int, k):
    m = [list(row) for row in entries]
    n = len(m)
    for c in range(n):
        m[j][c] += k * m[i][c]
    for r in range(n):
        m[r][j] += k * m[r][i]
    return tuple(tuple(row) for row in m)


def replay(B: IntSymMatrix, steps: Sequence[Step]) -> IntSymMatrix:
    for i, j, k in steps:
        B = elementary_op(B, i, j, k)
    return B


def _congruence(m: Matrix, i: int, j: int, k) -> Matrix:
    E = eye(m.rows)
    E[j, i] = k
    return E * m * E.T


def _diagonalize(entries) -> List[Rational]:
    """Congruence-diagonalize over the rationals; returns the diagonal."""
    m = Matrix(entries).applyfunc(Rational)
    n = m.rows
    for p in range(n):
        if m[p, p] == 0:
            partner = next((j for j in range(p + 1, n) if m[p, j] != 0), None)
            if partner is None:
                continue
            sign = 1 if m[partner, partner] + 2 * m[p, partner] != 0 else -1
            m = _congruence(m, partner, p, sign)
        pivot = m[p, p]
        for r in range(p + 1, n):
            if m[r, p] != 0:
                m = _congruence(m, p, r, -m[r, p] / pivot)
    return [m[i, i] for i in range(n)]


def invariants(B: IntSymMatrix) -> FormInvariants:
    diagonal = _diagonalize(B.entries)
    positive = sum(1 for d in diagonal if d > 0)
    negative = sum(1 for d in diagonal if d < 0)
    even = all(B[i, i] % 2 == 0 for i in range(B.n))
    return FormInvariants(
        rank=positive + negative,
        signature=(positive, negative),
        determinant=B.determinant(),
        parity="even" if even else "odd",
    )


def classify(B: IntSymMatrix) -> ManifoldExpr:
    """Identify the connected sum whose intersection form is B."""
    inv = invariants(B)
    if not inv.is_unimodular:
        raise NotUnimodular(f"form {B} has determinant {inv.determinant}")
    p, q = inv.signature
    if inv.parity == "odd":
        return ManifoldExpr.connected_sum(4, [(Summand("CP2"), p), (Summand("-CP2"), q)])
    if p != q:
        raise NoSuchSum(f"even form {B} with signature ({p},{q}) is not a sum of S2xS2 copies")
    return ManifoldExpr.connected_sum(4, [(Summand("S2xS2"), p)])


def canonical_target(inv: FormInvariants) -> IntSymMatrix:
    p, q = inv.signature
    if inv.parity == "odd":
        return IntSymMatrix.diagonal([1] * p + [-1] * q)
    if p != q:
        raise NoSuchSum(f"no even unimodular target with signature ({p},{q})")
    n = 2 * p
    rows = [[0] * n for _ in range(n)]
    for block in range(p):
        rows[2 * block][2 * block + 1] = 1
        rows[2 * block + 1][2 * block] = 1
    return IntSymMatrix.from_rows(rows)


def _moves(n: int, max_coefficient: int):
    coefficients = sorted(range(-max_coefficient, max_coefficient + 1), key=lambda k: (abs(k), k))
    return [(i, j, k) for i in range(n) for j in range(n) if i != j
            for k in coefficients if k != 0]


def reduce_trace(B: IntSymMatrix, max_coefficient: int = 2, entry_bound_factor: int = 4,
                 max_states: int = 200_000) -> Reduction:
    """Shortest sequence of elementary operations from B to its canonical form.

    The search is breadth-first over moves with |k| <= max_coefficient and
    never visits a matrix with an entry larger than
    entry_bound_factor * max|B|.  When the search gives up the canonical
    matrix is still returned, with an empty trace and ``exhausted`` set.
    """
    inv = invariants(B)
    if not inv.is_unimodular:
        raise NotUnimodular(f"form {B} has determinant {inv.determinant}")
    target = canonical_target(inv)
    if B == target:
        return Reduction(B, [], False)
    if B.n > 3:
        logger.warning(f"Reduction search skipped for size {B.n}; classifying by invariants only")
        return Reduction(target, [], True)

    bound = entry_bound_factor * max(1, B.max_abs())
    moves = _moves(B.n, max_coefficient)
    parents = {B.entries: None}
    queue = deque([B.entries])
    while queue:
        state = queue.popleft()
        for i, j, k in moves:
            nxt = _apply(state, i, j, k)
            if nxt in parents or any(abs(v) > bound for row in nxt for v in row):
                continue
            parents[nxt] = (state, (i + 1, j + 1, k))
            if nxt == target.entries:
                steps = []
                node = nxt
                while parents[node] is not None:
                    node, step = parents[node]
                    steps.append(step)
                steps.reverse()
                logger.debug(f"Reduced {B} in {len(steps)} step(s) after {len(parents)} states")
                return Reduction(target, steps, False)
            if len(parents) >= max_states:
                logger.warning(f"Reduction search for {B} exhausted {max_states} states")
                return Reduction(target, [], True)
            queue.append(nxt)
    logger.warning(f"Reduction search for {B} found no path within entry bound {bound}")
    return Reduction(target, [], True)


def _batched_det(P: np.ndarray) -> np.ndarray:
    n = P.shape[1]
    if n == 1:
        return P[:, 0, 0]
    if n == 2:
        return P[:, 0, 0] * P[:, 1, 1] - P[:, 0, 1] * P[:, 1, 0]
    if n == 3:
        return (P[:, 0, 0] * (P[:, 1, 1] * P[:, 2, 2] - P[:, 1, 2] * P[:, 2, 1])
                - P[:, 0, 1] * (P[:, 1, 0] * P[:, 2, 2] - P[:, 1, 2] * P[:, 2, 0])
                + P[:, 0, 2] * (P[:, 1, 0] * P[:, 2, 1] - P[:, 1, 1] * P[:, 2, 0]))
    raise UnsupportedConfiguration(f"oracle supports sizes up to 3, got {n}")


@lru_cache(maxsize=16)
def _unimodular_box(n: int, bound: int) -> np.ndarray:
    """All n x n integer matrices with entries in [-bound, bound] and det +-1."""
    candidates = (2 * bound + 1) ** (n * n)
    if candidates > MAX_ORACLE_CANDIDATES:
        raise UnsupportedConfiguration(
            f"oracle search space {candidates} too large for size {n} and bound {bound}")
    values = np.arange(-bound, bound + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([values] * (n * n)), indexing="ij"), axis=-1)
    P = grid.reshape(-1, n, n)
    det = _batched_det(P)
    P = P[(det == 1) | (det == -1)]
    P.setflags(write=False)
    return P


def _transformed(A: IntSymMatrix, bound: int) -> np.ndarray:
    P = _unimodular_box(A.n, bound)
    # |entry of P^T A P| <= n^2 * bound^2 * max|A|
    if A.n * A.n * bound * bound * max(1, A.max_abs()) < 2 ** 62:
        a = np.array(A.entries, dtype=np.int64)
    else:
        P = P.astype(object)
        a = np.array(A.entries, dtype=object)
    return (np.transpose(P, (0, 2, 1)) @ a @ P).reshape(len(P), -1)


def congruence_orbit(A: IntSymMatrix, bound: int) -> FrozenSet[Tuple[int, ...]]:
    """Flattened entries of every P^T A P with P in the bounded unimodular box."""
    if A.n == 0:
        return frozenset({()})
    Q = _transformed(A, bound)
    if Q.dtype != object:
        Q = np.unique(Q, axis=0)
    return frozenset(tuple(int(v) for v in row) for row in Q)


def brute_force_congruent(A: IntSymMatrix, B: IntSymMatrix, bound: int) -> bool:
    """True iff P^T A P = B for some P with |entries| <= bound and det P = +-1."""
    if A.n != B.n:
        return False
    if A.n == 0:
        return True
    Q = _transformed(A, bound)
    target = np.array([v for row in B.entries for v in row], dtype=Q.dtype)
    return bool(np.any(np.all(Q == target, axis=1)))


def oracle_congruent(A: IntSymMatrix, B: IntSymMatrix, bound: int, escalation: Sequence[int] = ()) -> bool:
    """Brute-force congruence, retrying with each larger bound in ``escalation``."""
    if brute_force_congruent(A, B, bound):
        return True
    for larger in escalation:
        logger.warning(f"No witness for {A} ~ {B} with entries <= {bound}; retrying with {larger}")
        if brute_force_congruent(A, B, larger):
            return True
        bound = larger
    return False
