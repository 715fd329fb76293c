"""Small exact matrices and the linear algebra the tilings need.

Determinants of order up to 3 are expanded directly and work over any of
the entry rings.  Larger determinants and ranks use fraction-free Bareiss
elimination, which stays inside the ring but requires exact division and is
therefore restricted to the integral domains (integers and polynomials).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import StructuralError, UnsupportedOperationError, ValidationError
from .rings import ModularRing, RingSpec, RingValue, divexact

MAX_BAREISS_DIM = 12


@dataclass(frozen=True)
class Matrix:
    """An immutable rows x cols matrix with entries from a single ring."""

    spec: RingSpec
    rows: int
    cols: int
    entries: tuple[RingValue, ...]

    @staticmethod
    def from_rows(spec: RingSpec, rows: Sequence[Sequence[RingValue]]) -> "Matrix":
        if not rows or not rows[0]:
            raise StructuralError("matrix needs at least one row and one column")
        width = len(rows[0])
        flat: list[RingValue] = []
        for row in rows:
            if len(row) != width:
                raise StructuralError("ragged rows")
            for v in row:
                if not isinstance(v, RingValue) or v.spec != spec:
                    raise StructuralError("entry does not belong to the matrix ring")
                flat.append(v)
        return Matrix(spec, len(rows), width, tuple(flat))

    @staticmethod
    def from_ints(spec: RingSpec, rows: Sequence[Sequence[int]]) -> "Matrix":
        return Matrix.from_rows(spec, [[spec.value(v) for v in row] for row in rows])

    def at(self, i: int, j: int) -> RingValue:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise StructuralError(f"index ({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[RingValue, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_int_rows(self) -> list[list[int]]:
        out = []
        for i in range(self.rows):
            row = []
            for j in range(self.cols):
                c = self.at(i, j).constant_value()
                if c is None:
                    raise StructuralError("matrix has non-constant entries")
                row.append(c)
            out.append(row)
        return out

    def __str__(self) -> str:
        cells = [[str(self.at(i, j)) for j in range(self.cols)] for i in range(self.rows)]
        widths = [max(len(cells[i][j]) for i in range(self.rows)) for j in range(self.cols)]
        lines = []
        for i in range(self.rows):
            lines.append("[" + "  ".join(cells[i][j].rjust(widths[j]) for j in range(self.cols)) + "]")
        return "\n".join(lines)


def det2(a: RingValue, b: RingValue, c: RingValue, d: RingValue) -> RingValue:
    return a * d - b * c


def det3(r: Sequence[Sequence[RingValue]]) -> RingValue:
    """Direct expansion of a 3x3 determinant given as three rows."""
    (a, b, c), (d, e, f), (g, h, i) = r
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def det(m: Matrix) -> RingValue:
    """Exact determinant.

    Orders 1 to 3 expand directly over any ring.  Orders 4 to 12 run
    fraction-free elimination and need an integral domain; residue rings and
    larger orders raise UnsupportedOperationError.
    """
    if m.rows != m.cols:
        raise StructuralError(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 1:
        return m.at(0, 0)
    if n == 2:
        return det2(m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1))
    if n == 3:
        return det3([m.row(0), m.row(1), m.row(2)])
    if isinstance(m.spec, ModularRing):
        raise UnsupportedOperationError(
            "determinants over residue rings are limited to order 3"
        )
    if n > MAX_BAREISS_DIM:
        raise UnsupportedOperationError(f"determinant order {n} exceeds limit {MAX_BAREISS_DIM}")
    return _bareiss_det(m)


def _bareiss_det(m: Matrix) -> RingValue:
    n = m.rows
    a = [[m.at(i, j) for j in range(n)] for i in range(n)]
    spec = m.spec
    sign = 1
    prev = spec.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot_row = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if pivot_row is None:
                return spec.zero()
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = divexact(num, prev)
            a[i][k] = spec.zero()
        prev = a[k][k]
    result = a[n - 1][n - 1]
    return result if sign == 1 else -result


def _term_count(v: RingValue) -> int:
    payload = v.payload
    return len(payload) if isinstance(payload, tuple) else 1


def bareiss_rank(m: Matrix) -> int:
    """Rank over the fraction field of an integral domain.

    Full pivoting: each step picks the first not-yet-used row/column position
    holding a nonzero entry with the fewest terms, scanning row-major.  The
    tie-break keeps pivots small (constants beat polynomials) and makes the
    elimination deterministic.
    """
    if isinstance(m.spec, ModularRing):
        raise UnsupportedOperationError("rank over residue rings is not supported")
    spec = m.spec
    a = [[m.at(i, j) for j in range(m.cols)] for i in range(m.rows)]
    live_rows = list(range(m.rows))
    live_cols = list(range(m.cols))
    prev = spec.one()
    rank = 0
    while live_rows and live_cols:
        best = None
        best_cost = None
        for ri, i in enumerate(live_rows):
            for ci, j in enumerate(live_cols):
                if a[i][j].is_zero():
                    continue
                cost = _term_count(a[i][j])
                if best_cost is None or cost < best_cost:
                    best, best_cost = (ri, ci), cost
            if best_cost == 1:
                break
        if best is None:
            break
        ri, ci = best
        pi = live_rows.pop(ri)
        pj = live_cols.pop(ci)
        pivot = a[pi][pj]
        for i in live_rows:
            for j in live_cols:
                num = pivot * a[i][j] - a[i][pj] * a[pi][j]
                a[i][j] = divexact(num, prev)
        prev = pivot
        rank += 1
    return rank


def corner_det3(center: RingValue, corners: Iterable[RingValue]) -> RingValue:
    """The 3x3 determinant of an adjacent window in terms of its center.

    Valid only when every edge-adjacent 2x2 minor inside the window equals 1;
    ``corners`` is the (NW, NE, SW, SE) quadruple.
    """
    a, c, g, i = corners
    return (a + c + g + i) + (c * g - a * i) * center


@dataclass(frozen=True)
class CongruenceSolutions:
    """Solution set of a linear congruence: base + step * k for 0 <= k < count."""

    modulus: int
    base: int
    step: int
    count: int

    @staticmethod
    def empty(modulus: int) -> "CongruenceSolutions":
        return CongruenceSolutions(modulus, 0, modulus, 0)

    def is_empty(self) -> bool:
        return self.count == 0

    def values(self) -> list[int]:
        return [self.base + self.step * k for k in range(self.count)]

    def __contains__(self, x: int) -> bool:
        if self.count == 0:
            return False
        return (x - self.base) % self.step == 0 and 0 <= x < self.modulus


def solve_linear_congruence(a: int, c: int, modulus: int) -> CongruenceSolutions:
    """All x in [0, modulus) with a*x = c (mod modulus)."""
    if modulus < 2:
        raise ValidationError(f"modulus must be at least 2, got {modulus}")
    a %= modulus
    c %= modulus
    g = gcd(a, modulus)
    if c % g != 0:
        return CongruenceSolutions.empty(modulus)
    step = modulus // g
    if a == 0:
        # Every residue solves 0 = 0; g == modulus here.
        return CongruenceSolutions(modulus, 0, 1, modulus)
    inv = pow((a // g) % step, -1, step)
    base = ((c // g) * inv) % step
    return CongruenceSolutions(modulus, base, step, g)
