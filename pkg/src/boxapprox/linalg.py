"""Exact rank and span computations over the rationals and over GF(2).

Rational computations run in fraction-free integer arithmetic (Bareiss
elimination for ranks, the Montante variant of Gauss-Jordan for solves),
so every intermediate value is an exact integer minor of the input and no
rounding can occur. GF(2) matrices are packed one row per Python integer.

Pivoting is deterministic everywhere: columns are scanned left to right
and within a column the first nonzero row from the top is taken. Repeated
runs on the same input therefore return identical coefficient lists.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .core import Vertex

Scalar = int | Fraction


def _integer_rows(rows: Sequence[Sequence[Scalar]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators. Rank-preserving."""
    out = []
    for row in rows:
        if all(isinstance(x, int) for x in row):
            out.append(list(row))
            continue
        fracs = [Fraction(x) for x in row]
        scale = 1
        for x in fracs:
            scale = scale * x.denominator // gcd(scale, x.denominator)
        out.append([int(x * scale) for x in fracs])
    return out


def rank_rational(rows: Sequence[Sequence[Scalar]]) -> int:
    """Exact rank over the rationals via fraction-free elimination."""
    m = _integer_rows(rows)
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    if any(len(r) != n_cols for r in m):
        raise ValueError("ragged matrix")
    rank = 0
    prev = 1
    for col in range(n_cols):
        piv = next((r for r in range(rank, n_rows) if m[r][col] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        top = m[rank]
        for r in range(rank + 1, n_rows):
            row = m[r]
            f = row[col]
            if f:
                for j in range(col, n_cols):
                    row[j] = (p * row[j] - f * top[j]) // prev
            elif p != prev:
                for j in range(col, n_cols):
                    row[j] = row[j] * p // prev
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def rank_gf2(rows: Sequence[int], ncols: int) -> int:
    """Rank over GF(2) of bit-packed rows; bit (ncols-1) is the leftmost column."""
    if ncols < 0:
        raise ValueError("ncols must be nonnegative")
    limit = 1 << ncols
    work = []
    for r in rows:
        if not 0 <= r < limit:
            raise ValueError(f"row {r!r} does not fit in {ncols} columns")
        work.append(r)
    rank = 0
    for col in range(ncols - 1, -1, -1):
        bit = 1 << col
        piv = next((i for i in range(rank, len(work)) if work[i] & bit), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        top = work[rank]
        for i in range(rank + 1, len(work)):
            if work[i] & bit:
                work[i] ^= top
        rank += 1
        if rank == len(work):
            break
    return rank


class SpanSolver:
    """Reusable exact solver for `sum_j a_j * column_j = target` questions.

    The column matrix is factored once with fraction-free Gauss-Jordan
    elimination; each subsequent target costs one replay of the recorded
    row operations. Solutions pick the earliest possible columns as pivots
    and set all free coefficients to zero, so they are canonical.
    """

    def __init__(self, columns: Sequence[Sequence[Scalar]]):
        if not columns:
            raise ValueError("at least one column is required")
        length = len(columns[0])
        if any(len(c) != length for c in columns):
            raise ValueError("columns must all have the same length")
        if length == 0:
            raise ValueError("columns must be nonempty vectors")
        self.length = length
        self.width = len(columns)

        # Row i of the working matrix collects entry i of every column,
        # scaled to integers; the same scale applies to targets later.
        self._row_scale: list[int] = []
        matrix: list[list[int]] = []
        for i in range(length):
            row = [c[i] for c in columns]
            if all(isinstance(x, int) for x in row):
                self._row_scale.append(1)
                matrix.append(row)
            else:
                fracs = [Fraction(x) for x in row]
                scale = 1
                for x in fracs:
                    scale = scale * x.denominator // gcd(scale, x.denominator)
                self._row_scale.append(scale)
                matrix.append([int(x * scale) for x in fracs])

        # Montante elimination: every non-pivot row is updated each step and
        # divided by the previous pivot; entries stay integer throughout.
        ops: list[tuple] = []
        pivots: list[tuple[int, int]] = []
        prev = 1
        for col in range(self.width):
            npiv = len(pivots)
            piv = next((r for r in range(npiv, length) if matrix[r][col] != 0), None)
            if piv is None:
                continue
            if piv != npiv:
                matrix[npiv], matrix[piv] = matrix[piv], matrix[npiv]
                ops.append(("swap", npiv, piv))
            p = matrix[npiv][col]
            top = matrix[npiv]
            mults = [matrix[i][col] for i in range(length)]
            ops.append(("elim", npiv, p, prev, mults))
            for i in range(length):
                if i == npiv:
                    continue
                row = matrix[i]
                f = mults[i]
                if f:
                    for j in range(col, self.width):
                        row[j] = (p * row[j] - f * top[j]) // prev
                elif p != prev:
                    for j in range(col, self.width):
                        row[j] = row[j] * p // prev
            prev = p
            pivots.append((npiv, col))
        self._ops = ops
        self._pivots = pivots
        self._last_pivot = prev
        self.rank = len(pivots)

    def _reduce_target(self, target: Sequence[Scalar]) -> tuple[list[int], int]:
        """Replay the recorded row operations on a target vector."""
        if len(target) != self.length:
            raise ValueError(f"target length {len(target)} != column length {self.length}")
        if all(isinstance(x, int) for x in target):
            scaled = [x * s for x, s in zip(target, self._row_scale)]
            denom = 1
        else:
            fracs = [Fraction(x) * s for x, s in zip(target, self._row_scale)]
            denom = 1
            for x in fracs:
                denom = denom * x.denominator // gcd(denom, x.denominator)
            scaled = [int(x * denom) for x in fracs]
        b = scaled
        n = self.length
        for op in self._ops:
            if op[0] == "swap":
                _, i, j = op
                b[i], b[j] = b[j], b[i]
            else:
                _, npiv, p, prev, mults = op
                bp = b[npiv]
                if bp:
                    for i in range(n):
                        if i == npiv:
                            continue
                        f = mults[i]
                        if f:
                            b[i] = (p * b[i] - f * bp) // prev
                        elif p != prev:
                            b[i] = b[i] * p // prev
                elif p != prev:
                    for i in range(n):
                        if i != npiv:
                            b[i] = b[i] * p // prev
        return b, denom

    def contains(self, target: Sequence[Scalar]) -> bool:
        """True iff target lies in the span of the columns."""
        b, _ = self._reduce_target(target)
        return all(b[i] == 0 for i in range(self.rank, self.length))

    def solve(self, target: Sequence[Scalar]) -> Optional[list[Fraction]]:
        """One exact coefficient list, or None when target is outside the span."""
        b, denom = self._reduce_target(target)
        if any(b[i] != 0 for i in range(self.rank, self.length)):
            return None
        d = self._last_pivot * denom
        coeffs = [Fraction(0)] * self.width
        for row, col in self._pivots:
            coeffs[col] = Fraction(b[row], d)
        return coeffs


def solve_in_span(
    columns: Sequence[Sequence[Scalar]], target: Sequence[Scalar]
) -> Optional[list[Fraction]]:
    """Express target as a rational combination of the columns, if possible."""
    return SpanSolver(columns).solve(target)


def affinely_independent(vertices: Sequence[Vertex], field: str = "rational") -> bool:
    """Whether the vertex set is affinely independent over Q or over GF(2).

    Decided as a rank condition: the vectors (1, v) for v in the set must
    be linearly independent over the chosen field.
    """
    if not vertices:
        raise ValueError("vertex set must be nonempty")
    n = vertices[0].n
    if any(v.n != n for v in vertices):
        raise ValueError("vertices must share one dimension")
    m = len(vertices)
    if field == "rational":
        rows = [[1, *v.coords()] for v in vertices]
        return rank_rational(rows) == m
    if field == "gf2":
        rows = [(1 << n) | v.bits for v in vertices]
        return rank_gf2(rows, n + 1) == m
    raise ValueError(f"unknown field {field!r}, expected 'rational' or 'gf2'")
