"""Deciding and computing vertex-value approximations from partial measurements.

A design is a set of measured vertices. A target vertex t is determinable
from a design S at order k when the values of every polynomial of degree
at most k on S force its value at t; over the square-free basis this is
exactly the condition that the degree-<=k evaluation vector of t lies in
the rational span of the evaluation vectors of S. Predictions are the
corresponding linear combinations of the measurements, computed exactly.

A second, recursive route exists for Hamming-ball designs: inside any
subcube the alternating sum of a low-degree polynomial over the vertices
vanishes, so the value at the one missing vertex is a signed sum of the
others. `complete_from_ball` fills the whole cube that way, one Hamming
level at a time, and must agree exactly with the linear-algebra route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional, Sequence

from .core import (
    FULL_ENUM_MAX_DIM,
    MonomialBasis,
    Vertex,
    all_vertices,
    canonical_sort_key,
    make_basis,
)
from .linalg import SpanSolver, rank_rational


class NotDeterminableError(Exception):
    """The requested vertex is not determined by the design at the given order."""


class BallMismatchError(ValueError):
    """Measured vertices are not exactly the required Hamming ball."""

    def __init__(self, missing: list[str], extra: list[str]):
        self.missing = missing
        self.extra = extra
        parts = []
        if missing:
            parts.append(f"missing {len(missing)} ball vertices: {', '.join(missing[:8])}"
                         + ("..." if len(missing) > 8 else ""))
        if extra:
            parts.append(f"{len(extra)} vertices outside the ball: {', '.join(extra[:8])}"
                         + ("..." if len(extra) > 8 else ""))
        super().__init__("; ".join(parts) or "ball mismatch")


@dataclass(frozen=True)
class Design:
    """Distinct measured vertices, optionally with their exact values."""

    n: int
    vertices: tuple[Vertex, ...]
    values: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("a design must contain at least one vertex")
        for v in self.vertices:
            if v.n != self.n:
                raise ValueError(f"vertex {v} has dimension {v.n}, expected {self.n}")
        if len({v.bits for v in self.vertices}) != len(self.vertices):
            raise ValueError("design vertices must be distinct")
        if self.values is not None:
            vals = tuple(Fraction(x) for x in self.values)
            if len(vals) != len(self.vertices):
                raise ValueError(
                    f"{len(vals)} values for {len(self.vertices)} vertices"
                )
            object.__setattr__(self, "values", vals)

    @classmethod
    def from_bitstrings(
        cls, bitstrings: Sequence[str], values: Optional[Sequence[Fraction | int | str]] = None
    ) -> "Design":
        vertices = tuple(Vertex.from_bitstring(s) for s in bitstrings)
        if not vertices:
            raise ValueError("a design must contain at least one vertex")
        vals = tuple(Fraction(x) for x in values) if values is not None else None
        return cls(vertices[0].n, vertices, vals)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def with_values(self, values: Sequence[Fraction | int | str]) -> "Design":
        return Design(self.n, self.vertices, tuple(Fraction(x) for x in values))

    def value_map(self) -> dict[Vertex, Fraction]:
        if self.values is None:
            raise ValueError("design carries no measured values")
        return dict(zip(self.vertices, self.values))

    def __contains__(self, v: Vertex) -> bool:
        return any(v == u for u in self.vertices)


def _evaluation_columns(basis: MonomialBasis, vertices: Sequence[Vertex]) -> list[list[int]]:
    supports = [m.support for m in basis]
    return [[1 if (s & v.bits) == s else 0 for s in supports] for v in vertices]


def _target_column(basis: MonomialBasis, t: Vertex) -> list[int]:
    return [1 if (m.support & t.bits) == m.support else 0 for m in basis]


def _check_target(design: Design, t: Vertex, k: int) -> None:
    if t.n != design.n:
        raise ValueError(f"target dimension {t.n} != design dimension {design.n}")
    if not 0 <= k <= design.n:
        raise ValueError(f"order k={k} outside 0..{design.n}")


def determinable(design: Design, t: Vertex, k: int) -> bool:
    """Whether values of any degree-<=k polynomial on the design fix its value at t."""
    _check_target(design, t, k)
    basis = make_basis(design.n, k)
    solver = SpanSolver(_evaluation_columns(basis, design.vertices))
    return solver.contains(_target_column(basis, t))


def degree_of_approximation(design: Design, t: Vertex) -> int:
    """The largest k in [0, n] at which t is determinable from the design.

    Well-defined because determinability is downward closed in k. Membership
    in the design is the only way to reach k = n, since the full square-free
    basis separates all 2^n vertices.
    """
    if t.n != design.n:
        raise ValueError(f"target dimension {t.n} != design dimension {design.n}")
    n = design.n
    if t in design:
        return n
    k = 0
    while k + 1 < n and determinable(design, t, k + 1):
        k += 1
    return k


def approximate_value(design: Design, t: Vertex, k: int) -> Fraction:
    """Predict the value at t from measured values, exactly, at order k.

    The prediction is sum(a_i * f(v_i)) for the canonical coefficients that
    express t's evaluation vector through the design's. It equals the true
    value whenever the measurements come from a polynomial of degree <= k.
    """
    _check_target(design, t, k)
    if design.values is None:
        raise ValueError("design carries no measured values")
    basis = make_basis(design.n, k)
    solver = SpanSolver(_evaluation_columns(basis, design.vertices))
    coeffs = solver.solve(_target_column(basis, t))
    if coeffs is None:
        raise NotDeterminableError(f"vertex {t} is not determinable at order {k}")
    total = Fraction(0)
    for a, f in zip(coeffs, design.values):
        if a:
            total += a * f
    return total


def prediction_coefficients(
    design: Design, k: int
) -> dict[Vertex, Optional[list[Fraction]]]:
    """Canonical combination coefficients for every vertex of the cube.

    One matrix factorization is shared across all 2^n targets; each entry is
    exactly the coefficient list solve_in_span would return for that target
    alone, or None where the target is outside the span. Coefficients do not
    depend on measured values, so one table serves any number of value sets.
    """
    if not 0 <= k <= design.n:
        raise ValueError(f"order k={k} outside 0..{design.n}")
    basis = make_basis(design.n, k)
    solver = SpanSolver(_evaluation_columns(basis, design.vertices))
    return {
        t: solver.solve(_target_column(basis, t)) for t in all_vertices(design.n)
    }


def approximate_all(design: Design, k: int) -> dict[Vertex, Optional[Fraction]]:
    """Predictions for every vertex of the cube, None where not determinable.

    Equal to calling approximate_value per vertex, with the factorization
    shared. The output is in canonical vertex order.
    """
    if design.values is None:
        raise ValueError("design carries no measured values")
    out: dict[Vertex, Optional[Fraction]] = {}
    for t, coeffs in prediction_coefficients(design, k).items():
        if coeffs is None:
            out[t] = None
        else:
            total = Fraction(0)
            for a, f in zip(coeffs, design.values):
                if a:
                    total += a * f
            out[t] = total
    return out


def covers_all(design: Design, k: int) -> bool:
    """Whether the design determines every vertex of the cube at order k.

    Equivalent to the degree-<=k evaluation matrix of the design having
    full row rank, i.e. rank equal to sum over i<=k of C(n, i).
    """
    if not 0 <= k <= design.n:
        raise ValueError(f"order k={k} outside 0..{design.n}")
    basis = make_basis(design.n, k)
    supports = [m.support for m in basis]
    rows = [[1 if (s & v.bits) == s else 0 for v in design.vertices] for s in supports]
    return rank_rational(rows) == len(basis)


def lemma_reconstruct(values: Mapping[Vertex, Fraction | int], w: Vertex) -> Fraction:
    """Value at the missing subcube vertex forced by the alternating-sum identity.

    `values` must cover a d-dimensional subcube except for w. Within that
    subcube the even-distance and odd-distance value sums (distance taken
    from the subcube's minimal vertex) are equal for any polynomial of
    degree below d, which solves for the missing value as a signed sum.
    """
    if not values:
        raise ValueError("need values on the rest of the subcube")
    n = w.n
    for v in values:
        if v.n != n:
            raise ValueError(f"vertex {v} has dimension {v.n}, expected {n}")
    if w in values:
        raise ValueError(f"vertex {w} already has a value")

    masks = [v.bits for v in values] + [w.bits]
    lo = masks[0]
    hi = masks[0]
    for b in masks[1:]:
        lo &= b
        hi |= b
    free = hi ^ lo
    d = free.bit_count()
    # the masks are distinct and each satisfies lo <= b <= hi by construction;
    # that box holds exactly 2^d vertices, so the count alone pins the subcube
    if len(masks) != (1 << d):
        raise ValueError(
            f"{len(masks) - 1} values do not cover a subcube minus one vertex"
        )

    w_parity = (w.bits ^ lo).bit_count() & 1
    total = Fraction(0)
    for v, fv in values.items():
        parity = (v.bits ^ lo).bit_count() & 1
        if parity == w_parity:
            total -= fv
        else:
            total += fv
    return total


def complete_from_ball(
    values: Mapping[Vertex, Fraction | int], n: int, k: int
) -> dict[Vertex, Fraction]:
    """Extend values on the radius-k Hamming ball to the whole cube.

    Vertices are processed by increasing Hamming weight from k+1 to n; each
    vertex v is reconstructed inside the subcube spanned by its support over
    the zero vertex, whose other vertices are already valued. Exact whenever
    the inputs come from a polynomial of degree at most k. The result maps
    every vertex of the cube in canonical order.
    """
    if not 0 <= k <= n:
        raise ValueError(f"radius k={k} outside 0..{n}")
    if n > FULL_ENUM_MAX_DIM:
        raise ValueError(f"full-cube completion is capped at n={FULL_ENUM_MAX_DIM}")
    expected = set()
    for d in range(k + 1):
        for idx in combinations(range(n), d):
            m = 0
            for i in idx:
                m |= 1 << (n - 1 - i)
            expected.add(m)
    got = {}
    for v, fv in values.items():
        if v.n != n:
            raise ValueError(f"vertex {v} has dimension {v.n}, expected {n}")
        got[v.bits] = Fraction(fv)
    if set(got) != expected:
        missing = sorted(expected - set(got))
        extra = sorted(set(got) - expected)
        fmt = f"0{n}b"
        raise BallMismatchError(
            [format(b, fmt) for b in missing], [format(b, fmt) for b in extra]
        )

    filled = dict(got)
    by_weight: dict[int, list[int]] = {}
    for b in range(1 << n):
        by_weight.setdefault(b.bit_count(), []).append(b)
    for weight in range(k + 1, n + 1):
        for mask in by_weight.get(weight, []):
            w_parity = weight & 1
            total = Fraction(0)
            sub = (mask - 1) & mask
            while True:
                if (sub.bit_count() & 1) == w_parity:
                    total -= filled[sub]
                else:
                    total += filled[sub]
                if sub == 0:
                    break
                sub = (sub - 1) & mask
            filled[mask] = total

    out_vertices = sorted((Vertex(n, b) for b in filled), key=canonical_sort_key)
    return {v: filled[v.bits] for v in out_vertices}
