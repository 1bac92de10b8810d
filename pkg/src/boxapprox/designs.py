"""Construction and certification of measurement designs.

The radius-k Hamming ball is the canonical design that determines every
vertex at order k with the fewest possible measurements, sum over i<=k of
C(n, i); its evaluation matrix, with one column per basis monomial's own
support vertex, is lower triangular with unit diagonal, which certifies
that no smaller design can do the job. Random designs use a documented
seeded generator so sampled results reproduce anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .approx import Design
from .core import EvaluationMatrix, Vertex, evaluation_matrix, make_basis
from .rng import SplitMix64


def ball_size(n: int, k: int) -> int:
    """Number of vertices with Hamming weight <= k."""
    if not 0 <= k <= n:
        raise ValueError(f"radius k={k} outside 0..{n}")
    return sum(comb(n, i) for i in range(k + 1))


def generic_size(n: int, k: int) -> int:
    """Points needed for a degree-k polynomial at points in general position."""
    if not 0 <= k <= n:
        raise ValueError(f"degree k={k} outside 0..{n}")
    return comb(n + k, k)


def hamming_ball(n: int, k: int) -> Design:
    """All vertices of weight <= k, ordered by weight then x1-first bitstrings."""
    if not 0 <= k <= n:
        raise ValueError(f"radius k={k} outside 0..{n}")
    vertices = []
    for d in range(k + 1):
        for idx in combinations(range(n), d):
            bits = 0
            for i in idx:
                bits |= 1 << (n - 1 - i)
            vertices.append(Vertex(n, bits))
    return Design(n, tuple(vertices))


def tightness_matrix(n: int, k: int) -> EvaluationMatrix:
    """Square evaluation matrix pairing each basis monomial with its own vertex.

    Row order is the canonical basis order; column j is the vertex whose
    support equals row j's monomial. The result is lower triangular with
    ones on the diagonal, hence of full rank sum(C(n, i) for i <= k).
    """
    basis = make_basis(n, k)
    columns = [m.vertex() for m in basis]
    return evaluation_matrix(basis, columns)


def sample_random_design(n: int, m: int, seed: int) -> Design:
    """m distinct vertices, uniform over all C(2^n, m) subsets.

    Sampling algorithm (fixed; reproduce it exactly to match output):
    draw the low n bits of consecutive SplitMix64 outputs seeded with
    `seed`, discarding repeats, until m distinct vertices accumulate.
    When m exceeds 2^(n-1) the complement subset of size 2^n - m is drawn
    instead and inverted, which preserves uniformity and keeps the number
    of draws bounded. Vertices are returned in canonical order.
    """
    if not 1 <= n <= 24:
        raise ValueError("uniform subset sampling supports 1 <= n <= 24")
    total = 1 << n
    if not 1 <= m <= total:
        raise ValueError(f"design size m={m} outside 1..2^{n}")

    take_complement = m > total - m
    goal = total - m if take_complement else m
    stream = SplitMix64(seed)
    chosen: set[int] = set()
    while len(chosen) < goal:
        chosen.add(stream.next_bits(n))
    if take_complement:
        chosen = {b for b in range(total) if b not in chosen}
    bits = sorted(chosen, key=lambda b: (b.bit_count(), -b))
    return Design(n, tuple(Vertex(n, b) for b in bits))


@dataclass(frozen=True)
class CountingRow:
    """Measurement counts at one dimension: Hamming ball vs general position."""

    n: int
    k: int
    ball_size: int
    generic_size: int


def counting_table(n_min: int, n_max: int, k: int) -> list[CountingRow]:
    """One row per dimension comparing ball and general-position point counts."""
    if n_min > n_max:
        raise ValueError(f"empty dimension range {n_min}..{n_max}")
    if not 0 <= k <= n_min:
        raise ValueError(f"degree k={k} must satisfy 0 <= k <= n_min={n_min}")
    return [
        CountingRow(n, k, ball_size(n, k), generic_size(n, k))
        for n in range(n_min, n_max + 1)
    ]
