"""Probabilities that random vertex sets support first-order approximation.

A set of n+1 vertices determines every vertex of the cube at order 1
exactly when it is affinely independent. Over GF(2) the probability has
the closed form

    2^n * (2^n - 1)(2^n - 2)(2^n - 4)...(2^n - 2^(n-1))
    ---------------------------------------------------
    2^n * (2^n - 1)(2^n - 2)(2^n - 3)...(2^n - n)

which decreases monotonically to the q-Pochhammer constant
(1/2; 1/2)_inf ~ 0.288. GF(2) independence implies rational independence,
so this is a lower bound for the rational-field probability; the rational
probability itself is computed exactly by enumerating all subsets for
small n and estimated by seeded Monte-Carlo above that.

The Monte-Carlo path decides rational affine independence of each sampled
(n+1)-set through modular elimination: the defining determinant has
absolute value at most (n+1)^((n+1)/2) by Hadamard's bound, so checking
it modulo one or two 31-bit primes whose product exceeds the bound is an
exact zero test, never a heuristic. Trials are seeded individually from
the master seed, so results are independent of batching and worker count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import sqrt
from typing import Optional

import numpy as np

from .core import Vertex
from .linalg import rank_gf2, rank_rational
from .rng import GOLDEN, MASK64, SplitMix64, trial_seed

EXHAUSTIVE_MAX_N = 5
MC_MAX_N = 24

_P1 = 2147483647
_P2 = 2147483629

METHOD_F2 = "exact_f2"
METHOD_EXHAUSTIVE = "exhaustive_real"
METHOD_MC = "monte_carlo"


@dataclass(frozen=True)
class ProbabilityEstimate:
    """A probability value plus how it was obtained."""

    n: int
    method: str
    value: Fraction | float
    trials: Optional[int] = None
    std_error: Optional[float] = None
    seed: Optional[int] = None


@dataclass(frozen=True)
class QPochhammerValue:
    """Exact partial product prod_{m=1..terms} (1 - 2^-m)."""

    terms: int
    value: Fraction


def prob_f2_exact(n: int) -> Fraction:
    """Probability that n+1 random distinct vertices are affinely independent over GF(2)."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    q = 1 << n
    num = q
    for i in range(n):
        num *= q - (1 << i)
    den = 1
    for m in range(n + 1):
        den *= q - m
    return Fraction(num, den)


def qpochhammer_half(terms: int) -> QPochhammerValue:
    """Partial q-Pochhammer product at q = 1/2, exact."""
    if terms < 1:
        raise ValueError("need at least one product term")
    value = Fraction(1)
    for m in range(1, terms + 1):
        value *= Fraction((1 << m) - 1, 1 << m)
    return QPochhammerValue(terms, value)


def _affine_rows(bits_list: list[int], n: int) -> list[list[int]]:
    return [
        [1] + [(b >> (n - 1 - i)) & 1 for i in range(n)] for b in bits_list
    ]


def prob_real_exhaustive(n: int) -> Fraction:
    """Exact rational-field probability by inspecting every (n+1)-subset.

    Enumerates all C(2^n, n+1) subsets and tests each with an exact rank
    computation, so the runtime grows steeply; n=5 means 906192 rank tests
    and takes a few minutes.
    """
    if not 1 <= n <= EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive enumeration supports 1 <= n <= {EXHAUSTIVE_MAX_N}")
    m = n + 1
    hits = 0
    total = 0
    for subset in combinations(range(1 << n), m):
        total += 1
        if rank_rational(_affine_rows(list(subset), n)) == m:
            hits += 1
    return Fraction(hits, total)


def _sample_bits_python(n: int, m: int, seed: int) -> list[int]:
    """The sampling loop of sample_random_design, returning raw vertex masks."""
    total = 1 << n
    take_complement = m > total - m
    goal = total - m if take_complement else m
    stream = SplitMix64(seed)
    chosen: set[int] = set()
    while len(chosen) < goal:
        chosen.add(stream.next_bits(n))
    if take_complement:
        chosen = {b for b in range(total) if b not in chosen}
    return sorted(chosen)


def _mc_flags_python(n: int, trials: int, seed: int) -> list[bool]:
    """Per-trial affine-independence flags via the exact integer rank path."""
    m = n + 1
    flags = []
    for i in range(trials):
        bits = _sample_bits_python(n, m, trial_seed(seed, i))
        flags.append(rank_rational(_affine_rows(bits, n)) == m)
    return flags


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def _sample_bits_numpy(n: int, m: int, seeds: np.ndarray) -> np.ndarray:
    """Batched replica of the sequential sampling loop; one row per trial."""
    t = len(seeds)
    states = seeds.copy()
    chosen = np.zeros((t, m), dtype=np.uint64)
    count = np.zeros(t, dtype=np.int64)
    vmask = np.uint64((1 << n) - 1)
    slot = np.arange(m, dtype=np.int64)
    pending = np.arange(t)
    while pending.size:
        states[pending] += np.uint64(GOLDEN)
        v = _mix64_np(states[pending]) & vmask
        dup = (chosen[pending] == v[:, None]) & (slot[None, :] < count[pending, None])
        fresh = ~dup.any(axis=1)
        hit = pending[fresh]
        chosen[hit, count[hit]] = v[fresh]
        count[hit] += 1
        pending = pending[count[pending] < m]
    return chosen


def _nonzero_det_modp(mats: np.ndarray, p: int) -> np.ndarray:
    """Per-matrix test det != 0 (mod p) by elimination without divisions."""
    a = (mats % p).astype(np.int64)
    t, m, _ = a.shape
    singular = np.zeros(t, dtype=bool)
    idx = np.arange(t)
    for k in range(m):
        col = a[:, k:, k]
        nz = col != 0
        singular |= ~nz.any(axis=1)
        prow = k + nz.argmax(axis=1)
        swap = a[idx, prow, :].copy()
        a[idx, prow, :] = a[idx, k, :]
        a[idx, k, :] = swap
        piv = a[:, k, k].copy()
        piv[piv == 0] = 1
        if k + 1 < m:
            f = a[:, k + 1 :, k]
            block = a[:, k + 1 :, k:]
            # row_i <- piv * row_i - f_i * pivot_row. Entries sit in [0, p) with
            # p < 2^31.5, so each product is below p^2 < 2^63 and the difference
            # fits int64 exactly; one final reduction restores [0, p).
            a[:, k + 1 :, k:] = (
                block * piv[:, None, None] - f[:, :, None] * a[:, None, k, k:]
            ) % p
    return ~singular


def _rational_affine_indep_numpy(vbits: np.ndarray, n: int) -> np.ndarray:
    """Exact rational affine-independence flags for batched vertex sets.

    Certification: |det| <= (n+1)^((n+1)/2) < P1 for n <= 14, so one prime
    decides; otherwise a zero residue is retested mod P2, and P1*P2 exceeds
    the bound for every n up to 24.
    """
    t, m = vbits.shape
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint64)
    coords = ((vbits[:, :, None] >> shifts[None, None, :]) & np.uint64(1)).astype(np.int64)
    mats = np.concatenate([np.ones((t, m, 1), dtype=np.int64), coords], axis=2)
    flags = _nonzero_det_modp(mats, _P1)
    if m**m >= _P1 * _P1:
        if m**m >= (_P1 * _P2) ** 2:
            raise ValueError("dimension too large for two-prime certification")
        sus = np.flatnonzero(~flags)
        if sus.size:
            flags[sus[_nonzero_det_modp(mats[sus], _P2)]] = True
    return flags


def _mc_flags_numpy(n: int, trials: int, seed: int, chunk: int = 100_000) -> np.ndarray:
    m = n + 1
    out = np.zeros(trials, dtype=bool)
    for start in range(0, trials, chunk):
        stop = min(start + chunk, trials)
        idx = np.arange(start + 1, stop + 1, dtype=np.uint64)
        seeds = _mix64_np((np.uint64(seed & MASK64) + idx * np.uint64(GOLDEN)))
        vbits = _sample_bits_numpy(n, m, seeds)
        out[start:stop] = _rational_affine_indep_numpy(vbits, n)
    return out


def prob_real_montecarlo(
    n: int, trials: int, seed: int, engine: str = "auto"
) -> ProbabilityEstimate:
    """Monte-Carlo estimate of the rational-field probability.

    Trial i samples n+1 distinct vertices with the design sampler seeded by
    trial_seed(seed, i) and tests exact rational affine independence. The
    estimate is fully determined by (n, trials, seed); the numpy and pure
    Python engines return identical per-trial decisions.
    """
    if not 1 <= n <= MC_MAX_N:
        raise ValueError(f"Monte-Carlo supports 1 <= n <= {MC_MAX_N}")
    if trials < 1:
        raise ValueError("need at least one trial")
    m = n + 1
    if engine == "auto":
        engine = "numpy" if m <= (1 << n) - m else "python"
    if engine == "numpy":
        if m > (1 << n) - m:
            raise ValueError("numpy engine does not cover complement sampling; use engine='python'")
        hits = int(_mc_flags_numpy(n, trials, seed).sum())
    elif engine == "python":
        hits = sum(_mc_flags_python(n, trials, seed))
    else:
        raise ValueError(f"unknown engine {engine!r}")
    p_hat = hits / trials
    std_error = sqrt(p_hat * (1.0 - p_hat) / trials)
    return ProbabilityEstimate(
        n=n,
        method=METHOD_MC,
        value=p_hat,
        trials=trials,
        std_error=std_error,
        seed=seed,
    )


def f2_implies_real_check(
    n: int, mode: str, budget: Optional[int] = None, seed: Optional[int] = None
) -> int:
    """Count (n+1)-subsets that are GF(2)-independent yet rationally dependent.

    The count is always expected to be zero: a GF(2)-independent vertex set
    is rationally independent. Exhaustive mode enumerates every subset and
    is limited to n <= 4; sampled mode draws `budget` random subsets.
    """
    if mode == "exhaustive":
        if not 1 <= n <= 4:
            raise ValueError("exhaustive mode supports 1 <= n <= 4")
        m = n + 1
        bad = 0
        for subset in combinations(range(1 << n), m):
            packed = [(1 << n) | b for b in subset]
            if rank_gf2(packed, n + 1) != m:
                continue
            if rank_rational(_affine_rows(list(subset), n)) != m:
                bad += 1
        return bad
    if mode == "sampled":
        if budget is None or budget < 1:
            raise ValueError("sampled mode needs a positive budget")
        if not 1 <= n <= MC_MAX_N:
            raise ValueError(f"sampled mode supports 1 <= n <= {MC_MAX_N}")
        if seed is None:
            seed = 0
        m = n + 1
        bad = 0
        for i in range(budget):
            bits = _sample_bits_python(n, m, trial_seed(seed, i))
            packed = [(1 << n) | b for b in bits]
            if rank_gf2(packed, n + 1) != m:
                continue
            if rank_rational(_affine_rows(bits, n)) != m:
                bad += 1
        return bad
    raise ValueError(f"unknown mode {mode!r}, expected 'exhaustive' or 'sampled'")


def _vertices_of(bits_list: list[int], n: int) -> list[Vertex]:
    return [Vertex(n, b) for b in bits_list]


def exhaustive_dependent_subsets(n: int) -> list[tuple[Vertex, ...]]:
    """Every rationally dependent (n+1)-subset, for small n; used for audits."""
    if not 1 <= n <= 4:
        raise ValueError("subset audit supports 1 <= n <= 4")
    m = n + 1
    out = []
    for subset in combinations(range(1 << n), m):
        rows = _affine_rows(list(subset), n)
        if rank_rational(rows) != m:
            out.append(tuple(_vertices_of(list(subset), n)))
    return out


__all__ = [
    "ProbabilityEstimate",
    "QPochhammerValue",
    "prob_f2_exact",
    "qpochhammer_half",
    "prob_real_exhaustive",
    "prob_real_montecarlo",
    "f2_implies_real_check",
    "exhaustive_dependent_subsets",
    "METHOD_F2",
    "METHOD_EXHAUSTIVE",
    "METHOD_MC",
    "EXHAUSTIVE_MAX_N",
    "MC_MAX_N",
]
