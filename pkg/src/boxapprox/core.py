"""Vertices, square-free monomials, and evaluation matrices on the 0/1 hypercube.

Vertices of the n-cube and square-free monomials in n variables are both
bit-vectors of length n. Coordinate x1 is the leftmost character of the
bitstring form and the most significant bit of the packed integer, so
"1100" with n=4 means x1=1, x2=1, x3=0, x4=0. A square-free monomial
evaluates to 1 at a vertex exactly when its support is contained in the
vertex support, which keeps every evaluation a single word operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

MAX_DIM = 64
FULL_ENUM_MAX_DIM = 24


def _check_dim(n: int) -> None:
    if not isinstance(n, int) or n < 1 or n > MAX_DIM:
        raise ValueError(f"dimension must be an integer in [1, {MAX_DIM}], got {n!r}")


@dataclass(frozen=True)
class Vertex:
    """A point of {0,1}^n packed into an integer, x1 at the most significant bit."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        _check_dim(self.n)
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bits {self.bits!r} out of range for dimension {self.n}")

    @classmethod
    def from_bitstring(cls, text: str) -> "Vertex":
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"bitstring must be a nonempty run of 0/1 characters, got {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "Vertex":
        bits = 0
        for c in coords:
            if c not in (0, 1):
                raise ValueError(f"coordinates must be 0 or 1, got {c!r}")
            bits = (bits << 1) | c
        return cls(len(coords), bits)

    def bitstring(self) -> str:
        return format(self.bits, f"0{self.n}b")

    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> (self.n - 1 - i)) & 1 for i in range(self.n))

    def weight(self) -> int:
        return self.bits.bit_count()

    def __str__(self) -> str:
        return self.bitstring()


def hamming_weight(v: Vertex) -> int:
    """Number of 1-coordinates of a vertex."""
    return v.bits.bit_count()


@dataclass(frozen=True)
class Monomial:
    """A square-free monomial, identified with the set of variables it contains.

    The empty support is the constant monomial 1. Variable numbering is
    1-based to match the x1..xn naming; x_i occupies bit (n - i).
    """

    n: int
    support: int

    def __post_init__(self) -> None:
        _check_dim(self.n)
        if not 0 <= self.support < (1 << self.n):
            raise ValueError(f"support {self.support!r} out of range for dimension {self.n}")

    @classmethod
    def from_vars(cls, n: int, variables: Iterable[int]) -> "Monomial":
        support = 0
        for i in variables:
            if not 1 <= i <= n:
                raise ValueError(f"variable index {i} outside 1..{n}")
            support |= 1 << (n - i)
        return cls(n, support)

    def degree(self) -> int:
        return self.support.bit_count()

    def variables(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if self.support >> (self.n - i) & 1)

    def vertex(self) -> Vertex:
        """The vertex whose support equals this monomial's support."""
        return Vertex(self.n, self.support)

    def __str__(self) -> str:
        if self.support == 0:
            return "1"
        return "*".join(f"x{i}" for i in self.variables())


def eval_monomial(m: Monomial, v: Vertex) -> int:
    """1 if every variable of m is set in v, else 0."""
    if m.n != v.n:
        raise ValueError(f"dimension mismatch: monomial n={m.n}, vertex n={v.n}")
    return 1 if (m.support & v.bits) == m.support else 0


@dataclass(frozen=True)
class MonomialBasis:
    """All square-free monomials of degree at most k, in the canonical order.

    Order: decreasing degree, then within a degree the support bitstrings
    in the order that puts a monomial containing x1 before one that does
    not (descending as packed integers). For n=3, k=2 this reads
    x1*x2, x1*x3, x2*x3, x1, x2, x3, 1.
    """

    n: int
    k: int
    monomials: tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.monomials)

    def __getitem__(self, i: int) -> Monomial:
        return self.monomials[i]


def make_basis(n: int, k: int) -> MonomialBasis:
    """Ordered basis of square-free monomials of degree <= k in n variables."""
    _check_dim(n)
    if not 0 <= k <= n:
        raise ValueError(f"degree bound k={k} outside 0..{n}")
    monomials = []
    for d in range(k, -1, -1):
        # combinations() emits index tuples in increasing order, which maps to
        # decreasing packed supports under the x1-at-MSB convention.
        for idx in combinations(range(n), d):
            support = 0
            for i in idx:
                support |= 1 << (n - 1 - i)
            monomials.append(Monomial(n, support))
    return MonomialBasis(n, k, tuple(monomials))


@dataclass(frozen=True)
class MultilinearPolynomial:
    """A rational linear combination of square-free monomials."""

    n: int
    terms: Mapping[Monomial, Fraction]

    def __post_init__(self) -> None:
        _check_dim(self.n)
        cleaned: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            if mono.n != self.n:
                raise ValueError(f"term {mono} has dimension {mono.n}, expected {self.n}")
            c = Fraction(coeff)
            if c != 0:
                cleaned[mono] = c
        object.__setattr__(self, "terms", cleaned)

    def degree(self) -> int:
        return max((m.degree() for m in self.terms), default=0)

    def __bool__(self) -> bool:
        return bool(self.terms)


def eval_polynomial(p: MultilinearPolynomial, v: Vertex) -> Fraction:
    """Sum of coefficients over the terms whose support is contained in v."""
    if p.n != v.n:
        raise ValueError(f"dimension mismatch: polynomial n={p.n}, vertex n={v.n}")
    total = Fraction(0)
    bits = v.bits
    for mono, coeff in p.terms.items():
        if (mono.support & bits) == mono.support:
            total += coeff
    return total


def reduce_multilinear(
    terms: Iterable[tuple[Sequence[int], Fraction | int]], n: int
) -> MultilinearPolynomial:
    """Reduce arbitrary-exponent terms to the square-free basis.

    Each term is (exponents, coefficient) with one nonnegative exponent per
    variable. On 0/1 coordinates x^e equals x for every e >= 1, so exponents
    clamp to at most one and like terms merge. The result takes the same
    value as the input at every vertex.
    """
    _check_dim(n)
    merged: dict[int, Fraction] = {}
    for exponents, coeff in terms:
        if len(exponents) != n:
            raise ValueError(f"expected {n} exponents, got {len(exponents)}")
        support = 0
        for i, e in enumerate(exponents):
            if e < 0:
                raise ValueError(f"negative exponent {e} for variable x{i + 1}")
            if e > 0:
                support |= 1 << (n - 1 - i)
        merged[support] = merged.get(support, Fraction(0)) + Fraction(coeff)
    return MultilinearPolynomial(
        n, {Monomial(n, s): c for s, c in merged.items() if c != 0}
    )


@dataclass(frozen=True)
class EvaluationMatrix:
    """0/1 matrix with entry[i][j] = (basis monomial i evaluated at vertex j)."""

    basis: MonomialBasis
    vertices: tuple[Vertex, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.basis), len(self.vertices))


def evaluation_matrix(basis: MonomialBasis, vertices: Sequence[Vertex]) -> EvaluationMatrix:
    """Evaluate every basis monomial at every vertex, columns in input order."""
    if not vertices:
        raise ValueError("at least one vertex is required")
    for v in vertices:
        if v.n != basis.n:
            raise ValueError(f"dimension mismatch: basis n={basis.n}, vertex n={v.n}")
    rows = tuple(
        tuple(1 if (m.support & v.bits) == m.support else 0 for v in vertices)
        for m in basis
    )
    return EvaluationMatrix(basis, tuple(vertices), rows)


def canonical_sort_key(v: Vertex) -> tuple[int, int]:
    """Sort key: increasing Hamming weight, then x1-first bitstring order."""
    return (v.bits.bit_count(), -v.bits)


def all_vertices(n: int) -> list[Vertex]:
    """Every vertex of the n-cube in canonical order (weight, then x1-first)."""
    _check_dim(n)
    if n > FULL_ENUM_MAX_DIM:
        raise ValueError(f"full-cube enumeration is capped at n={FULL_ENUM_MAX_DIM}")
    out = [Vertex(n, b) for b in range(1 << n)]
    out.sort(key=canonical_sort_key)
    return out
