"""Arithmetic and classification of N-th roots of unity.

Roots are residues k mod N, never floating-point angles: primitivity,
conjugation, and ordering are exact integer computations, which keeps all
indexing of generators, extension classes, and Eisenstein symbols drift-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True, order=True)
class Root:
    """The root of unity exp(2*pi*i*k/N), stored as the residue k mod N."""

    k: int
    level: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError(f"level must be >= 1, got {self.level}")
        # Normalize so 0 <= k < N holds after any construction.
        object.__setattr__(self, "k", self.k % self.level)

    @property
    def N(self) -> int:
        return self.level

    def conj(self) -> "Root":
        return Root(-self.k, self.level)

    def mul(self, other: "Root") -> "Root":
        if other.level != self.level:
            raise ValueError("level mismatch")
        return Root(self.k + other.k, self.level)

    def pow(self, e: int) -> "Root":
        return Root(self.k * e, self.level)

    @property
    def is_unit(self) -> bool:
        return self.k == 0

    @property
    def is_self_conjugate(self) -> bool:
        """True for k=0 and, at even level, k=N/2."""
        return self.k == (-self.k) % self.level

    @property
    def order(self) -> int:
        return self.level // gcd(self.k, self.level)

    @property
    def is_primitive(self) -> bool:
        return gcd(self.k, self.level) == 1

    @property
    def upper_half(self) -> bool:
        """Strictly positive imaginary part: 0 < k < N/2."""
        return 0 < 2 * self.k < self.level

    def label(self) -> str:
        return f"k={self.k}"


def classify(r: Root) -> dict:
    """Primitivity, multiplicative order, and half-plane of a root."""
    return {
        "is_primitive": r.is_primitive,
        "order": r.order,
        "upper_half": r.upper_half,
    }


def all_roots(N: int) -> list[Root]:
    return [Root(k, N) for k in range(N)]


def pair_representatives(N: int) -> list[tuple[Root, bool]]:
    """One representative per conjugation orbit of mu_N, smaller residue first.

    Returns (root, is_self_conjugate) pairs in ascending residue order;
    self-conjugate roots (k=0, and k=N/2 for even N) appear once, flagged.
    """
    reps = []
    for k in range(N):
        r = Root(k, N)
        if k <= (-k) % N:
            reps.append((r, r.is_self_conjugate))
    return reps


def conj_representative(r: Root) -> Root:
    """The canonical representative (smaller residue) of {r, conj(r)}."""
    return min(r, r.conj(), key=lambda s: s.k)


def primitive_upper_half(N: int) -> list[Root]:
    """The roots indexing the canonical extension-class basis.

    For N >= 3 these are the primitive roots with positive imaginary part
    (phi(N)/2 of them). The degenerate levels keep one representative each:
    k=0 at N=1 and k=1 at N=2.
    """
    if N == 1:
        return [Root(0, 1)]
    if N == 2:
        return [Root(1, 2)]
    return [r for r in all_roots(N) if r.is_primitive and r.upper_half]
