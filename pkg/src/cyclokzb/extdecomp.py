"""Extension classes of weight m at level N: distribution relations, the
primitive basis, and the Galois heads acting on it.

The classes of Li_m at N-th roots of unity span a Q-vector space cut out by
the distribution relations (one block per prime dividing N) together with
conjugation symmetry. Row-reducing with a pivot order that eliminates
non-primitive and lower-half residues first leaves the primitive upper-half
classes as the free basis; every head coefficient is read off from that
reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ContractViolation
from .linalg import solve_pivots
from .polyquot import InnerDer, eps_op
from .roots import Root, all_roots, conj_representative, pair_representatives, primitive_upper_half


def _prime_factors(N: int) -> list[int]:
    out, p, n = [], 2, N
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def ext_dim_formula(N: int, m: int) -> int:
    """Closed-form dimension of the weight-m extension space, m >= 2."""
    if m < 2:
        raise ValueError("m must be >= 2")
    if N <= 2:
        return 1 if m % 2 else 0
    return _phi(N) // 2


def _phi(N: int) -> int:
    out = N
    for p in _prime_factors(N):
        out -= out // p
    return out


# -- the relation system ----------------------------------------------------


def relation_matrix(N: int, m: int) -> list[list[Fraction]]:
    """Rows over x_0..x_{N-1}: distribution rows for each prime l | N and
    offset b, then conjugation rows x_{N-j} - (-1)^(m+1) x_j."""
    if m < 2:
        raise ValueError("m must be >= 2")
    rows = []
    for l in _prime_factors(N):
        step = N // l
        for b in range(step):
            row = [Fraction(0)] * N
            for t in range(l):
                row[b + t * step] += l ** (m - 1)
            row[(b * l) % N] -= 1
            rows.append(row)
    sign = (-1) ** (m + 1)
    for j in range(N):
        row = [Fraction(0)] * N
        row[(N - j) % N] += 1
        row[j] -= sign
        rows.append(row)
    return rows


def _col_order(N: int) -> list[int]:
    basis = {r.k for r in primitive_upper_half(N)}
    nonprim = [k for k in range(N) if not Root(k, N).is_primitive]
    lower = [k for k in range(N) if Root(k, N).is_primitive and k not in basis]
    return nonprim + lower + sorted(basis)


@lru_cache(maxsize=None)
def _solved(N: int, m: int):
    """(pivot expressions, free columns) of the relation system, with the
    free set checked against the closed-form dimension and the basis."""
    exprs, free = solve_pivots(relation_matrix(N, m), _col_order(N))
    dim = ext_dim_formula(N, m)
    if len(free) != dim:
        raise ContractViolation(
            "ext-dim", f"N={N} m={m}: reduction leaves {len(free)} free, expected {dim}"
        )
    if dim and sorted(free) != sorted(r.k for r in primitive_upper_half(N)):
        raise ContractViolation(
            "ext-basis", f"N={N} m={m}: free columns {sorted(free)} are not the basis"
        )
    return exprs, free


def ext_dim(N: int, m: int) -> int:
    """Dimension of the quotient, computed from the reduction."""
    return len(_solved(N, m)[1])


# -- classes and decomposition ----------------------------------------------


@dataclass
class ExtClass:
    """A class in the primitive upper-half basis; zero coords are omitted."""

    level: int
    weight: int
    coords: dict[Root, Fraction]

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: "ExtClass") -> "ExtClass":
        if (self.level, self.weight) != (other.level, other.weight):
            raise ValueError("mismatched level or weight")
        out = dict(self.coords)
        for r, c in other.coords.items():
            acc = out.get(r, Fraction(0)) + c
            if acc:
                out[r] = acc
            else:
                out.pop(r, None)
        return ExtClass(self.level, self.weight, out)

    def scale(self, c) -> "ExtClass":
        c = Fraction(c)
        if not c:
            return ExtClass(self.level, self.weight, {})
        return ExtClass(self.level, self.weight, {r: c * v for r, v in self.coords.items()})

    def to_json(self) -> dict:
        coords = {r.label(): str(self.coords[r]) for r in sorted(self.coords, key=lambda s: s.k)}
        return {"N": self.level, "m": self.weight, "coords": coords}


def decompose(N: int, m: int, j: int) -> ExtClass:
    """The class of Li_m at the j-th root, in the primitive upper-half basis."""
    if not 0 <= j < N:
        raise ValueError("j must be a residue mod N")
    exprs, free = _solved(N, m)
    if j in free:
        return ExtClass(N, m, {Root(j, N): Fraction(1)})
    coords = {Root(f, N): c for f, c in exprs[j].items() if c}
    return ExtClass(N, m, coords)


def sigma_coefficient(N: int, m: int, zeta: Root, j: int) -> Fraction:
    """Coordinate of the j-th class on basis vector zeta: the scalar by which
    the zeta-generator of weight m moves that extension."""
    if zeta.level != N or zeta not in primitive_upper_half(N):
        raise ValueError("zeta must be a basis root")
    return decompose(N, m, j).coords.get(zeta, Fraction(0))


# -- heads ------------------------------------------------------------------


@dataclass
class Head:
    """Coefficients of a Galois image's lowest graded piece on the depth-1
    derivation generators, one per conjugation-pair representative."""

    level: int
    weight: int
    coeffs: dict[Root, Fraction]

    def derivation(self, cutoff: int | None = None) -> InnerDer:
        if cutoff is None:
            cutoff = self.weight + 2
        out = None
        for eta, c in self.coeffs.items():
            term = eps_op(self.weight, eta, cutoff).scale(c)
            out = term if out is None else out + term
        if out is None:
            raise ValueError("empty head has no derivation")
        return out

    def to_json(self) -> dict:
        coeffs = {r.label(): str(self.coeffs[r]) for r in sorted(self.coeffs, key=lambda s: s.k)}
        return {"N": self.level, "m": self.weight, "coeffs": coeffs}


def head(N: int, m: int, zeta: Root) -> Head:
    """The head of the weight-m generator at zeta, in the derivation basis.

    Assembles the per-residue coefficients and folds conjugate pairs:
    c = s on a non-self-conjugate representative (the conjugate residue must
    carry (-1)^(m+1) s), c = s/2 on a self-conjugate one for m odd. For m
    even a self-conjugate generator vanishes identically, so its coefficient
    is absent; at N <= 2, where every root is self-conjugate, the whole image
    then vanishes and the head is undefined.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    if zeta.level != N or zeta not in primitive_upper_half(N):
        raise ValueError("zeta must be a basis root")
    if N <= 2 and m % 2 == 0:
        raise ValueError(f"the weight-{m} image at N={N} vanishes: no head")
    sign = (-1) ** (m + 1)
    s = {j: sigma_coefficient(N, m, zeta, j) for j in range(N)}
    coeffs: dict[Root, Fraction] = {}
    for eta, self_conj in pair_representatives(N):
        if self_conj:
            if m % 2 == 0:
                if s[eta.k]:
                    raise ContractViolation(
                        "head-reexpression",
                        f"N={N} m={m}: residue {eta.k} carries {s[eta.k]} on a vanishing generator",
                    )
                continue
            c = s[eta.k] / 2
        else:
            jb = eta.conj().k
            if s[jb] != sign * s[eta.k]:
                raise ContractViolation(
                    "head-reexpression",
                    f"N={N} m={m}: conjugate residues {eta.k},{jb} disagree: {s[eta.k]} vs {s[jb]}",
                )
            c = s[eta.k]
        if c:
            coeffs[eta] = c
    expected = _published_head(N, m, zeta)
    if expected is not None and expected != coeffs:
        raise ContractViolation(
            "head-closed-form", f"N={N} m={m} zeta={zeta.label()}: got {coeffs}, expected {expected}"
        )
    return Head(N, m, coeffs)


def _published_head(N: int, m: int, zeta: Root) -> dict[Root, Fraction] | None:
    """Closed-form head coefficients where a formula exists: N <= 2, prime
    powers, and N = 6. None elsewhere."""
    if N == 1:
        return {Root(0, 1): Fraction(1, 2)}
    if N == 2:
        return {
            Root(1, 2): Fraction(1, 2),
            Root(0, 2): Fraction(1, 2) / (Fraction(2) ** (1 - m) - 1),
        }
    sign = (-1) ** (m + 1)
    target: dict[Root, Fraction] = {}

    def put(k: int, val: Fraction):
        r = Root(k, N)
        rep = conj_representative(r)
        if rep.is_self_conjugate and m % 2 == 0:
            return
        if rep != r:
            val *= sign
        acc = target.get(rep, Fraction(0)) + val
        if acc:
            target[rep] = acc
        else:
            target.pop(rep, None)

    primes = _prime_factors(N)
    if len(primes) == 1:
        p = primes[0]
        n = 0
        nn = N
        while nn > 1:
            nn //= p
            n += 1
        put(zeta.k, Fraction(1))
        put(0, Fraction(N ** (m - 1), 1) / (1 - p ** (m - 1)))
        for kk in range(1, n):
            put((zeta.k * p**kk) % N, Fraction(p ** (kk * (m - 1))))
        return target
    if N == 6:
        put(zeta.k, Fraction(1))
        put((2 * zeta.k) % 6, 1 / (Fraction(2) ** (1 - m) + (-1) ** m))
        put(0, Fraction(6 ** (m - 1)) / ((1 - 3 ** (m - 1)) * (1 - 2 ** (m - 1))))
        put((3 * zeta.k) % 6, 1 / (Fraction(3) ** (1 - m) - 1))
        return target
    return None
