"""Eisenstein symbols, lattice sums, Hecke operators, and level shifts.

The weight-m level-N symbols G_{m,zeta} span a Q-vector space that maps onto
the weight-(m-1) extension classes by G_{m,zeta} -> E_{m-1,zeta}.  Hecke
operators act on both sides: on symbols by T_p G = p^(m-1) G_zeta + G_{zeta^p},
on classes by the class of Li_w at zeta -> p^w (class at zeta) + (class at
zeta^p).  Everything symbolic here is exact rational arithmetic; the analytic
content (that T_p really is index-p sublattice averaging, and that the level
shift [d] really is f(tau) -> d^(m-1) f(d tau)) is verified numerically by
truncated lattice sums at a point in the upper half plane.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import mpmath

from .extdecomp import ExtClass, decompose, relation_matrix
from .linalg import in_row_span
from .numeric.bigc import BigC, root_of_unity, working
from .roots import Root


def _require_prime(p: int):
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"p must be prime, got {p}")


# -- symbols ----------------------------------------------------------------


@dataclass
class EisensteinSym:
    """A Q-linear combination of lattice-sum symbols of one weight and level.

    ``terms`` maps each root to its rational coefficient; zero coefficients
    are never stored, so two equal combinations compare equal as dataclasses.
    """

    weight: int
    level: int
    terms: dict[Root, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.weight < 3:
            raise ValueError(f"weight must be >= 3, got {self.weight}")
        for r, c in list(self.terms.items()):
            if r.level != self.level:
                raise ValueError(f"root {r} is not at level {self.level}")
            if not c:
                del self.terms[r]

    @staticmethod
    def generator(m: int, r: Root) -> "EisensteinSym":
        return EisensteinSym(m, r.level, {r: Fraction(1)})

    def __add__(self, other: "EisensteinSym") -> "EisensteinSym":
        if (self.weight, self.level) != (other.weight, other.level):
            raise ValueError("mismatched weight or level")
        out = dict(self.terms)
        for r, c in other.terms.items():
            acc = out.get(r, Fraction(0)) + c
            if acc:
                out[r] = acc
            else:
                out.pop(r, None)
        return EisensteinSym(self.weight, self.level, out)

    def scale(self, c) -> "EisensteinSym":
        c = Fraction(c)
        if not c:
            return EisensteinSym(self.weight, self.level, {})
        return EisensteinSym(self.weight, self.level, {r: c * v for r, v in self.terms.items()})

    def to_json(self) -> dict:
        terms = {r.label(): str(self.terms[r]) for r in sorted(self.terms, key=lambda s: s.k)}
        return {"m": self.weight, "N": self.level, "terms": terms}


# -- numeric lattice sums ---------------------------------------------------


def _upper_tau(tau) -> mpmath.mpc:
    if isinstance(tau, BigC):
        tau = tau.mpc()
    tau = mpmath.mpc(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    return tau


def tail_bound(m: int, tau, radius: int) -> mpmath.mpf:
    """Upper bound for the discarded part of a lattice sum cut at max-norm
    ``radius``: ~8r points on ring r, each of modulus >= c*r."""
    tau = _upper_tau(tau)
    c = min(mpmath.mpf(1), tau.imag) / (1 + abs(tau.real))
    return 8 * c ** (-m) * mpmath.mpf(radius) ** (2 - m) / (m - 2)


def _tagged(z: mpmath.mpc, p: int, tail: mpmath.mpf) -> BigC:
    """Full-mantissa BigC whose precision tag reflects the tail bound, so the
    truncation error travels with the value without rounding it away."""
    out = BigC(0, 0, p)
    out.real, out.imag = mpmath.mpf(z.real), mpmath.mpf(z.imag)
    if tail > 0:
        out.prec = min(p, max(8, int(mpmath.floor(-mpmath.log(tail, 2)))))
    return out


def eisenstein_eval(m: int, r: Root, tau, radius: int = 300, p: int = 128) -> BigC:
    """Truncated lattice sum sum_{(k,l) != 0} zeta^k / (k tau + l)^m.

    The result's precision tag is lowered to the accuracy the tail bound
    supports, so downstream comparisons see the truncation error; the stored
    mantissa itself is kept at full working precision.
    """
    if m < 3:
        raise ValueError(f"weight must be >= 3 for absolute convergence, got {m}")
    if radius < 10:
        raise ValueError(f"radius must be >= 10, got {radius}")
    with working(p + 32):
        tau = _upper_tau(tau)
        N = r.level
        table = [root_of_unity(Root(j, N)) for j in range(N)]
        sign = (-1) ** m
        # (k,l) -> (-k,-l) sends the term to (-1)^m zeta^(-k) times it, so
        # only rows k >= 1 are summed, with the k=0 row paired in l.
        total = mpmath.mpc(0)
        for l in range(1, radius + 1):
            total += (1 + sign) * mpmath.mpf(l) ** (-m)
        for k in range(1, radius + 1):
            base = k * tau
            row = mpmath.mpc(0)
            for l in range(-radius, radius + 1):
                row += (base + l) ** (-m)
            total += (table[(r.k * k) % N] + sign * table[(-r.k * k) % N]) * row
        return _tagged(total, p, tail_bound(m, tau, radius))


def eval_symbol(sym: EisensteinSym, tau, radius: int = 300, p: int = 128) -> BigC:
    """Numeric value of a linear combination of lattice-sum symbols."""
    out = BigC(0, 0, p)
    for r, c in sorted(sym.terms.items(), key=lambda t: t[0].k):
        out = out + eisenstein_eval(sym.weight, r, tau, radius, p) * c
    return out


def sublattice_average(m: int, r: Root, tau, prime: int, radius: int = 300, p: int = 128) -> BigC:
    """p^(m-1) * sum of G_{m,zeta} over the prime+1 index-prime sublattices.

    Each sublattice sum keeps the ambient character zeta^k of the point
    k tau + l; the sublattices of Z tau + Z are Z(p tau) + Z and
    Z(tau + j) + Z p for 0 <= j < prime.
    """
    _require_prime(prime)
    if m < 3:
        raise ValueError(f"weight must be >= 3, got {m}")
    with working(p + 32):
        tau = _upper_tau(tau)
        N = r.level
        table = [root_of_unity(Root(j, N)) for j in range(N)]
        sign = (-1) ** m
        total = mpmath.mpc(0)
        # Each box is symmetric under (a,b) -> (-a,-b), so sum rows a >= 1
        # with the paired character and fold the a=0 row in b.
        # Z(p tau) + Z: ambient coordinates (pa, b), character zeta^(pa).
        for b in range(1, radius + 1):
            total += (1 + sign) * mpmath.mpf(b) ** (-m)
        for a in range(1, radius + 1):
            base = prime * a * tau
            row = mpmath.mpc(0)
            for b in range(-radius, radius + 1):
                row += (base + b) ** (-m)
            total += (table[(r.k * prime * a) % N] + sign * table[(-r.k * prime * a) % N]) * row
        # Z(tau + j) + Z p: ambient coordinates (a, aj + pb), character zeta^a.
        for j in range(prime):
            for b in range(1, radius + 1):
                total += (1 + sign) * mpmath.mpf(prime * b) ** (-m)
            for a in range(1, radius + 1):
                base = a * (tau + j)
                row = mpmath.mpc(0)
                for b in range(-radius, radius + 1):
                    row += (base + prime * b) ** (-m)
                total += (table[(r.k * a) % N] + sign * table[(-r.k * a) % N]) * row
        tail = mpmath.mpf(prime) ** (m - 1) * (prime + 1) * tail_bound(m, tau, radius)
        return _tagged(mpmath.mpf(prime) ** (m - 1) * total, p, tail)


def hecke_identity_residual(
    N: int, m: int, prime: int, tau=None, radius: int = 300, p: int = 128
) -> mpmath.mpf:
    """|sublattice average - (p^(m-1) G_zeta + G_{zeta^p})| at a primitive root."""
    with working(p):
        tau = mpmath.mpc(0, 1) if tau is None else _upper_tau(tau)
        zeta = Root(1, N)
        lhs = sublattice_average(m, zeta, tau, prime, radius, p)
        rhs = eisenstein_eval(m, zeta, tau, radius, p) * (Fraction(prime) ** (m - 1))
        rhs = rhs + eisenstein_eval(m, zeta.pow(prime), tau, radius, p)
        return lhs.distance(rhs)


# -- operators --------------------------------------------------------------


def hecke_tp(sym: EisensteinSym, prime: int) -> EisensteinSym:
    """T_p G_{m,zeta} = p^(m-1) G_{m,zeta} + G_{m,zeta^p}, extended linearly."""
    _require_prime(prime)
    if sym.level % prime == 0:
        raise ValueError(f"p={prime} must not divide the level {sym.level}")
    out = EisensteinSym(sym.weight, sym.level, {})
    for r, c in sym.terms.items():
        out = out + EisensteinSym(
            sym.weight, sym.level, {r: c * Fraction(prime) ** (sym.weight - 1)}
        )
        out = out + EisensteinSym(sym.weight, sym.level, {r.pow(prime): c})
    return out


def level_shift(sym: EisensteinSym, d: int) -> EisensteinSym:
    """[d] G_{m,zeta} = d^(m-2) * sum of G_{m,xi} over xi with xi^d = zeta,
    landing at level d*N.  Analytically this is f(tau) -> d^(m-1) f(d tau)."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if d == 1:
        return EisensteinSym(sym.weight, sym.level, dict(sym.terms))
    N, m = sym.level, sym.weight
    out = EisensteinSym(m, d * N, {})
    for r, c in sym.terms.items():
        for t in range(d):
            out = out + EisensteinSym(
                m, d * N, {Root(r.k + t * N, d * N): c * Fraction(d) ** (m - 2)}
            )
    return out


def shift_residual(sym: EisensteinSym, d: int, tau=None, radius: int = 300, p: int = 128):
    """|d^(m-1) * sym(d tau) - (level_shift(sym, d))(tau)|, the numeric form
    of the level-shift identity."""
    with working(p):
        tau = mpmath.mpc(0, 1) if tau is None else _upper_tau(tau)
        lhs = eval_symbol(sym, d * tau, radius, p) * (Fraction(d) ** (sym.weight - 1))
        rhs = eval_symbol(level_shift(sym, d), tau, radius, p)
        return lhs.distance(rhs)


# -- the bridge to extension classes ----------------------------------------


def psi(sym: EisensteinSym) -> ExtClass:
    """G_{m,zeta} -> class of E_{m-1,zeta}, extended linearly (the canonical
    map normalized with constant 1)."""
    out = ExtClass(sym.level, sym.weight - 1, {})
    for r, c in sym.terms.items():
        out = out + decompose(sym.level, sym.weight - 1, r.k).scale(c)
    return out


def tp_on_ext(prime: int, e: ExtClass) -> ExtClass:
    """Class of Li_w at zeta -> p^w (class at zeta) + (class at zeta^p)."""
    _require_prime(prime)
    if e.level % prime == 0:
        raise ValueError(f"p={prime} must not divide the level {e.level}")
    N, w = e.level, e.weight
    out = ExtClass(N, w, {})
    for r, c in e.coords.items():
        out = out + decompose(N, w, r.k).scale(c * Fraction(prime) ** w)
        out = out + decompose(N, w, (r.k * prime) % N).scale(c)
    return out


def tp_well_defined(N: int, w: int, prime: int) -> bool:
    """Exact rank test that T_p maps every distribution/conjugation relation
    row back into the row span, so the class-level operator is well defined."""
    _require_prime(prime)
    if N % prime == 0:
        raise ValueError(f"p={prime} must not divide N={N}")
    rows = relation_matrix(N, w)
    pw = Fraction(prime) ** w
    for row in rows:
        img = [pw * v for v in row]
        for j, v in enumerate(row):
            if v:
                img[(prime * j) % N] += v
        if not in_row_span(rows, img):
            return False
    return True
