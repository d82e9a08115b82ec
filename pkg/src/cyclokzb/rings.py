"""Commutative coefficient rings shared by the series and quotient types.

Two small polynomial rings are rolled by hand:

* ``SymPoly`` — polynomials over Q in named formal symbols. The symbols in
  actual use are ``L`` (the formal period of weight -2, evaluating to 2*pi*i)
  and ``lam_m_k`` (the unevaluated weight-m polylogarithm value at the root
  exp(2*pi*i*k/N)). The ring is free: no relations between symbols are built
  in, conjugation identities are applied only at evaluation time.

* ``XYPoly`` — polynomials in two commuting variables X, Y with coefficients
  in a pluggable domain (rationals, SymPoly, or high-precision complex).

Coefficient domains are described by ``CoeffDomain`` so that series code can
stay agnostic about which ring it multiplies in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Callable

Monomial = tuple[tuple[str, int], ...]  # sorted ((symbol, exponent), ...)


class SymPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, Fraction] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c != 0:
                    self.terms[mono] = Fraction(c)

    # -- constructors ----------------------------------------------------
    @staticmethod
    def zero() -> "SymPoly":
        return SymPoly()

    @staticmethod
    def const(q) -> "SymPoly":
        q = Fraction(q)
        return SymPoly({(): q}) if q else SymPoly()

    @staticmethod
    def one() -> "SymPoly":
        return SymPoly.const(1)

    @staticmethod
    def symbol(name: str, power: int = 1) -> "SymPoly":
        if power < 0:
            raise ValueError("negative power")
        if power == 0:
            return SymPoly.one()
        return SymPoly({((name, power),): Fraction(1)})

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_part(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = _coerce_sympoly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, Fraction(0)) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        res = SymPoly()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = SymPoly()
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other):
        other = _coerce_sympoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_sympoly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_sympoly(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        res = SymPoly()
        res.terms = out
        return res

    __rmul__ = __mul__

    def __truediv__(self, q):
        q = Fraction(q)
        res = SymPoly()
        res.terms = {m: c / q for m, c in self.terms.items()}
        return res

    def __eq__(self, other):
        other = _coerce_sympoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- evaluation ------------------------------------------------------
    def evaluate(self, assign: dict[str, Any], conv: Callable[[Fraction], Any] = lambda q: q):
        """Substitute values for every symbol; ``conv`` lifts Q-coefficients
        into the target arithmetic (e.g. Fraction -> mpf)."""
        total = None
        for mono, c in self.terms.items():
            v = conv(c)
            for name, e in mono:
                v = v * assign[name] ** e
            total = v if total is None else total + v
        return conv(Fraction(0)) if total is None else total

    def symbols(self) -> set[str]:
        return {name for mono in self.terms for name, _ in mono}

    # -- formatting ------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            factors = [f"{n}^{e}" if e > 1 else n for n, e in mono]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    d: dict[str, int] = {}
    for name, e in m1 + m2:
        d[name] = d.get(name, 0) + e
    return tuple(sorted(d.items()))


def _coerce_sympoly(x):
    if isinstance(x, SymPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return SymPoly.const(x)
    return NotImplemented


def lam(m: int, k: int) -> SymPoly:
    """The formal symbol for the weight-m polylogarithm value at residue k."""
    return SymPoly.symbol(f"lam_{m}_{k}")


L = SymPoly.symbol("L")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoeffDomain:
    """What the series/quotient code needs to know about its coefficients."""

    tag: str
    zero: Any
    one: Any
    from_fraction: Callable[[Fraction], Any]
    is_zero: Callable[[Any], bool]


RATIONAL = CoeffDomain(
    "rational",
    zero=Fraction(0),
    one=Fraction(1),
    from_fraction=lambda q: q,
    is_zero=lambda x: x == 0,
)

SYMBOLIC = CoeffDomain(
    "symbolic",
    zero=SymPoly.zero(),
    one=SymPoly.one(),
    from_fraction=SymPoly.const,
    is_zero=lambda x: x.is_zero(),
)


def complex_domain() -> CoeffDomain:
    """High-precision complex coefficients (mpmath, current working precision)."""
    from mpmath import mpc, mpf

    return CoeffDomain(
        "complex",
        zero=mpc(0),
        one=mpc(1),
        from_fraction=lambda q: mpc(mpf(q.numerator) / q.denominator),
        is_zero=lambda x: x == 0,
    )


# ---------------------------------------------------------------------------


class XYPoly:
    """Commutative polynomial in X and Y over a CoeffDomain."""

    __slots__ = ("domain", "terms")

    def __init__(self, domain: CoeffDomain, terms: dict[tuple[int, int], Any] | None = None):
        self.domain = domain
        self.terms: dict[tuple[int, int], Any] = {}
        if terms:
            for k, c in terms.items():
                if not domain.is_zero(c):
                    self.terms[k] = c

    @staticmethod
    def zero(domain: CoeffDomain) -> "XYPoly":
        return XYPoly(domain)

    @staticmethod
    def const(domain: CoeffDomain, c) -> "XYPoly":
        return XYPoly(domain, {(0, 0): c})

    @staticmethod
    def monomial(domain: CoeffDomain, i: int, j: int, c=None) -> "XYPoly":
        return XYPoly(domain, {(i, j): domain.one if c is None else c})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self.terms), default=-1)

    def __add__(self, other: "XYPoly") -> "XYPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out[k] + c if k in out else c
            if self.domain.is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
        res = XYPoly(self.domain)
        res.terms = out
        return res

    def __neg__(self) -> "XYPoly":
        res = XYPoly(self.domain)
        res.terms = {k: -c for k, c in self.terms.items()}
        return res

    def __sub__(self, other: "XYPoly") -> "XYPoly":
        return self + (-other)

    def __mul__(self, other: "XYPoly") -> "XYPoly":
        out: dict[tuple[int, int], Any] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                p = c1 * c2
                s = out[k] + p if k in out else p
                if self.domain.is_zero(s):
                    out.pop(k, None)
                else:
                    out[k] = s
        res = XYPoly(self.domain)
        res.terms = out
        return res

    def scale(self, c) -> "XYPoly":
        if self.domain.is_zero(c):
            return XYPoly(self.domain)
        res = XYPoly(self.domain)
        res.terms = {k: c * v for k, v in self.terms.items()}
        return res

    def truncate(self, maxdeg: int) -> "XYPoly":
        res = XYPoly(self.domain)
        res.terms = {k: c for k, c in self.terms.items() if k[0] + k[1] <= maxdeg}
        return res

    def shift_x(self, c) -> "XYPoly":
        """Substitute X -> X + c*Y (c in the coefficient domain)."""
        out = XYPoly(self.domain)
        for (i, j), coeff in self.terms.items():
            for t in range(i + 1):
                factor = coeff * comb(i, t)
                for _ in range(t):
                    factor = factor * c
                out = out + XYPoly(self.domain, {(i - t, j + t): factor})
        return out

    def map_coeffs(self, f: Callable[[Any], Any], domain: CoeffDomain | None = None) -> "XYPoly":
        dom = domain if domain is not None else self.domain
        return XYPoly(dom, {k: f(c) for k, c in self.terms.items()})

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), self.domain.zero)

    def __eq__(self, other):
        if not isinstance(other, XYPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("XYPoly is mutable-by-convention; not hashable")

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (k[0] + k[1], k[0])):
            c = self.terms[(i, j)]
            vars_ = []
            if i:
                vars_.append(f"X^{i}" if i > 1 else "X")
            if j:
                vars_.append(f"Y^{j}" if j > 1 else "Y")
            cs = str(c)
            if not vars_:
                parts.append(cs if _is_simple(cs) else f"({cs})")
            elif cs == "1":
                parts.append("*".join(vars_))
            elif cs == "-1":
                parts.append("-" + "*".join(vars_))
            else:
                parts.append((cs if _is_simple(cs) else f"({cs})") + "*" + "*".join(vars_))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


def _is_simple(s: str) -> bool:
    return not (" + " in s or " - " in s)
