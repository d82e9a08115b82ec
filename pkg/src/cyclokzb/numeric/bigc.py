"""Precision-tagged complex scalars and exact rational reconstruction."""

from __future__ import annotations

from fractions import Fraction

import mpmath

from ..errors import ContractViolation
from ..roots import Root

# Guard bits carried internally beyond any requested precision.
GUARD = 16


def working(p: int):
    """mpmath context at ``p`` requested bits plus guard digits."""
    if p < 8:
        raise ValueError(f"precision must be at least 8 bits, got {p}")
    return mpmath.workprec(p + GUARD)


def tol(p: int, c: int = 8) -> mpmath.mpf:
    """The default comparison tolerance 2**(c - p)."""
    return mpmath.mpf(2) ** (c - p)


class BigC:
    """A complex value whose precision in bits travels with it.

    Arithmetic between two values runs at the smaller of the two tagged
    precisions (plus guard bits) and tags the result with that minimum.
    """

    __slots__ = ("real", "imag", "prec")

    def __init__(self, real=0, imag=0, prec: int = 128):
        with mpmath.workprec(prec):
            self.real = mpmath.mpf(real)
            self.imag = mpmath.mpf(imag)
        self.prec = prec

    @classmethod
    def from_mpc(cls, z, prec: int) -> "BigC":
        # Convert under the target precision: the ambient context may be
        # far coarser than the mantissa the caller computed.
        with mpmath.workprec(prec + GUARD):
            z = mpmath.mpc(z)
        return cls(z.real, z.imag, prec)

    @classmethod
    def from_fraction(cls, q: Fraction, prec: int) -> "BigC":
        with mpmath.workprec(prec + GUARD):
            v = mpmath.mpf(q.numerator) / q.denominator
        return cls(v, 0, prec)

    def mpc(self) -> mpmath.mpc:
        # Assemble under own precision: the ambient context may be coarser
        # and would silently round the stored mantissas.
        with mpmath.workprec(self.prec + GUARD):
            return mpmath.mpc(self.real, self.imag)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, BigC):
            return other.mpc(), other.prec
        with mpmath.workprec(self.prec + GUARD):
            if isinstance(other, Fraction):
                return mpmath.mpf(other.numerator) / other.denominator, self.prec
            return mpmath.mpc(other), self.prec

    def _binop(self, other, fn):
        z, q = self._coerce(other)
        p = min(self.prec, q)
        with mpmath.workprec(p + GUARD):
            return BigC.from_mpc(fn(self.mpc(), z), p)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binop(other, lambda a, b: b / a)

    def __neg__(self):
        # Negate under own precision: mpmath rounds even unary minus at the
        # ambient context.
        with mpmath.workprec(self.prec + GUARD):
            return BigC(-self.real, -self.imag, self.prec)

    def conjugate(self) -> "BigC":
        with mpmath.workprec(self.prec + GUARD):
            return BigC(self.real, -self.imag, self.prec)

    # -- comparisons -----------------------------------------------------
    def abs(self) -> mpmath.mpf:
        with working(self.prec):
            return abs(self.mpc())

    def distance(self, other) -> mpmath.mpf:
        z, q = self._coerce(other)
        with mpmath.workprec(min(self.prec, q) + GUARD):
            return abs(self.mpc() - z)

    def close_to(self, other, tolerance=None) -> bool:
        if tolerance is None:
            tolerance = tol(self.prec)
        return self.distance(other) <= tolerance

    def __eq__(self, other):
        if not isinstance(other, (BigC, int, Fraction, float, complex, mpmath.mpf, mpmath.mpc)):
            return NotImplemented
        z, _ = self._coerce(other)
        return self.mpc() == z

    def __complex__(self):
        return complex(float(self.real), float(self.imag))

    # -- io --------------------------------------------------------------
    def to_json(self) -> dict:
        dps = max(4, int(self.prec * 0.30103) + 2)
        return {
            "re": mpmath.nstr(self.real, dps),
            "im": mpmath.nstr(self.imag, dps),
            "prec_bits": self.prec,
        }

    def __repr__(self):
        return f"BigC({mpmath.nstr(self.real, 12)}, {mpmath.nstr(self.imag, 12)}, prec={self.prec})"


# -- constants ---------------------------------------------------------------


def root_of_unity(r: Root, p: int | None = None) -> mpmath.mpc:
    """exp(2*pi*i*k/N) under the ambient context (or at ``p`` bits if given)."""
    if p is not None:
        with working(p):
            return root_of_unity(r)
    # expjpi evaluates exp(pi*i*x) without a lossy multiplication by pi
    return mpmath.expjpi(mpmath.mpf(2 * r.k) / r.level)


def two_pi_i() -> mpmath.mpc:
    return mpmath.mpc(0, 2 * mpmath.pi)


# -- rational reconstruction -------------------------------------------------


def mpf_to_fraction(x: mpmath.mpf) -> Fraction:
    """The exact dyadic rational an mpf stores."""
    if isinstance(x, int):
        return Fraction(x)
    if not isinstance(x, mpmath.mpf):
        # Floats carry at most 53 mantissa bits, so this conversion is exact;
        # an existing mpf must not be re-rounded at the ambient precision.
        with mpmath.workprec(64):
            x = mpmath.mpf(x)
    if not mpmath.isfinite(x):
        raise ValueError(f"cannot convert {x} to a fraction")
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def reconstruct_rational(x, max_den: int, p: int, what: str = "value") -> Fraction:
    """Round ``x`` to the nearest rational with denominator <= max_den.

    The candidate must sit within 2**(GUARD - p) of ``x`` or the
    reconstruction is reported as failed.
    """
    if isinstance(x, BigC):
        if abs(x.imag) > tol(p, GUARD):
            raise ContractViolation(
                "rational-reconstruction", f"{what} has imaginary part {mpmath.nstr(x.imag, 8)}"
            )
        x = x.real
    exact = mpf_to_fraction(x)
    cand = exact.limit_denominator(max_den)
    if abs(exact - cand) > Fraction(2) ** (GUARD - p):
        raise ContractViolation(
            "rational-reconstruction",
            f"{what} = {mpmath.nstr(mpmath.mpf(x), 20)} has no rational approximation "
            f"with denominator <= {max_den} at {p} bits",
        )
    return cand
