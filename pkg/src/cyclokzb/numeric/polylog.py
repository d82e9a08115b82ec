"""Polylogarithms and multiple polylogarithms at roots of unity.

Single polylogarithms at an N-th root of unity are evaluated by the finite
Hurwitz-zeta resummation over residues mod N,

    Li_m(z) = N**(-m) * sum_{j=1..N} z**j * zeta(m, j/N),

which is the Euler-Maclaurin acceleration of the defining series and
converges at any modulus-one argument.  Multiple polylogarithms dispatch
between a direct nested-sum recurrence strictly inside the unit polydisk
and an iterated-integral evaluation when an argument reaches the circle.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

import mpmath

from ..bernoulli import bernoulli_poly
from ..errors import ContractViolation
from ..roots import Root
from .bigc import BigC, GUARD, reconstruct_rational, root_of_unity, two_pi_i, working

__all__ = ["li", "multiple_li", "bernoulli_pairing", "distribution_defect"]


def _li_root(m: int, r: Root) -> mpmath.mpc:
    """Li_m at a root of unity, under the ambient precision context."""
    if r.is_unit:
        return mpmath.mpc(mpmath.zeta(m))
    if m == 1:
        return -mpmath.log(1 - root_of_unity(r))
    z = root_of_unity(r)
    total = mpmath.mpc(0)
    w = mpmath.mpc(1)
    for j in range(1, r.level + 1):
        w *= z
        total += w * mpmath.zeta(m, mpmath.mpf(j) / r.level)
    return total / mpmath.mpf(r.level) ** m


def li(m: int, r: Root, p: int = 128) -> BigC:
    """Li_m(r) to p bits; m = 1 is allowed away from the unit argument."""
    if m < 1:
        raise ValueError(f"polylogarithm weight must be >= 1, got {m}")
    if m == 1 and r.is_unit:
        raise ValueError("Li_1 diverges at z = 1")
    with working(p + 16):
        val = _li_root(m, r)
    return BigC.from_mpc(val, p)


# -- multiple polylogarithms -------------------------------------------------


def _coerce_args(args, p):
    out = []
    for z in args:
        if isinstance(z, Root):
            out.append(root_of_unity(z))
        elif isinstance(z, BigC):
            out.append(z.mpc())
        elif isinstance(z, Fraction):
            out.append(mpmath.mpc(mpmath.mpf(z.numerator) / z.denominator))
        else:
            out.append(mpmath.mpc(z))
    return out


def _nested_sum(indices, zs, bits) -> mpmath.mpc:
    """Direct recurrence over k, valid strictly inside the polydisk."""
    depth = len(indices)
    q = max(abs(z) for z in zs)
    # geometric tail: q**K times a slowly varying factor
    kmax = int((bits + 48) / max(1e-9, -mpmath.log(q, 2))) + 40 * depth
    cum = [mpmath.mpc(0)] * depth  # cum[i] = sum over k_1<...<k_{i+1}<=k
    pw = [mpmath.mpc(1)] * depth
    for k in range(1, kmax + 1):
        prev_inner = mpmath.mpc(1)
        for i in range(depth):
            pw[i] *= zs[i]
            term = pw[i] / mpmath.mpf(k) ** indices[i] * prev_inner
            prev_inner = cum[i]  # value before this k enters: enforces k_i < k_{i+1}
            cum[i] += term
    return cum[depth - 1]


def _integral_word(indices, zs):
    """Pole word for the iterated-integral form on [0, 1], start letter first."""
    poles = []
    suffix = mpmath.mpc(1)
    a = [None] * len(indices)
    for j in reversed(range(len(indices))):
        suffix *= zs[j]
        a[j] = 1 / suffix
    for n, aj in zip(indices, a):
        poles.append(aj)
        poles.extend([mpmath.mpc(0)] * (n - 1))
    return poles


def multiple_li(indices, args, p: int = 128, eps=None, route: str = "auto") -> BigC:
    """The nested sum over k_1 < ... < k_m of prod z_i**k_i / k_i**n_i.

    Arguments live on the closed unit polydisk; modulus-one arguments
    require the final exponent n_m >= 2.  ``route`` picks the evaluation
    path ("series", "integral", or "auto": the series well inside the
    disk, the integral otherwise); ``eps`` caps the absolute error of the
    integral route (default 2**(8-p)).
    """
    indices = tuple(int(n) for n in indices)
    if not indices or any(n < 1 for n in indices):
        raise ValueError(f"exponents must be positive integers, got {indices}")
    if len(args) != len(indices):
        raise ValueError("one argument per exponent is required")
    if route not in ("auto", "series", "integral"):
        raise ValueError(f"unknown route {route!r}")
    with working(p + 16):
        zs = _coerce_args(args, p)
        q = max(abs(z) for z in zs)
        if q > 1 + mpmath.mpf(2) ** (-p // 2):
            raise ValueError("arguments must lie on the closed unit polydisk")
        if q >= 1 - mpmath.mpf(2) ** (-p // 2) and indices[-1] < 2:
            raise ValueError(
                "a modulus-one argument requires the final exponent to be >= 2"
            )
        if route == "auto":
            route = "series" if q <= mpmath.mpf(3) / 4 else "integral"
        if route == "series":
            if q > 1 - mpmath.mpf(2) ** -12:
                raise ValueError("the series route needs arguments inside the disk")
            return BigC.from_mpc(_nested_sum(indices, zs, p + 16), p)
        poles = _integral_word(indices, zs)
    from .paths import PathSpec
    from .quadrature import iterint

    val = iterint(PathSpec((0, 1)), poles, p, eps=eps)
    return val if len(indices) % 2 == 0 else -val


# -- the Bernoulli pairing ---------------------------------------------------


def bernoulli_pairing(m: int, r: Root, p: int = 128) -> Fraction:
    """(Li_m(r) + (-1)**m Li_m(conj r)) / (2 pi i)**m as an exact rational.

    The reconstructed value is checked against -B_m(k/N)/m! and the match
    enforced; a disagreement is a broken invariant, not a rounding issue.
    """
    if m < 2:
        raise ValueError(f"the pairing needs weight >= 2, got {m}")
    with working(p + 32):
        v = _li_root(m, r) + (-1) ** m * _li_root(m, r.conj())
        v /= two_pi_i() ** m
        got = reconstruct_rational(BigC.from_mpc(v, p), 10**12, p, what="pairing")
    expect = -bernoulli_poly(m, Fraction(r.k, r.level)) / factorial(m)
    if got != expect:
        raise ContractViolation(
            "bernoulli-pairing",
            f"weight {m} at k={r.k}, N={r.level}: reconstructed {got}, closed form {expect}",
        )
    return got


def distribution_defect(m: int, r: Root, ell: int, p: int = 128) -> mpmath.mpf:
    """| ell**(m-1) * sum over the ell-th-power fiber of Li_m  -  Li_m(r) |."""
    if ell < 1:
        raise ValueError("the fiber degree must be positive")
    if m == 1 and r.is_unit:
        raise ValueError("Li_1 diverges at z = 1")
    with working(p + 16):
        fiber = mpmath.mpc(0)
        for t in range(ell):
            fiber += _li_root(m, Root(r.k + t * r.level, r.level * ell))
        return abs(mpmath.mpf(ell) ** (m - 1) * fiber - _li_root(m, r))
