"""Boundary restriction of transport for a two-variable nilpotent model.

The model connection is d + A dx/x + B dy/y on the trivial rank-three
bundle, with strictly upper triangular coefficients

    A = A0 + x*y*C,   B = B0 + x*y*C,
    A0 = E12 + E23,   B0 = b1*A0 + b2*E13,   C = c*E13.

E13 is central among the strictly upper triangulars and [A0, B0] = 0, so
the connection is flat for any b1, b2, c.  Transport along a horizontal
segment at height y, framed by the powers (y/lam)^{B0} at the two ends,
converges as y -> 0; the limit forgets the nonlinear x*y*C term and is
the closed form

    exp(-log(x1/x0) A0) . exp(-log(lam1/lam0) B0).

``linearized_transport_check`` measures that convergence numerically and,
with c = 0 where the framed product is y-independent, pins the closed
form to full working precision.
"""

from __future__ import annotations

import mpmath

from .quadrature import _cheb, _csolve

__all__ = ["linearized_transport_check"]


def _mexp_nilp(n):
    """exp of a strictly upper triangular 3x3 matrix."""
    return mpmath.eye(3) + n + (n * n) / 2


def _minv_unip(s):
    """Inverse of a unipotent 3x3 matrix."""
    n = s - mpmath.eye(3)
    return mpmath.eye(3) - n + n * n


def _max_entry(m):
    return max(abs(m[i, j]) for i in range(3) for j in range(3))


def _word_integrals(fs, a, b, d, panels):
    """Iterated integrals of the 1-forms f(z) dz over [a, b], words len <= 2.

    Returns {word: value} over the alphabet range(len(fs)).  The sampled
    densities are analytic on the segment, so plain Chebyshev panels with
    endpoint composition suffice.
    """
    nodes, smat = _cheb(d, mpmath.mp.prec)
    words = [()]
    for i in range(len(fs)):
        words.append((i,))
        for j in range(len(fs)):
            words.append((i, j))
    total = {w: mpmath.mpc(1 if w == () else 0) for w in words}
    h = (b - a) / panels
    for q in range(panels):
        z0 = a + q * h
        half, mid = h / 2, z0 + h / 2
        samples = [[f(mid + half * t) * half for t in nodes] for f in fs]
        vals = {(): [mpmath.mpc(1)] * (d + 1)}
        seg = {(): mpmath.mpc(1)}
        for w in words:
            if w == ():
                continue
            prev = vals[w[:-1]]
            col = [prev[k] * samples[w[-1]][k] for k in range(d + 1)]
            vals[w] = [
                sum(smat[r][k] * col[k] for k in range(d + 1)) for r in range(d + 1)
            ]
            seg[w] = vals[w][d]
        total = {
            w: sum(total[w[:cut]] * seg[w[cut:]] for cut in range(len(w) + 1))
            for w in words
        }
    return total


def _series_transport(x0, x1, y, c, d, panels):
    """Word series of A0 dx/x + y c E13 dx along [x0, x1], as a matrix."""
    a0 = mpmath.matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    e13 = mpmath.matrix([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    mats = [a0, e13 * (c * y)]
    fs = [lambda z: 1 / z, lambda z: mpmath.mpc(1)]
    ints = _word_integrals(fs, mpmath.mpf(x0), mpmath.mpf(x1), d, panels)
    s = mpmath.eye(3)
    for w, val in ints.items():
        if w == ():
            continue
        m = mpmath.eye(3)
        for lid in w:
            m = m * mats[lid]
        s = s + m * val
    return s


def linearized_transport_check(p: int = 128):
    """Residuals of the framed boundary-limit identities.

    Returns a dict with three entries.  "linearized": the y -> 0
    extrapolation of (y/lam1)^{B0} T (y/lam0)^{-B0} against the closed
    form, for the full nonlinear model.  "commuting": the same framed
    product with c = 0, where it is y-independent, at a single moderate
    y.  "lambda_split": the gap between the limits taken with lam0 = 1
    and lam0 = 2, which must stay far from zero since the frame scale is
    part of the answer.
    """
    with mpmath.workprec(p + 64):
        x0, x1 = mpmath.mpf(1), mpmath.mpf(2)
        b1, b2, c = mpmath.mpf(1) / 2, mpmath.mpf(1) / 3, mpmath.mpf(1)
        a0 = mpmath.matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        e13 = mpmath.matrix([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
        b0 = a0 * b1 + e13 * b2
        d = 64 if p <= 192 else 128
        panels = 3
        ell = mpmath.log(x1 / x0)

        def closed_form(lam0, lam1):
            return _mexp_nilp(a0 * (-ell)) * _mexp_nilp(b0 * (-mpmath.log(lam1 / lam0)))

        def framed(y, lam0, lam1, cc):
            t = _minv_unip(_series_transport(x0, x1, y, cc, d, panels))
            left = _mexp_nilp(b0 * mpmath.log(y / lam1))
            right = _mexp_nilp(b0 * (-mpmath.log(y / lam0)))
            return left * t * right

        def limit(lam0, lam1, cc):
            # The frame factors carry log^2 y each, so the vanishing part
            # of the framed product is y times a log-polynomial of degree
            # up to four.
            y0 = mpmath.mpf(2) ** (-48)
            ys = [y0 * 2**i for i in range(6)]
            frames = [framed(y, lam0, lam1, cc) for y in ys]
            rows = []
            for y in ys:
                ly = mpmath.log(y)
                rows.append([mpmath.mpf(1)] + [y * ly**j for j in range(5)])
            out = mpmath.zeros(3, 3)
            for i in range(3):
                for j in range(3):
                    sol = _csolve(rows, [fr[i, j] for fr in frames])
                    out[i, j] = sol[0]
            return out

        lam0, lam1 = mpmath.mpf(1), mpmath.mpf(3) / 2
        lin = _max_entry(limit(lam0, lam1, c) - closed_form(lam0, lam1))

        comm = _max_entry(
            framed(mpmath.mpf(1) / 8, lam0, lam1, mpmath.mpf(0))
            - closed_form(lam0, lam1)
        )

        split = _max_entry(limit(mpmath.mpf(2), lam1, c) - limit(lam0, lam1, c))

        return {"linearized": lin, "commuting": comm, "lambda_split": split}
