"""Panel-based spectral quadrature for regularized iterated integrals.

A word is a sequence of logarithmic forms dz/(z - a), listed with the
letter nearest the path start first.  Each straight piece of a path is
covered by Chebyshev-Lobatto panels sized by the distance to the nearest
pole; per panel, iterated integrals of every needed subword are built by
spectral antidifferentiation, and panels are joined by the composition
rule (the coefficient of w in a concatenation is the sum over splits of
products of the two partial transports).

Divergent endpoints are handled by the tangential-splitting rule: stop a
parameter delta short of the endpoint, multiply by exp(log(delta/lambda)
times the singular letter) on the endpoint side, and remove the residual
delta-dependence with a short geometric ladder fit (basis 1 and
delta*log(delta)**j).  Fitting instead against powers of log(delta) and
extracting the constant term gives an independent evaluation with the
limit of log(delta/lambda) dropped; the ``reg_route`` switch selects one
("mortar" or "droplog") and the tests cross-check the two.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct
from math import ceil

import mpmath

from ..freelie import Alphabet
from ..ncseries import NCS
from ..rings import complex_domain
from ..roots import Root
from .bigc import BigC, root_of_unity
from .paths import PathSpec

__all__ = ["iterint", "transport", "shuffle_words"]


# -- Chebyshev-Lobatto machinery --------------------------------------------


@lru_cache(maxsize=24)
def _cheb(d: int, bits: int):
    """Nodes on [-1, 1] (ascending) and the antiderivative-from-the-left matrix."""
    with mpmath.workprec(bits):
        theta = [(d - k) * mpmath.pi / d for k in range(d + 1)]
        nodes = tuple(mpmath.cos(t) for t in theta)
        # values at nodes -> Chebyshev coefficients a_0..a_d
        C = [
            [
                (mpmath.mpf(1 if k in (0, d) else 2) / (d * (2 if j in (0, d) else 1)))
                * mpmath.cos(j * theta[k])
                for k in range(d + 1)
            ]
            for j in range(d + 1)
        ]
        # integrated coefficients b_1..b_{d+1}; b_j = (c_{j-1} a_{j-1} - a_{j+1}) / (2j)
        # with c_0 = 2, then the constant fixed so F(-1) = 0
        S = []
        for k in range(d + 1):
            row = [mpmath.mpf(0)] * (d + 1)
            S.append(row)
        for m in range(d + 1):  # contribution of sample v_m
            b = [mpmath.mpf(0)] * (d + 2)
            for j in range(1, d + 2):
                lead = (2 if j == 1 else 1) * (C[j - 1][m] if j - 1 <= d else 0)
                trail = C[j + 1][m] if j + 1 <= d else 0
                b[j] = (lead - trail) / (2 * j)
            vals = []
            for k in range(d + 1):
                acc = mpmath.mpf(0)
                for j in range(1, d + 2):
                    acc += b[j] * mpmath.cos(j * theta[k])
                vals.append(acc)
            base = vals[0]
            for k in range(d + 1):
                S[k][m] = vals[k] - base
        return nodes, tuple(tuple(r) for r in S)


# -- small helpers -----------------------------------------------------------


def _subword_closure(words):
    out = set()
    for w in words:
        for i in range(len(w) + 1):
            for j in range(i, len(w) + 1):
                out.add(w[i:j])
    return out


def _mul(A, B, words):
    out = {}
    for w in words:
        acc = mpmath.mpc(0)
        for i in range(len(w) + 1):
            a = A.get(w[:i])
            if a is None:
                continue
            b = B.get(w[i:])
            if b is None:
                continue
            acc += a * b
        out[w] = acc
    return out


def _flip(T, words):
    return {w: (-1) ** len(w) * T[w[::-1]] for w in words}


def _csolve(M, rhs):
    """Dense complex solve by Gaussian elimination with partial pivoting."""
    n = len(M)
    aug = [list(M[i]) + [rhs[i]] for i in range(n)]
    for c in range(n):
        piv = max(range(c, n), key=lambda r: abs(aug[r][c]))
        if aug[piv][c] == 0:
            raise ValueError("singular extrapolation system")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        for r in range(c + 1, n):
            f = aug[r][c] * inv
            if f == 0:
                continue
            for j in range(c, n + 1):
                aug[r][j] -= f * aug[c][j]
    x = [mpmath.mpc(0)] * n
    for r in range(n - 1, -1, -1):
        acc = aug[r][n]
        for j in range(r + 1, n):
            acc -= aug[r][j] * x[j]
        x[r] = acc / aug[r][r]
    return x


def _seg_dist(z0, z1, a):
    v = z1 - z0
    den = abs(v) ** 2
    if den == 0:
        return abs(a - z0)
    t = ((a - z0) * v.conjugate()).real / den
    t = max(0, min(1, t))
    return abs(z0 + t * v - a)


def _mesh(z0, V, s0, s1, poles):
    """rho-rule bisection of the parameter interval [s0, s1].

    Intervals whose distance to every pole is at least 5/4 of their length
    are accepted; the rest are halved.  Toward an endpoint pole this
    produces geometrically shrinking panels, so the depth needed grows
    like log2 of the starting offset and the cap is set generously.
    """
    ratio = mpmath.mpf(5) / 4
    out = []
    stack = [(s0, s1, 0)]
    while stack:
        a, b, depth = stack.pop()
        p0 = z0 + a * V
        p1 = z0 + b * V
        length = abs(V) * (b - a)
        dist = min((_seg_dist(p0, p1, q) for q in poles), default=None)
        if dist is None or dist >= ratio * length:
            out.append((a, b))
            continue
        if depth >= 900:
            raise ValueError(
                "quadrature mesh failed to resolve a singularity on the path"
            )
        m = (a + b) / 2
        stack.append((m, b, depth + 1))
        stack.append((a, m, depth + 1))
    out.sort()
    return out


def _panel(nodes, S, z0, V, s0, s1, W_sorted, poles, used):
    """All-subword iterated integrals over one panel, endpoint values."""
    h = (s1 - s0) / 2
    zs = [z0 + (s0 + (x + 1) * h) * V for x in nodes]
    dz = V * h
    samples = {lid: [dz / (z - poles[lid]) for z in zs] for lid in used}
    n = len(nodes)
    G = {(): [mpmath.mpc(1)] * n}
    out = {(): mpmath.mpc(1)}
    for w in W_sorted:
        prev = G[w[:-1]]
        f = samples[w[-1]]
        integ = [pv * fv for pv, fv in zip(prev, f)]
        vals = []
        for row in S:
            acc = mpmath.mpc(0)
            for c, iv in zip(row, integ):
                if iv != 0:
                    acc += c * iv
            vals.append(acc)
        G[w] = vals
        out[w] = vals[-1]
    return out


def _chain(panels_bounds, nodes, S, z0, V, W, W_sorted, poles, used):
    T = {(): mpmath.mpc(1)}
    first = True
    for s0, s1 in panels_bounds:
        P = _panel(nodes, S, z0, V, s0, s1, W_sorted, poles, used)
        T = P if first else _mul(T, P, W)
        first = False
    return T


def _leading_run(w, lid):
    r = 0
    for x in w:
        if x != lid:
            break
        r += 1
    return r


# -- regularized piece -------------------------------------------------------


def _reg_piece(z0, z1, sing, lam, apply_factor, poles, W, W_sorted, J, delta0, d, bits, route):
    """Transport over [z0, z1] whose start anchor z0 carries the pole ``sing``.

    The returned dict is the delta -> 0 limit; ``lam`` is the tangent
    vector of the tangential base point at z0.
    """
    V = z1 - z0
    rmax = max((_leading_run(w, sing) for w in W), default=0)
    L = rmax + J + 2
    nodes, S = _cheb(d, bits)
    deltas = [delta0 * 2**i for i in range(L)]
    used = {w[-1] for w in W_sorted}
    # octave panels along the ladder, then a rho-ruled mesh to the far end
    tail_bounds = _mesh(z0, V, deltas[-1], mpmath.mpf(1), list(poles.values()))
    tail = _chain(tail_bounds, nodes, S, z0, V, W, W_sorted, poles, used)
    U = [None] * L
    U[L - 1] = tail
    for i in range(L - 2, -1, -1):
        P = _panel(nodes, S, z0, V, deltas[i], deltas[i + 1], W_sorted, poles, used)
        U[i] = _mul(P, U[i + 1], W)
    lrs = [mpmath.log(dl * V / lam) for dl in deltas]

    if route == "mortar":
        if apply_factor:
            for i in range(J + 2):
                E = {}
                pw = mpmath.mpc(1)
                fact = mpmath.mpf(1)
                for j in range(rmax + 1):
                    E[(sing,) * j] = pw / fact
                    pw *= lrs[i]
                    fact *= j + 1
                U[i] = _mul(E, U[i], W)
        n = J + 2
        rows = []
        for i in range(n):
            row = [mpmath.mpc(1)]
            for j in range(J + 1):
                row.append(deltas[i] * lrs[i] ** j)
            rows.append(row)
        out = {}
        for w in W:
            out[w] = _csolve(rows, [U[i][w] for i in range(n)])[0]
        return out

    # droplog: fit powers of log(delta/lambda) directly, keep the constant
    out = {}
    for w in W:
        r = _leading_run(w, sing) if apply_factor else 0
        n = r + J + 2
        rows = []
        for i in range(n):
            row = [lrs[i] ** j for j in range(r + 1)]
            row += [deltas[i] * lrs[i] ** j for j in range(J + 1)]
            rows.append(row)
        out[w] = _csolve(rows, [U[i][w] for i in range(n)])[0]
    return out


# -- the full-path engine ----------------------------------------------------


def _delta0(eps, J):
    dl = mpmath.sqrt(eps / 8)
    for _ in range(3):
        dl = mpmath.sqrt(eps / (8 * max(1, -mpmath.log(dl)) ** J))
    return mpmath.mpf(2) ** mpmath.floor(mpmath.log(dl, 2))


def _coerce_point(v):
    if isinstance(v, BigC):
        return v.mpc()
    return mpmath.mpc(v)


def _transport_words(path: PathSpec, poles: dict, words, bits: int, eps, route: str):
    if route not in ("mortar", "droplog"):
        raise ValueError(f"unknown regularization route {route!r}")
    verts = [_coerce_point(v) for v in path.vertices]
    for a, b in zip(verts, verts[1:]):
        if a == b:
            raise ValueError("path has a zero-length segment")
    atol = mpmath.mpf(2) ** -40
    nseg = len(verts) - 1

    def near(a, b):
        return abs(a - b) <= atol * (1 + abs(b))

    start_lid = next((lid for lid, a in poles.items() if near(a, verts[0])), None)
    end_lid = next((lid for lid, a in poles.items() if near(a, verts[-1])), None)

    full = set(words)
    if any(w and w[0] == start_lid for w in full) and not path.start_regularized():
        raise ValueError(
            "the word diverges at the path start; tangential regularization "
            "data is required there"
        )
    if any(w and w[-1] == end_lid for w in full) and not path.end_regularized():
        raise ValueError(
            "the word diverges at the path end; tangential regularization "
            "data is required there"
        )

    W = _subword_closure(full)
    if end_lid is not None:
        W |= {w[::-1] for w in W}
    W = frozenset(W)
    W_sorted = sorted((w for w in W if w), key=len)
    used = {w[-1] for w in W_sorted} | {w[0] for w in W_sorted}

    # a pole may touch the path only at a terminal anchor
    for lid, a in poles.items():
        if lid not in used:
            continue
        for i in range(nseg):
            if i == 0 and lid == start_lid:
                continue
            if i == nseg - 1 and lid == end_lid:
                continue
            if _seg_dist(verts[i], verts[i + 1], a) < atol * (1 + abs(a)):
                raise ValueError(
                    "the path passes through a non-integrable singularity "
                    f"of the form with pole {mpmath.nstr(a, 8)}"
                )

    J = max((len(w) for w in W), default=1)
    dl0 = _delta0(eps, J)
    bits_t = int(ceil(-mpmath.log(eps, 2))) + 24
    d = 8 * ceil((0.4 * bits_t + 18) / 8)
    nodes, S = _cheb(d, bits)

    lam_s = path.start_direction()
    lam_s = _coerce_point(lam_s) if lam_s is not None else verts[1] - verts[0]
    lam_e = path.end_direction()
    lam_e = _coerce_point(lam_e) if lam_e is not None else verts[-2] - verts[-1]

    T = {(): mpmath.mpc(1)}
    have = False
    for i in range(nseg):
        z0, z1 = verts[i], verts[i + 1]
        s_sing = start_lid if i == 0 else None
        e_sing = end_lid if i == nseg - 1 else None
        pieces = []
        if s_sing is not None and e_sing is not None:
            zm = (z0 + z1) / 2
            pieces.append(("s", z0, zm, s_sing))
            pieces.append(("e", zm, z1, e_sing))
        elif s_sing is not None:
            pieces.append(("s", z0, z1, s_sing))
        elif e_sing is not None:
            pieces.append(("e", z0, z1, e_sing))
        else:
            pieces.append(("p", z0, z1, None))
        for kind, a, b, sing in pieces:
            if kind == "p":
                V = b - a
                bounds = _mesh(a, V, mpmath.mpf(0), mpmath.mpf(1), [poles[u] for u in used])
                piece = _chain(bounds, nodes, S, a, V, W, W_sorted, poles, used)
            elif kind == "s":
                dl = dl0 / max(1, abs(b - a))
                piece = _reg_piece(
                    a, b, sing, lam_s, path.start_regularized(), poles, W, W_sorted,
                    J, dl, d, bits, route,
                )
            else:
                dl = dl0 / max(1, abs(b - a))
                rev = _reg_piece(
                    b, a, sing, lam_e, path.end_regularized(), poles,
                    W, W_sorted, J, dl, d, bits, route,
                )
                piece = _flip(rev, W)
            T = piece if not have else _mul(T, piece, W)
            have = True
    return T


# -- public surface ----------------------------------------------------------


def _pole_value(spec):
    if isinstance(spec, str):
        if spec == "w0":
            return mpmath.mpc(0)
        raise ValueError(f"unknown form label {spec!r}")
    if isinstance(spec, Root):
        return mpmath.mpc(root_of_unity(spec))
    if isinstance(spec, BigC):
        return spec.mpc()
    return mpmath.mpc(spec)


def _eps_default(eps, p):
    if eps is None:
        return mpmath.mpf(2) ** (8 - p)
    return mpmath.mpf(eps)


def _run_word(path, word, p, eps, route):
    bits_t = int(ceil(-mpmath.log(eps, 2))) + 24
    bits = bits_t + 96
    with mpmath.workprec(bits):
        table = []
        ids = []
        for spec in word:
            a = _pole_value(spec)
            for j, b in enumerate(table):
                if abs(a - b) < mpmath.mpf(2) ** (-bits_t):
                    ids.append(j)
                    break
            else:
                table.append(a)
                ids.append(len(table) - 1)
        ids = tuple(ids)
        poles = dict(enumerate(table))
        T = _transport_words(path, poles, {ids}, bits, eps, route)
        return T[ids]


def iterint(path: PathSpec, word, p: int = 128, *, eps=None, reg_route: str = "mortar",
            estimate: bool = False):
    """Regularized iterated integral of one word along a path.

    Word entries are form labels: "w0" for dz/z, a Root r for dz/(z - r),
    or any complex number for a general logarithmic pole.  With
    ``estimate=True`` the value is recomputed on a refined subdivision
    and returned together with the observed-change error estimate.
    """
    word = tuple(word)
    if not word:
        raise ValueError("the word must contain at least one form")
    eps = _eps_default(eps, p)
    v = _run_word(path, word, p, eps, reg_route)
    if not estimate:
        return BigC.from_mpc(v, p)
    v2 = _run_word(path, word, p, eps / 256, reg_route)
    with mpmath.workprec(p + 16):
        est = abs(v - v2) + mpmath.mpf(eps) / 256
    return BigC.from_mpc(v2, p), est


def transport(path: PathSpec, alphabet: Alphabet, omega: int, p: int = 128, *,
              poles=None, words=None, eps=None, reg_route: str = "mortar") -> NCS:
    """Chen series of the logarithmic connection along a path, to weight omega.

    The coefficient of a word w is the iterated integral of w's forms
    (first letter nearest the path start), so the series composes
    contravariantly: series(path1 then path2) = series(path1) * series(path2).
    For a level-N alphabet the default connection puts dz/z on the first
    letter and dz/(z - zeta^k) on the letter of the k-th root.
    """
    if omega < 1:
        raise ValueError("the weight cutoff must be at least 1")
    eps = _eps_default(eps, p)
    bits_t = int(ceil(-mpmath.log(eps, 2))) + 24
    bits = bits_t + 96
    with mpmath.workprec(bits):
        nlet = len(alphabet.generators)
        if poles is None:
            if alphabet.kind != "KZ":
                raise ValueError("an explicit pole assignment is required here")
            poles = {0: mpmath.mpc(0)}
            for k in range(alphabet.level):
                poles[1 + k] = mpmath.mpc(root_of_unity(Root(k, alphabet.level)))
        else:
            poles = {lid: _pole_value(a) for lid, a in poles.items()}
        if words is None:
            wordset = set()
            for n in range(1, omega + 1):
                wordset.update(iproduct(range(nlet), repeat=n))
        else:
            wordset = {tuple(w) for w in words}
            if any(len(w) > omega for w in wordset):
                raise ValueError("a requested word exceeds the weight cutoff")
        T = _transport_words(path, poles, wordset, bits, eps, reg_route)
        dom = complex_domain()
        coeffs = {w: v for w, v in T.items() if len(w) <= omega}
        coeffs[()] = dom.one
        return NCS(alphabet, omega, dom, coeffs)


def shuffle_words(u, v):
    """All shuffles of two words, with multiplicity."""
    u, v = tuple(u), tuple(v)
    if not u:
        return [v]
    if not v:
        return [u]
    return [(u[0],) + w for w in shuffle_words(u[1:], v)] + [
        (v[0],) + w for w in shuffle_words(u, v[1:])
    ]
