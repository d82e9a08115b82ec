"""Unit-interval Chen series and the loop-around-infinity consistency check.

Everything here is built from one object: the series of the level-N
connection transported along the straight path between 0 and 1 with unit
tangential directions at both ends.  Traversed from 1 to 0 it packages
the single-variable polylogarithm values at level-N roots (``dch_series``);
traversed from 0 to 1 it is the building block whose relabelings under
w -> w*eta and w -> 1/w assemble the two presentations of the loop around
infinity compared by ``star_check``.
"""

from __future__ import annotations

import mpmath

from ..freelie import Alphabet, kz_e_inf
from ..hain import hain_image
from ..ncseries import NCS, exp_ncs, inverse, mul, substitute_letters
from ..rings import complex_domain
from .bigc import two_pi_i
from .paths import dch_path
from .quadrature import transport

__all__ = ["dch_series", "star_check"]


def _depth_two_words(letters: int, omega: int) -> set[tuple[int, ...]]:
    """Words of weight <= omega with at most one letter other than e0."""
    words = {(0,) * a for a in range(1, omega + 1)}
    for k in range(1, letters):
        for a in range(omega):
            for b in range(omega - a):
                words.add((0,) * a + (k,) + (0,) * b)
    return words


def dch_series(
    level: int,
    omega: int,
    p: int = 128,
    *,
    eps=None,
    mod_d2: bool = True,
    reg_route: str = "mortar",
) -> NCS:
    """Regularized Chen series along the straight path from 1 to 0.

    Both endpoints carry unit tangential directions, so every coefficient
    is a regularized iterated integral.  With ``mod_d2`` (the default)
    only words containing at most one letter besides e0 are computed; in
    that quotient the coefficient of e0^a z_k e0^b is
    (-1)^a binom(a+b, a) Li_{a+b+1}(conj(zeta_N^k)) and pure-e0 words
    vanish.  Pass ``mod_d2=False`` for the full series up to the cutoff.
    """
    alphabet = Alphabet.kz(level)
    words = None
    if mod_d2:
        words = _depth_two_words(len(alphabet.generators), omega)
    return transport(
        dch_path(), alphabet, omega, p, words=words, eps=eps, reg_route=reg_route
    )


def _single_letter(alphabet: Alphabet, omega: int, dom, lid: int, c) -> NCS:
    return NCS(alphabet, omega, dom, {(lid,): dom.one * c})


def _rotate(series: NCS, j: int) -> NCS:
    """Relabel e_r -> e_{r eta} for eta = exp(2 pi i j / N): z_k -> z_{k+j}."""
    alphabet, omega, dom = series.alphabet, series.cutoff, series.domain
    level = alphabet.level
    images = {0: _single_letter(alphabet, omega, dom, 0, 1)}
    for k in range(level):
        images[1 + k] = _single_letter(alphabet, omega, dom, 1 + (k + j) % level, 1)
    return substitute_letters(series, images)


def star_check(level: int, p: int = 128, *, eps=None, perturb=None):
    """Maximum coefficient residual between the two loop presentations.

    The loop around the annulus is written once as
    Phi_inf1 . exp(L e_inf) . Phi_1inf and once as the star-shaped
    product of local pieces around 0 and each root of unity, with L equal
    to 2 pi i.  The two sides agree only in the annulus algebra, the
    quotient where the t-letters sum to [X, Y]; every factor is therefore
    pushed through the letter morphism e0 -> Y-series, z_k -> t_k before
    comparing, and the residual is the largest coefficient gap at weight
    <= 3 (where the square of the t-ideal is not yet visible, so this is
    the full depth-two comparison).

    ``perturb`` adds the given amount to one transported-series
    coefficient before assembling either side; a genuine identity must
    then fail, which is the negative control.  Supported for level <= 6.
    """
    if not 1 <= level <= 6:
        raise ValueError("the consistency check supports level <= 6 only")
    omega = 3
    alphabet = Alphabet.kz(level)
    dom = complex_domain()
    if eps is None:
        eps = mpmath.mpf(2) ** max(8 - p, -64)

    phi01_kz = transport(dch_path().reversed(), alphabet, omega, p, eps=eps)

    with mpmath.workprec(p + 64):
        if perturb is not None:
            # Bump the single-e0 coefficient: its image starts in weight
            # one, so the defect survives every conjugation at this cutoff.
            bumped = dict(phi01_kz.coeffs)
            w = (0,)
            bumped[w] = bumped.get(w, dom.zero) + mpmath.mpc(perturb)
            phi01_kz = NCS(alphabet, omega, dom, bumped)

        ell = two_pi_i()
        einf_kz = NCS.from_lie(kz_e_inf(alphabet, omega), dom)

        # Involution w -> 1/w at the source level: e0 -> e_1, e_1 -> e_inf,
        # e_zeta -> e_{conj(zeta)}.  It carries the path under the unit
        # interval's series to the ray from infinity to 1, so the
        # substituted series is the infinity-to-1 transport.
        images = {
            0: _single_letter(alphabet, omega, dom, 1, 1),
            1: einf_kz,
        }
        for k in range(1, level):
            images[1 + k] = _single_letter(alphabet, omega, dom, 1 + (level - k), 1)
        phi_inf1_kz = substitute_letters(phi01_kz, images)

        # Push everything into the annulus letters.
        him = {0: NCS.from_lie(hain_image("e0", omega, level), dom)}
        for k in range(level):
            him[1 + k] = NCS.from_lie(hain_image(f"z{k}", omega, level), dom)

        def h(series: NCS) -> NCS:
            return substitute_letters(series, him)

        phi01 = h(phi01_kz)
        phi_inf1 = h(phi_inf1_kz)
        einf = NCS.from_lie(hain_image("einf", omega, level), dom)

        theta_loop = mul(mul(phi_inf1, exp_ncs(einf.scale(ell))), inverse(phi_inf1))

        half_turn = exp_ncs(him[1].scale(-ell / 2))
        sector = exp_ncs(him[0].scale(-ell / level))
        acc = mul(half_turn, phi01)
        for j in range(1, level):
            rot = h(_rotate(phi01_kz, j))
            loop_j = exp_ncs(him[1 + j].scale(-ell))
            acc = mul(acc, mul(mul(mul(sector, inverse(rot)), loop_j), rot))
        theta_local = mul(mul(mul(acc, sector), inverse(phi01)), half_turn)

        residual = mpmath.mpf(0)
        compare = set(theta_loop.coeffs) | set(theta_local.coeffs) | {()}
        for w in compare:
            diff = abs(theta_loop.coeff(w) - theta_local.coeff(w))
            if diff > residual:
                residual = diff
        return residual
