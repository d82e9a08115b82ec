"""Level-N map from the punctured-line letters to the elliptic algebra.

The map sends the letter at 0 to the Bernoulli series (X/(e^X - 1)).Y, the
derived letter at infinity to (X/(e^{-X} - 1)).Y, and each root-of-unity
letter to the matching elliptic t-letter; being defined on free generators
it extends uniquely to a Lie morphism.
"""

from __future__ import annotations

from .freelie import Alphabet, LieElt, apply_morphism, kzb_t0
from .ncseries import ad_series, bernoulli_coeffs, conjugate, exp


def hain_image(name: str, omega: int, level: int = 1) -> LieElt:
    """Image of one genus-zero letter at W-cutoff omega.

    Accepted names: "e0", the derived "einf", and "z0".."z{N-1}"; the z0
    image is spelled through the defining relation for t0.
    """
    if omega < 1:
        raise ValueError("cutoff must be at least 1")
    target = Alphabet.kzb(level)
    if name in ("e0", "einf"):
        coeffs = bernoulli_coeffs(omega - 1, negative_argument=(name == "einf"))
        return ad_series(coeffs, "X", LieElt.gen(target, "Y", omega))
    if name.startswith("z") and name[1:].isdigit():
        k = int(name[1:])
        if k >= level:
            raise ValueError(f"no letter {name!r} at level {level}")
        if k == 0:
            return kzb_t0(target, omega)
        return LieElt.gen(target, f"t{k}", omega)
    raise ValueError(f"unknown generator {name!r}")


def hain_apply(u: LieElt) -> LieElt:
    """Lie-morphism extension of hain_image to a whole element."""
    if u.alphabet.kind != "KZ":
        raise ValueError("hain_apply expects a KZ-alphabet element")
    level = u.alphabet.level
    images = {0: hain_image("e0", u.cutoff, level)}
    for k in range(level):
        images[1 + k] = hain_image(f"z{k}", u.cutoff, level)
    return apply_morphism(u, images)


def cylinder_check(omega: int, perturb: bool = False) -> bool:
    """Conjugating the e0 image by e^X must give minus the e_inf image.

    True iff Ad(e^X)(psi(e0)) + psi(e_inf) vanishes at the cutoff; perturb
    swaps the e0 image for the bare letter Y as a negative control.
    """
    if omega < 2:
        raise ValueError("cutoff must be at least 2")
    target = Alphabet.kzb(1)
    psi0 = LieElt.gen(target, "Y", omega) if perturb else hain_image("e0", omega)
    x = LieElt.gen(target, "X", omega)
    lhs = conjugate(exp(x), psi0) + hain_image("einf", omega)
    return lhs.is_zero()
