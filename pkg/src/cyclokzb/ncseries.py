"""Truncated noncommutative power series over a pluggable coefficient domain.

Series index the free monoid on an Alphabet (all words, not just Lyndon),
truncated by the same weight cutoff as Lie elements. The domain is rational,
symbolic (polynomials in L and the lam symbols), or high-precision complex;
exact log and the group-like test are only meaningful over the exact domains,
where primitivity is decided by Lyndon reduction.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .bernoulli import bernoulli_number
from .errors import ContractViolation
from .freelie import Alphabet, LieElt, Word, lie_from_words
from .rings import RATIONAL, CoeffDomain


class NCS:
    """Noncommutative series: word -> coefficient, words of weight <= cutoff."""

    __slots__ = ("alphabet", "cutoff", "domain", "coeffs")

    def __init__(self, alphabet: Alphabet, cutoff: int, domain: CoeffDomain, coeffs=None):
        if cutoff < 1:
            raise ValueError("cutoff must be >= 1")
        self.alphabet = alphabet
        self.cutoff = cutoff
        self.domain = domain
        cc: dict[Word, object] = {}
        if coeffs:
            for w, c in coeffs.items():
                if alphabet.wdeg(w) <= cutoff and not domain.is_zero(c):
                    cc[w] = c
        self.coeffs = cc

    # -- constructors ----------------------------------------------------
    @staticmethod
    def unit(alphabet: Alphabet, cutoff: int, domain: CoeffDomain = RATIONAL) -> "NCS":
        return NCS(alphabet, cutoff, domain, {(): domain.one})

    @staticmethod
    def zero(alphabet: Alphabet, cutoff: int, domain: CoeffDomain = RATIONAL) -> "NCS":
        return NCS(alphabet, cutoff, domain)

    @staticmethod
    def from_lie(u: LieElt, domain: CoeffDomain = RATIONAL) -> "NCS":
        conv = domain.from_fraction
        return NCS(
            u.alphabet, u.cutoff, domain, {w: conv(c) for w, c in u.expand().items()}
        )

    # -- basics ----------------------------------------------------------
    def _compat(self, other: "NCS"):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        if self.cutoff != other.cutoff:
            raise ValueError("cutoff mismatch")
        if self.domain.tag != other.domain.tag:
            raise ValueError("domain mismatch")

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, word):
        if isinstance(word, str):
            word = self.alphabet.parse_word(word)
        return self.coeffs.get(tuple(word), self.domain.zero)

    def constant_term(self):
        return self.coeffs.get((), self.domain.zero)

    def __add__(self, other: "NCS") -> "NCS":
        self._compat(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out[w] + c if w in out else c
            if self.domain.is_zero(s):
                out.pop(w, None)
            else:
                out[w] = s
        res = NCS(self.alphabet, self.cutoff, self.domain)
        res.coeffs = out
        return res

    def __neg__(self) -> "NCS":
        res = NCS(self.alphabet, self.cutoff, self.domain)
        res.coeffs = {w: -c for w, c in self.coeffs.items()}
        return res

    def __sub__(self, other: "NCS") -> "NCS":
        return self + (-other)

    def scale(self, c) -> "NCS":
        if self.domain.is_zero(c):
            return NCS.zero(self.alphabet, self.cutoff, self.domain)
        res = NCS(self.alphabet, self.cutoff, self.domain)
        res.coeffs = {w: c * v for w, v in self.coeffs.items()}
        return res

    def __eq__(self, other):
        if not isinstance(other, NCS):
            return NotImplemented
        try:
            self._compat(other)
        except ValueError:
            return False
        return (self - other).is_zero()

    def map_coeffs(self, fn, domain: CoeffDomain) -> "NCS":
        return NCS(self.alphabet, self.cutoff, domain, {w: fn(c) for w, c in self.coeffs.items()})

    def words(self) -> list[Word]:
        return sorted(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w in sorted(self.coeffs, key=lambda w: (len(w), w))[:12]:
            label = self.alphabet.word_str(w) if w else "1"
            parts.append(f"({self.coeffs[w]})*{label}")
        tail = " + ..." if len(self.coeffs) > 12 else ""
        return " + ".join(parts) + tail

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        terms = []
        for w in sorted(self.coeffs, key=lambda w: (len(w), w)):
            entry: dict = {"word": self.alphabet.word_str(w)}
            c = self.coeffs[w]
            if self.domain.tag == "rational":
                entry["num"] = str(c.numerator)
                entry["den"] = str(c.denominator)
            else:
                entry["value"] = str(c)
            terms.append(entry)
        return {
            "alphabet": {"kind": self.alphabet.kind, "level": self.alphabet.level},
            "cutoff": self.cutoff,
            "domain": self.domain.tag,
            "terms": terms,
        }


# -- products ---------------------------------------------------------------


def mul(s: NCS, t: NCS) -> NCS:
    """Concatenation product, truncated by weight."""
    s._compat(t)
    A, cutoff, dom = s.alphabet, s.cutoff, s.domain
    left: dict[int, list] = {}
    for w, c in s.coeffs.items():
        left.setdefault(A.wdeg(w), []).append((w, c))
    right: dict[int, list] = {}
    for w, c in t.coeffs.items():
        right.setdefault(A.wdeg(w), []).append((w, c))
    out: dict[Word, object] = {}
    for da, items_a in left.items():
        for db, items_b in right.items():
            if da + db > cutoff:
                continue
            for wa, ca in items_a:
                for wb, cb in items_b:
                    w = wa + wb
                    p = ca * cb
                    if w in out:
                        acc = out[w] + p
                        if dom.is_zero(acc):
                            del out[w]
                        else:
                            out[w] = acc
                    else:
                        out[w] = p
    res = NCS(A, cutoff, dom)
    res.coeffs = {w: c for w, c in out.items() if not dom.is_zero(c)}
    return res


def _pow_accumulate(s: NCS, coeffs_by_power: Sequence) -> NCS:
    """sum_n a_n s^n with a_0 acting on the empty word."""
    dom = s.domain
    out = NCS.unit(s.alphabet, s.cutoff, dom).scale(coeffs_by_power[0])
    power = NCS.unit(s.alphabet, s.cutoff, dom)
    for n in range(1, len(coeffs_by_power)):
        power = mul(power, s)
        if power.is_zero():
            break
        out = out + power.scale(coeffs_by_power[n])
    return out


def exp_ncs(s: NCS) -> NCS:
    """exp of a series with zero constant term."""
    if not s.domain.is_zero(s.constant_term()):
        raise ValueError("exp needs a zero constant term")
    conv = s.domain.from_fraction
    nmax = s.cutoff  # letters weigh at least 1
    return _pow_accumulate(s, [conv(Fraction(1, factorial(n))) for n in range(nmax + 1)])


def log_ncs(s: NCS) -> NCS:
    """log of a series with constant term 1, as a word series."""
    one = s.domain.one
    if not s.domain.is_zero(s.constant_term() - one):
        raise ValueError("log needs constant term 1")
    x = s - NCS.unit(s.alphabet, s.cutoff, s.domain)
    conv = s.domain.from_fraction
    coeffs = [conv(Fraction(0))]
    for n in range(1, s.cutoff + 1):
        coeffs.append(conv(Fraction((-1) ** (n + 1), n)))
    return _pow_accumulate(x, coeffs)


def inverse(s: NCS) -> NCS:
    """Inverse of a series with constant term 1 (geometric series)."""
    one = s.domain.one
    if not s.domain.is_zero(s.constant_term() - one):
        raise ValueError("inverse needs constant term 1")
    x = s - NCS.unit(s.alphabet, s.cutoff, s.domain)
    conv = s.domain.from_fraction
    return _pow_accumulate(x, [conv(Fraction((-1) ** n)) for n in range(s.cutoff + 1)])


# -- the Lie interface ------------------------------------------------------


def exp(u: LieElt) -> NCS:
    """Group-like exponential of an exact Lie element."""
    return exp_ncs(NCS.from_lie(u))


def log(s: NCS) -> LieElt:
    """Primitive logarithm of a group-like rational series.

    A non-group-like input has a non-primitive logarithm, which the Lyndon
    reduction detects and reports as a ContractViolation.
    """
    if s.domain.tag != "rational":
        raise ValueError("exact log requires the rational domain")
    x = log_ncs(s)
    return lie_from_words(s.alphabet, s.cutoff, x.coeffs)


def is_group_like(s: NCS) -> bool:
    """Whether log(s) is primitive; exact domains only."""
    if s.domain.tag != "rational":
        raise ValueError("group-like test requires the rational domain")
    if not s.domain.is_zero(s.constant_term() - s.domain.one):
        return False
    try:
        log(s)
        return True
    except ContractViolation:
        return False


def ad_series(c: Sequence[Fraction], g: str, v: LieElt) -> LieElt:
    """sum_n c_n ad_g^n(v) for a generator symbol g."""
    A, cutoff = v.alphabet, v.cutoff
    gen = LieElt.gen(A, g, cutoff)
    out = v.scale(c[0]) if len(c) > 0 else LieElt.zero(A, cutoff)
    cur = v
    for n in range(1, len(c)):
        cur = gen.bracket(cur)
        if cur.is_zero():
            break
        out = out + cur.scale(c[n])
    return out


def conjugate(s: NCS, v: LieElt) -> LieElt:
    """Ad(s)(v) = log(s exp(v) s^-1) for group-like rational s."""
    if s.domain.tag != "rational":
        raise ValueError("conjugate requires the rational domain")
    prod = mul(mul(s, exp(v)), inverse(s))
    return log(prod)


def substitute_letters(s: NCS, images: dict[int, NCS]) -> NCS:
    """Algebra morphism determined by letter images.

    Images must share one target alphabet/cutoff/domain; each source word
    maps to the product of its letter images, with prefix products cached.
    """
    if not images:
        raise ValueError("need at least one letter image")
    tgt = next(iter(images.values()))
    out = NCS.zero(tgt.alphabet, tgt.cutoff, tgt.domain)
    cache: dict[Word, NCS] = {(): NCS.unit(tgt.alphabet, tgt.cutoff, tgt.domain)}

    def word_image(w: Word) -> NCS:
        got = cache.get(w)
        if got is None:
            got = mul(word_image(w[:-1]), images[w[-1]])
            cache[w] = got
        return got

    for w in sorted(s.coeffs, key=len):
        out = out + word_image(w).scale(s.coeffs[w])
    return out


# -- Bernoulli generating coefficients --------------------------------------


def bernoulli_coeffs(nmax: int, negative_argument: bool = False) -> list[Fraction]:
    """Taylor coefficients of x/(e^x - 1), or of x/(e^(-x) - 1) when asked.

    The second family satisfies x/(e^x-1) + x/(e^(-x)-1) = -x, the identity
    behind the puncture-sum relation for the elliptic letter images.
    """
    out = []
    for n in range(nmax + 1):
        c = bernoulli_number(n) / factorial(n)
        if negative_argument:
            c = -((-1) ** n) * c
        out.append(c)
    return out
