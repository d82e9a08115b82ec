"""Truncated free Lie algebras over Q on the two holonomy alphabets.

The genus-zero (KZ) alphabet has a letter e0 for the form dw/w and letters
z0..z{N-1}, with zk attached to the puncture at exp(2*pi*i*k/N).  The
elliptic (KZB) alphabet has X, Y and t1..t{N-1}; the missing t0 is the
derived element [X,Y] - sum_k tk, which keeps the algebra genuinely free so
Lyndon-word machinery applies without quotient bookkeeping.

Elements live in the Lyndon basis for the listed generator order.  Brackets
expand through the tensor algebra and reduce back by triangularity: the
expansion of a Lyndon word w is w plus lexicographically larger words of the
same multidegree, so greedy elimination of the smallest support word is
exact and detects non-Lie input.

Degree conventions per generator (weight, Hodge-metric M, Hodge F, t-count):
each KZ letter is (1, 2, 1, t) with t = 1 exactly for the z-letters; on the
KZB side X is (1, 0, 0, 0), Y is (1, 2, 1, 0) and each tk is (2, 2, 1, 1).
The weight cutoff bounds every other grading, so one integer truncates all
series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import ContractViolation

Word = tuple[int, ...]


@dataclass(frozen=True)
class Generator:
    """One alphabet letter with its per-occurrence degree contributions."""

    symbol: str
    w: int
    m: int
    f: int
    t: int


class Alphabet:
    """Ordered generator list; order fixes the Lyndon basis."""

    __slots__ = ("kind", "level", "generators", "_index", "_single")

    def __init__(self, kind: str, level: int, generators: tuple[Generator, ...]):
        if kind not in ("KZ", "KZB"):
            raise ValueError(f"unknown alphabet kind {kind!r}")
        self.kind = kind
        self.level = level
        self.generators = tuple(generators)
        self._index = {g.symbol: i for i, g in enumerate(self.generators)}
        if len(self._index) != len(self.generators):
            raise ValueError("duplicate generator symbol")
        self._single = all(len(g.symbol) == 1 for g in self.generators)

    @staticmethod
    def kz(level: int) -> "Alphabet":
        if level < 1:
            raise ValueError("level must be >= 1")
        gens = [Generator("e0", 1, 2, 1, 0)]
        gens += [Generator(f"z{k}", 1, 2, 1, 1) for k in range(level)]
        return Alphabet("KZ", level, tuple(gens))

    @staticmethod
    def kzb(level: int) -> "Alphabet":
        if level < 1:
            raise ValueError("level must be >= 1")
        gens = [Generator("X", 1, 0, 0, 0), Generator("Y", 1, 2, 1, 0)]
        gens += [Generator(f"t{k}", 2, 2, 1, 1) for k in range(1, level)]
        return Alphabet("KZB", level, tuple(gens))

    def key(self):
        return (self.kind, self.level)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"Alphabet({self.kind}, N={self.level})"

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise ValueError(f"no generator {symbol!r} in {self!r}") from None

    def wdeg(self, word: Word) -> int:
        return sum(self.generators[i].w for i in word)

    def word_str(self, word: Word) -> str:
        syms = [self.generators[i].symbol for i in word]
        return "".join(syms) if self._single else ".".join(syms)

    def parse_word(self, s: str) -> Word:
        if not s:
            return ()
        if "." in s:
            return tuple(self.index(p) for p in s.split("."))
        if self._single:
            return tuple(self.index(ch) for ch in s)
        # greedy longest-match for undotted multi-character symbols
        out = []
        i = 0
        by_len = sorted(self._index, key=len, reverse=True)
        while i < len(s):
            for sym in by_len:
                if s.startswith(sym, i):
                    out.append(self._index[sym])
                    i += len(sym)
                    break
            else:
                raise ValueError(f"cannot parse word {s!r} over {self!r}")
        return tuple(out)


# -- Lyndon words -----------------------------------------------------------


def is_lyndon(word: Word) -> bool:
    """A nonempty word strictly smaller than every proper suffix."""
    if not word:
        return False
    return all(word < word[i:] for i in range(1, len(word)))


def standard_factorization(word: Word) -> tuple[Word, Word]:
    """Split a Lyndon word of length >= 2 as u*v, v the smallest proper
    suffix; both halves are Lyndon and the bracketing [u, v] is triangular."""
    if len(word) < 2:
        raise ValueError("factorization needs length >= 2")
    v = min(word[i:] for i in range(1, len(word)))
    return word[: len(word) - len(v)], v


def _lyndon_stream(weights: list[int], budget: int) -> Iterator[Word]:
    # Duval's iteration with the periodic extension capped by total weight:
    # any word needing a longer extension has an overweight prefix, hence
    # only overweight completions, so the cap loses nothing.
    q = len(weights)
    w = [0]
    if weights[0] <= budget:
        yield (0,)
    while True:
        total = sum(weights[c] for c in w)
        m = len(w)
        while True:
            nxt = w[len(w) - m]
            if total + weights[nxt] > budget:
                break
            w.append(nxt)
            total += weights[nxt]
        while w and w[-1] == q - 1:
            w.pop()
        if not w:
            return
        w[-1] += 1
        if sum(weights[c] for c in w) <= budget:
            yield tuple(w)


def lyndon_basis(alphabet: Alphabet, cutoff: int) -> list[Word]:
    """All Lyndon words of weight <= cutoff, lexicographically ordered."""
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    weights = [g.w for g in alphabet.generators]
    return list(_lyndon_stream(weights, cutoff))


# -- tensor-algebra expansion ----------------------------------------------

_EXPAND: dict[Word, dict[Word, Fraction]] = {}


def expand_word(word: Word) -> dict[Word, Fraction]:
    """Tensor-word expansion of the bracketing of a Lyndon word.

    Purely combinatorial in letter indices (degree data never enters), so
    the cache is shared across alphabets. All terms carry the multiset of
    letters of the input, and the input itself appears with coefficient 1
    as the lexicographically smallest term.
    """
    if len(word) == 1:
        return {word: Fraction(1)}
    cached = _EXPAND.get(word)
    if cached is not None:
        return cached
    u, v = standard_factorization(word)
    eu, ev = expand_word(u), expand_word(v)
    out: dict[Word, Fraction] = {}
    for wu, cu in eu.items():
        for wv, cv in ev.items():
            c = cu * cv
            for key, s in ((wu + wv, c), (wv + wu, -c)):
                acc = out.get(key, Fraction(0)) + s
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
    _EXPAND[word] = out
    return out


def lie_from_words(alphabet: Alphabet, cutoff: int, word_coeffs: dict[Word, Fraction]) -> "LieElt":
    """Rewrite a primitive tensor series in Lyndon coordinates.

    Greedy triangular elimination: the smallest support word must be Lyndon,
    its expansion is subtracted, repeat. A non-Lyndon minimum proves the
    input is not a Lie series.
    """
    work: dict[Word, Fraction] = {}
    for w, c in word_coeffs.items():
        if c and alphabet.wdeg(w) <= cutoff:
            work[w] = Fraction(c)
    lyn: dict[Word, Fraction] = {}
    while work:
        w = min(work)
        if not is_lyndon(w):
            raise ContractViolation(
                "lie-reduction",
                f"support word {alphabet.word_str(w)} is not Lyndon; not a Lie series",
            )
        c = work.pop(w)
        lyn[w] = c
        for w2, c2 in expand_word(w).items():
            if w2 == w:
                continue
            s = work.get(w2, Fraction(0)) - c * c2
            if s:
                work[w2] = s
            else:
                work.pop(w2, None)
    return LieElt(alphabet, cutoff, lyn, _checked=True)


# -- elements ---------------------------------------------------------------


class LieElt:
    """Lie algebra element in Lyndon coordinates, truncated by weight."""

    __slots__ = ("alphabet", "cutoff", "coeffs")

    def __init__(self, alphabet: Alphabet, cutoff: int, coeffs=None, _checked=False):
        if cutoff < 1:
            raise ValueError("cutoff must be >= 1")
        self.alphabet = alphabet
        self.cutoff = cutoff
        cc: dict[Word, Fraction] = {}
        if coeffs:
            for w, c in coeffs.items():
                c = Fraction(c)
                if not c:
                    continue
                if not _checked:
                    if not is_lyndon(w):
                        raise ValueError(f"{alphabet.word_str(w)} is not a Lyndon word")
                    if alphabet.wdeg(w) > cutoff:
                        raise ValueError(f"{alphabet.word_str(w)} exceeds cutoff {cutoff}")
                cc[w] = c
        self.coeffs = cc

    # -- constructors ----------------------------------------------------
    @staticmethod
    def zero(alphabet: Alphabet, cutoff: int) -> "LieElt":
        return LieElt(alphabet, cutoff)

    @staticmethod
    def gen(alphabet: Alphabet, symbol: str, cutoff: int) -> "LieElt":
        return LieElt(alphabet, cutoff, {(alphabet.index(symbol),): Fraction(1)}, _checked=True)

    # -- basics ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[Word]:
        return sorted(self.coeffs)

    def coeff(self, word) -> Fraction:
        if isinstance(word, str):
            word = self.alphabet.parse_word(word)
        return self.coeffs.get(tuple(word), Fraction(0))

    def _compat(self, other: "LieElt"):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        if self.cutoff != other.cutoff:
            raise ValueError("cutoff mismatch")

    def __add__(self, other: "LieElt") -> "LieElt":
        self._compat(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w, Fraction(0)) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return LieElt(self.alphabet, self.cutoff, out, _checked=True)

    def __neg__(self) -> "LieElt":
        return LieElt(
            self.alphabet, self.cutoff, {w: -c for w, c in self.coeffs.items()}, _checked=True
        )

    def __sub__(self, other: "LieElt") -> "LieElt":
        return self + (-other)

    def scale(self, q) -> "LieElt":
        q = Fraction(q)
        if not q:
            return LieElt.zero(self.alphabet, self.cutoff)
        return LieElt(
            self.alphabet, self.cutoff, {w: q * c for w, c in self.coeffs.items()}, _checked=True
        )

    def __rmul__(self, q):
        return self.scale(q)

    def __eq__(self, other):
        if not isinstance(other, LieElt):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.cutoff == other.cutoff
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w in self.support():
            c = self.coeffs[w]
            name = f"[{self.alphabet.word_str(w)}]"
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{c}*{name}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    # -- structure -------------------------------------------------------
    def expand(self) -> dict[Word, Fraction]:
        """Tensor-word coefficients of this element."""
        out: dict[Word, Fraction] = {}
        for w, c in self.coeffs.items():
            for w2, c2 in expand_word(w).items():
                s = out.get(w2, Fraction(0)) + c * c2
                if s:
                    out[w2] = s
                else:
                    out.pop(w2, None)
        return out

    def bracket(self, other: "LieElt") -> "LieElt":
        return bracket(self, other)

    def degrees(self) -> dict:
        return degrees(self)

    def truncate(self, cutoff: int) -> "LieElt":
        return LieElt(
            self.alphabet,
            cutoff,
            {w: c for w, c in self.coeffs.items() if self.alphabet.wdeg(w) <= cutoff},
            _checked=True,
        )

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {
            "alphabet": {"kind": self.alphabet.kind, "level": self.alphabet.level},
            "cutoff": self.cutoff,
            "terms": [
                {
                    "word": self.alphabet.word_str(w),
                    "num": str(self.coeffs[w].numerator),
                    "den": str(self.coeffs[w].denominator),
                }
                for w in self.support()
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "LieElt":
        ab = data["alphabet"]
        maker = Alphabet.kz if ab["kind"] == "KZ" else Alphabet.kzb
        alphabet = maker(ab["level"])
        coeffs = {
            alphabet.parse_word(t["word"]): Fraction(int(t["num"]), int(t["den"]))
            for t in data["terms"]
        }
        return LieElt(alphabet, data["cutoff"], coeffs)


# -- operations -------------------------------------------------------------


def bracket(u: LieElt, v: LieElt) -> LieElt:
    u._compat(v)
    A, cutoff = u.alphabet, u.cutoff
    eu, ev = u.expand(), v.expand()
    prod: dict[Word, Fraction] = {}
    for wu, cu in eu.items():
        du = A.wdeg(wu)
        for wv, cv in ev.items():
            if du + A.wdeg(wv) > cutoff:
                continue
            c = cu * cv
            for key, s in ((wu + wv, c), (wv + wu, -c)):
                acc = prod.get(key, Fraction(0)) + s
                if acc:
                    prod[key] = acc
                else:
                    prod.pop(key, None)
    return lie_from_words(A, cutoff, prod)


def degrees(u: LieElt) -> dict:
    """Filtration placement {W, M, F, depth} of a nonzero element.

    W and M are the deepest weight layers containing u (minimum per-word
    codegree sum), F the first Hodge layer (maximum), depth the t-adic
    layer. KZB depth is exact up to 2: the relation [X,Y] = sum of t's can
    hide t-letters, so membership is decided in the mod-D^2 model and
    anything deeper reports 2.
    """
    if u.is_zero():
        raise ValueError("degrees of the zero element are undefined")
    gens = u.alphabet.generators
    wdeg = min(sum(gens[i].w for i in w) for w in u.coeffs)
    mdeg = min(sum(gens[i].m for i in w) for w in u.coeffs)
    fdeg = max(sum(gens[i].f for i in w) for w in u.coeffs)
    if u.alphabet.kind == "KZ":
        depth = min(sum(gens[i].t for i in w) for w in u.coeffs)
    else:
        depth = _kzb_depth(u)
    return {"W": wdeg, "M": mdeg, "F": fdeg, "depth": depth}


def _kzb_depth(u: LieElt) -> int:
    if u.coeffs.get((0,)) or u.coeffs.get((1,)):
        return 0
    from .polyquot import project_mod_D2  # deferred: polyquot builds on this module

    return 1 if not project_mod_D2(u).is_zero() else 2


def project_mod_D2(u: LieElt):
    """Image in the mod-D^2 model (see polyquot); Lie morphism on generators."""
    from .polyquot import project_mod_D2 as _project

    return _project(u)


def apply_morphism(u: LieElt, images: dict[int, LieElt]) -> LieElt:
    """Linear extension of a Lie morphism given on generators.

    Lyndon words map recursively through their standard factorization; the
    target cutoff is taken from the images, which must agree.
    """
    first = next(iter(images.values()))
    tgt_alphabet, tgt_cutoff = first.alphabet, first.cutoff
    cache: dict[Word, LieElt] = {}

    def img(w: Word) -> LieElt:
        got = cache.get(w)
        if got is None:
            if len(w) == 1:
                got = images[w[0]]
            else:
                a, b = standard_factorization(w)
                got = bracket(img(a), img(b))
            cache[w] = got
        return got

    out = LieElt.zero(tgt_alphabet, tgt_cutoff)
    for w, c in u.coeffs.items():
        out = out + img(w).scale(c)
    return out


# -- derived letters --------------------------------------------------------


def kzb_t0(alphabet: Alphabet, cutoff: int) -> LieElt:
    """t0 = [X,Y] - sum_{k>=1} tk, the letter eliminated by the relation."""
    if alphabet.kind != "KZB":
        raise ValueError("t0 lives in the KZB alphabet")
    out = bracket(LieElt.gen(alphabet, "X", cutoff), LieElt.gen(alphabet, "Y", cutoff))
    for k in range(1, alphabet.level):
        out = out - LieElt.gen(alphabet, f"t{k}", cutoff)
    return out


def kz_e_inf(alphabet: Alphabet, cutoff: int) -> LieElt:
    """The letter at infinity: e0 + e_inf + sum_k zk = 0 defines it."""
    if alphabet.kind != "KZ":
        raise ValueError("e_inf lives in the KZ alphabet")
    out = -LieElt.gen(alphabet, "e0", cutoff)
    for k in range(alphabet.level):
        out = out - LieElt.gen(alphabet, f"z{k}", cutoff)
    return out
