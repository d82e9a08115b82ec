"""The mod-D^2 model of the elliptic level-N holonomy algebra.

Below depth 2 the algebra splits as span{X, Y} plus one Sym(X,Y)-column per
residue k = 0..N-1 (the image of the t_k-isotypic piece; k=0 is the derived
letter).  Because [X,Y] acts through depth 1, the adjoint actions of X and Y
commute on columns, which is why ordinary commutative polynomials suffice.

An element is (a, b, f_0..f_{N-1}): the linear part a*X + b*Y and column
polynomials f_k.  The bracket closes on this data:

    [(a,b,f), (a',b',f')]_k = (a b' - a' b) * 1 + (a X + b Y) f'_k
                                              - (a' X + b' Y) f_k

with the unit landing in every column since [X,Y] = sum_k t_k.

On top of the model: the depth-1 inner derivations eps_op, the fused image
of genus-zero elements under the elliptic embedding, the local monodromy
operator exp(L * Y d/dX), de Rham splittings of the weight-graded
subquotients, rational Betti bases for the cyclotomic variation, and exact
rank computation for derivation families.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .bernoulli import bernoulli_number
from .errors import ContractViolation
from .freelie import Alphabet, LieElt, Word, standard_factorization
from .linalg import rank
from .rings import RATIONAL, SYMBOLIC, CoeffDomain, SymPoly, XYPoly, lam
from .rings import L as L_SYM
from .roots import Root


class PolyQuot:
    """Element (a, b, columns) of the mod-D^2 model at level N.

    ``cutoff`` is the weight bound shared with Lie elements: a column
    monomial X^i Y^j rides a t-letter of weight 2, so columns are truncated
    at total degree cutoff - 2.
    """

    __slots__ = ("level", "cutoff", "domain", "a", "b", "cols")

    def __init__(self, level: int, cutoff: int, domain: CoeffDomain, a=None, b=None, cols=None):
        if level < 1:
            raise ValueError("level must be >= 1")
        if cutoff < 2:
            raise ValueError("cutoff must be >= 2")
        self.level = level
        self.cutoff = cutoff
        self.domain = domain
        self.a = domain.zero if a is None else a
        self.b = domain.zero if b is None else b
        maxdeg = cutoff - 2
        if cols is None:
            self.cols = [XYPoly.zero(domain) for _ in range(level)]
        else:
            if len(cols) != level:
                raise ValueError("need one column per residue")
            self.cols = [c.truncate(maxdeg) for c in cols]

    @property
    def maxdeg(self) -> int:
        return self.cutoff - 2

    # -- constructors ----------------------------------------------------
    @staticmethod
    def zero(level, cutoff, domain=RATIONAL) -> "PolyQuot":
        return PolyQuot(level, cutoff, domain)

    @staticmethod
    def x_vector(level, cutoff, domain=RATIONAL) -> "PolyQuot":
        return PolyQuot(level, cutoff, domain, a=domain.one)

    @staticmethod
    def y_vector(level, cutoff, domain=RATIONAL) -> "PolyQuot":
        return PolyQuot(level, cutoff, domain, b=domain.one)

    @staticmethod
    def column(level, cutoff, k: int, poly: XYPoly) -> "PolyQuot":
        cols = [XYPoly.zero(poly.domain) for _ in range(level)]
        cols[k % level] = poly
        return PolyQuot(level, cutoff, poly.domain, cols=cols)

    # -- basics ----------------------------------------------------------
    def _compat(self, other: "PolyQuot"):
        if (self.level, self.cutoff, self.domain.tag) != (
            other.level,
            other.cutoff,
            other.domain.tag,
        ):
            raise ValueError("model mismatch")

    def is_zero(self) -> bool:
        return (
            self.domain.is_zero(self.a)
            and self.domain.is_zero(self.b)
            and all(c.is_zero() for c in self.cols)
        )

    def linear_is_zero(self) -> bool:
        return self.domain.is_zero(self.a) and self.domain.is_zero(self.b)

    def __add__(self, other: "PolyQuot") -> "PolyQuot":
        self._compat(other)
        return PolyQuot(
            self.level,
            self.cutoff,
            self.domain,
            self.a + other.a,
            self.b + other.b,
            [c + d for c, d in zip(self.cols, other.cols)],
        )

    def __neg__(self) -> "PolyQuot":
        return PolyQuot(
            self.level, self.cutoff, self.domain, -self.a, -self.b, [-c for c in self.cols]
        )

    def __sub__(self, other: "PolyQuot") -> "PolyQuot":
        return self + (-other)

    def scale(self, c) -> "PolyQuot":
        return PolyQuot(
            self.level,
            self.cutoff,
            self.domain,
            c * self.a,
            c * self.b,
            [col.scale(c) for col in self.cols],
        )

    def __eq__(self, other):
        if not isinstance(other, PolyQuot):
            return NotImplemented
        try:
            self._compat(other)
        except ValueError:
            return False
        return (self - other).is_zero()

    def bracket(self, other: "PolyQuot") -> "PolyQuot":
        self._compat(other)
        dom = self.domain
        maxdeg = self.maxdeg
        det = self.a * other.b - other.a * self.b
        lin_s = XYPoly(dom, {(1, 0): self.a, (0, 1): self.b})
        lin_o = XYPoly(dom, {(1, 0): other.a, (0, 1): other.b})
        unit = XYPoly.const(dom, det)
        cols = []
        for f, g in zip(self.cols, other.cols):
            h = unit + lin_s * g - lin_o * f
            cols.append(h.truncate(maxdeg))
        return PolyQuot(self.level, self.cutoff, dom, cols=cols)

    def map_coeffs(self, fn, domain: CoeffDomain) -> "PolyQuot":
        return PolyQuot(
            self.level,
            self.cutoff,
            domain,
            fn(self.a),
            fn(self.b),
            [c.map_coeffs(fn, domain) for c in self.cols],
        )

    def to_symbolic(self) -> "PolyQuot":
        if self.domain.tag == "symbolic":
            return self
        if self.domain.tag != "rational":
            raise ValueError("only rational elements lift to the symbolic domain")
        return self.map_coeffs(SymPoly.const, SYMBOLIC)

    def __repr__(self):
        parts = []
        if not self.domain.is_zero(self.a):
            parts.append(f"({self.a})*X")
        if not self.domain.is_zero(self.b):
            parts.append(f"({self.b})*Y")
        for k, c in enumerate(self.cols):
            if not c.is_zero():
                parts.append(f"[{c}]t{k}")
        return " + ".join(parts) if parts else "0"


# -- projection and the fused elliptic image --------------------------------


def _morphism_image(u: LieElt, letter_image, level: int) -> PolyQuot:
    cutoff = u.cutoff
    cache: dict[Word, PolyQuot] = {}

    def img(w: Word) -> PolyQuot:
        got = cache.get(w)
        if got is None:
            if len(w) == 1:
                got = letter_image(w[0])
            else:
                x, y = standard_factorization(w)
                got = img(x).bracket(img(y))
            cache[w] = got
        return got

    out = PolyQuot.zero(level, cutoff)
    for w, c in u.coeffs.items():
        out = out + img(w).scale(c)
    return out


def project_mod_D2(u: LieElt) -> PolyQuot:
    """Quotient map p -> p/D^2 for elements of the elliptic algebra."""
    if u.alphabet.kind != "KZB":
        raise ValueError("project_mod_D2 expects a KZB-alphabet element")
    level, cutoff = u.alphabet.level, u.cutoff

    def letter_image(i: int) -> PolyQuot:
        if i == 0:
            return PolyQuot.x_vector(level, cutoff)
        if i == 1:
            return PolyQuot.y_vector(level, cutoff)
        return PolyQuot.column(level, cutoff, i - 1, XYPoly.const(RATIONAL, Fraction(1)))

    return _morphism_image(u, letter_image, level)


def _psi0_model(level: int, cutoff: int) -> PolyQuot:
    # image of e0: Y plus the Bernoulli tail sum_{n>=1} (B_n/n!) X^(n-1)
    # in every column, since each adjoint step by X multiplies columns by X
    # and the first bracket [X,Y] feeds the unit into all of them.
    tail: dict[tuple[int, int], Fraction] = {}
    for n in range(1, cutoff):
        c = bernoulli_number(n) / factorial(n)
        if c:
            tail[(n - 1, 0)] = c
    poly = XYPoly(RATIONAL, tail)
    return PolyQuot(
        level, cutoff, RATIONAL, b=Fraction(1), cols=[poly for _ in range(level)]
    )


def hain_mod_d2(u: LieElt) -> PolyQuot:
    """Image of a genus-zero element under the elliptic embedding, reduced
    mod D^2: the fused composite of the embedding and project_mod_D2."""
    if u.alphabet.kind != "KZ":
        raise ValueError("hain_mod_d2 expects a KZ-alphabet element")
    level, cutoff = u.alphabet.level, u.cutoff
    psi0 = _psi0_model(level, cutoff)

    def letter_image(i: int) -> PolyQuot:
        if i == 0:
            return psi0
        return PolyQuot.column(level, cutoff, i - 1, XYPoly.const(RATIONAL, Fraction(1)))

    return _morphism_image(u, letter_image, level)


# -- inner derivations ------------------------------------------------------


@dataclass
class InnerDer:
    """ad(u) for a column-only u: kills columns, multiplies the linear part
    into u with a sign: v = aX + bY maps to -(aX + bY) * u."""

    u: PolyQuot
    m: int | None = None

    def __post_init__(self):
        if not self.u.linear_is_zero():
            raise ValueError("inner derivation requires a column-only element")

    @property
    def level(self) -> int:
        return self.u.level

    def apply(self, v: PolyQuot) -> PolyQuot:
        return self.u.bracket(v)

    def is_zero(self) -> bool:
        return self.u.is_zero()

    def __add__(self, other: "InnerDer") -> "InnerDer":
        return InnerDer(self.u + other.u)

    def scale(self, c) -> "InnerDer":
        return InnerDer(self.u.scale(c))

    def vector(self, monomials: list[tuple[int, int]]) -> list:
        """Flat coefficient vector over (column, monomial) coordinates."""
        out = []
        for col in self.u.cols:
            out.extend(col.coeff(i, j) for (i, j) in monomials)
        return out

    def to_json(self) -> dict:
        out: dict = {"N": self.u.level}
        if self.m is not None:
            out["m"] = self.m
        out["columns"] = {
            str(k): str(c) for k, c in enumerate(self.u.cols) if not c.is_zero()
        }
        return out


def eps_op(m: int, r: Root, cutoff: int | None = None) -> InnerDer:
    """The depth-1 derivation with columns Y^(m-1) at r and (-1)^(m+1) at
    conj(r); for self-conjugate r the two land in one column, so the even-m
    ones vanish identically."""
    if m < 2:
        raise ValueError("m must be >= 2")
    N = r.level
    if cutoff is None:
        cutoff = m + 2
    dom = RATIONAL
    cols = [XYPoly.zero(dom) for _ in range(N)]
    base = XYPoly.monomial(dom, 0, m - 1)
    cols[r.k] = cols[r.k] + base
    kc = r.conj().k
    cols[kc] = cols[kc] + base.scale(Fraction((-1) ** (m + 1)))
    return InnerDer(PolyQuot(N, cutoff, dom, cols=cols), m=m)


# -- local monodromy --------------------------------------------------------


def monodromy_hq(v: PolyQuot) -> PolyQuot:
    """exp(L * Y d/dX): the substitution X -> X + L*Y on the linear part and
    every column; L is the formal full-turn period."""
    if v.domain.tag != "symbolic":
        raise ValueError("monodromy acts on the symbolic domain")
    return PolyQuot(
        v.level,
        v.cutoff,
        v.domain,
        v.a,
        v.b + L_SYM * v.a,
        [c.shift_x(L_SYM) for c in v.cols],
    )


# -- de Rham splittings of the weight subquotients --------------------------


@dataclass
class VSplit:
    """De Rham splitting data of the weight-m subquotient at a root.

    x_image/y_image are the splitting's values on X and Y (single-column
    corrections with the symbolic polylogarithm coefficient); derivation is
    the rational obstruction, and coefficient the factor lambda with
    splitting = 1 + coefficient * derivation whenever the class is nonzero.
    """

    m: int
    root: Root
    x_image: PolyQuot
    y_image: PolyQuot
    derivation: InnerDer
    coefficient: SymPoly


def vsplit_derivation(m: int, r: Root, cutoff: int | None = None) -> VSplit:
    if m < 2:
        raise ValueError("m must be >= 2")
    if cutoff is None:
        cutoff = m + 2
    N = r.level
    lam_sym = lam(m, r.k)
    x_vec = PolyQuot.x_vector(N, cutoff, SYMBOLIC)
    y_vec = PolyQuot.y_vector(N, cutoff, SYMBOLIC)
    x_corr = PolyQuot.column(
        N, cutoff, r.k, XYPoly.monomial(SYMBOLIC, 1, m - 1).scale(-lam_sym)
    )
    y_corr = PolyQuot.column(
        N, cutoff, r.k, XYPoly.monomial(SYMBOLIC, 0, m).scale(-lam_sym)
    )
    x_image = x_vec + x_corr
    y_image = y_vec + y_corr

    der = eps_op(m, r, cutoff)
    self_conj = r.is_self_conjugate
    coefficient = lam_sym / 2 if self_conj else lam_sym

    if self_conj and m % 2 == 0:
        # the subquotient splits: the correction is already rational in the
        # Betti structure and the obstruction derivation vanishes
        if not der.is_zero():
            raise ContractViolation(
                "vsplit-even-self-conjugate", "expected the zero derivation"
            )
    else:
        # paired splitting: add the conjugate-root correction, identifying
        # the conjugate coefficient via the parity relation
        sym_der = InnerDer(der.u.to_symbolic())
        for gen, image in ((x_vec, x_image), (y_vec, y_image)):
            paired = image
            if not self_conj:
                conj_corr = PolyQuot.column(
                    N,
                    cutoff,
                    r.conj().k,
                    _conj_correction(gen, m).scale(
                        -Fraction((-1) ** (m + 1)) * lam_sym
                    ),
                )
                paired = paired + conj_corr
            expect = gen + sym_der.apply(gen).scale(coefficient)
            if not (paired - expect).is_zero():
                raise ContractViolation(
                    "vsplit-derivation",
                    f"splitting disagrees with 1 + lambda * eps at m={m}, {r.label()}",
                )
    return VSplit(m, r, x_image, y_image, der, coefficient)


def _conj_correction(gen: PolyQuot, m: int) -> XYPoly:
    if not gen.domain.is_zero(gen.a):
        return XYPoly.monomial(SYMBOLIC, 1, m - 1)
    return XYPoly.monomial(SYMBOLIC, 0, m)


# -- rational Betti bases ---------------------------------------------------


@dataclass
class BettiVector:
    """A rational Betti generator of the cyclotomic variation.

    ``words`` gives the genus-zero expression (word string -> symbolic
    coefficient); ``model`` its elliptic image mod D^2.
    """

    weight: int
    words: dict[str, SymPoly]
    model: PolyQuot


def betti_basis_cyc(N: int, m_max: int) -> list[BettiVector]:
    """Betti generators up to weight -2(m_max+1).

    One combined weight -2 vector L*e0 - L*sum_{m>=2,k} lam_{m,k} e0^m z_k,
    then for every m = 0..m_max and residue k the pure vector
    L^(m+1) e0^m z_k; 1 + N*(m_max+1) vectors in all.
    """
    if m_max < 2:
        raise ValueError("m_max must be >= 2")
    cutoff = m_max + 2
    A = Alphabet.kz(N)
    out: list[BettiVector] = []

    def word(m: int, k: int) -> str:
        return A.word_str(tuple([0] * m + [k + 1]))

    # combined weight -2 vector
    words: dict[str, SymPoly] = {"e0": L_SYM}
    model = _psi0_model(N, cutoff).to_symbolic().scale(L_SYM)
    for m in range(2, m_max + 1):
        for k in range(N):
            words[word(m, k)] = -(L_SYM * lam(m, k))
            model = model + PolyQuot.column(
                N, cutoff, k, XYPoly.monomial(SYMBOLIC, 0, m).scale(-(L_SYM * lam(m, k)))
            )
    out.append(BettiVector(-2, words, model))

    # pure vectors L^(m+1) e0^m z_k of weight -2m-2
    for m in range(m_max + 1):
        Lp = SymPoly.symbol("L", m + 1)
        for k in range(N):
            vec = PolyQuot.column(
                N, cutoff, k, XYPoly.monomial(SYMBOLIC, 0, m).scale(Lp)
            )
            out.append(BettiVector(-2 * m - 2, {word(m, k): Lp}, vec))
    return out


# -- rank of derivation families --------------------------------------------


def depth1_rank(ders: list[InnerDer]) -> int:
    """Rank over Q of the derivations as vectors of column coefficients."""
    if not ders:
        return 0
    key = {(d.u.level, d.u.cutoff, d.u.domain.tag) for d in ders}
    if len(key) > 1:
        raise ValueError("derivations live in different models")
    if ders[0].u.domain.tag != "rational":
        raise ValueError("rank computation expects rational coefficients")
    monomials = sorted({mono for d in ders for col in d.u.cols for mono in col.terms})
    if not monomials:
        return 0
    rows = [d.vector(monomials) for d in ders]
    return rank(rows)
