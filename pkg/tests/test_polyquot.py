import random
from fractions import Fraction

import pytest

from cyclokzb.freelie import Alphabet, LieElt, bracket, lyndon_basis
from cyclokzb.polyquot import (
    BettiVector,
    InnerDer,
    PolyQuot,
    betti_basis_cyc,
    depth1_rank,
    eps_op,
    hain_mod_d2,
    monodromy_hq,
    project_mod_D2,
    vsplit_derivation,
)
from cyclokzb.rings import RATIONAL, SYMBOLIC, SymPoly, XYPoly, lam
from cyclokzb.rings import L as L_SYM
from cyclokzb.roots import Root

F = Fraction


def rand_model_elt(level, cutoff, rng):
    maxdeg = cutoff - 2
    cols = []
    for _ in range(level):
        terms = {}
        for _ in range(rng.randint(0, 3)):
            i, j = rng.randint(0, maxdeg), rng.randint(0, maxdeg)
            if i + j <= maxdeg:
                terms[(i, j)] = F(rng.randint(-3, 3))
        cols.append(XYPoly(RATIONAL, terms))
    return PolyQuot(
        level, cutoff, RATIONAL, F(rng.randint(-3, 3)), F(rng.randint(-3, 3)), cols
    )


class TestModelBracket:
    def test_xy_feeds_every_column(self):
        x = PolyQuot.x_vector(3, 5)
        y = PolyQuot.y_vector(3, 5)
        xy = x.bracket(y)
        assert xy.linear_is_zero()
        for col in xy.cols:
            assert col == XYPoly.const(RATIONAL, F(1))

    def test_column_only_brackets_vanish(self):
        u = PolyQuot.column(2, 5, 0, XYPoly.monomial(RATIONAL, 1, 1))
        v = PolyQuot.column(2, 5, 1, XYPoly.monomial(RATIONAL, 0, 2))
        assert u.bracket(v).is_zero()

    def test_antisymmetry_and_jacobi(self):
        rng = random.Random(19)
        for _ in range(4):
            u = rand_model_elt(2, 8, rng)
            v = rand_model_elt(2, 8, rng)
            w = rand_model_elt(2, 8, rng)
            assert u.bracket(u).is_zero()
            assert (u.bracket(v) + v.bracket(u)).is_zero()
            s = (
                u.bracket(v.bracket(w))
                + v.bracket(w.bracket(u))
                + w.bracket(u.bracket(v))
            )
            assert s.is_zero()


class TestProjection:
    def test_generators(self):
        A = Alphabet.kzb(2)
        X = LieElt.gen(A, "X", 5)
        Y = LieElt.gen(A, "Y", 5)
        t1 = LieElt.gen(A, "t1", 5)
        px = project_mod_D2(X)
        assert px.a == 1 and px.b == 0 and all(c.is_zero() for c in px.cols)
        assert project_mod_D2(t1).cols[1] == XYPoly.const(RATIONAL, F(1))
        xy = project_mod_D2(bracket(X, Y))
        assert all(c == XYPoly.const(RATIONAL, F(1)) for c in xy.cols)
        xxy = project_mod_D2(bracket(X, bracket(X, Y)))
        assert all(c == XYPoly.monomial(RATIONAL, 1, 0) for c in xxy.cols)

    def test_lie_morphism(self):
        rng = random.Random(23)
        A = Alphabet.kzb(3)
        basis = lyndon_basis(A, 5)
        for _ in range(4):
            words_u = rng.sample(basis, 2)
            words_v = rng.sample(basis, 2)
            u = LieElt(A, 5, {w: F(rng.randint(-2, 2), 1) for w in words_u})
            v = LieElt(A, 5, {w: F(rng.randint(-2, 2), 1) for w in words_v})
            lhs = project_mod_D2(bracket(u, v))
            rhs = project_mod_D2(u).bracket(project_mod_D2(v))
            assert lhs == rhs

    def test_kz_rejected(self):
        with pytest.raises(ValueError):
            project_mod_D2(LieElt.gen(Alphabet.kz(1), "e0", 4))


class TestHainModD2:
    def test_e0_image(self):
        A = Alphabet.kz(2)
        img = hain_mod_d2(LieElt.gen(A, "e0", 6))
        assert img.a == 0 and img.b == 1
        for col in img.cols:
            assert col.coeff(0, 0) == F(-1, 2)
            assert col.coeff(1, 0) == F(1, 12)
            assert col.coeff(2, 0) == 0
            assert col.coeff(3, 0) == F(-1, 720)

    def test_z_letter_image(self):
        A = Alphabet.kz(3)
        img = hain_mod_d2(LieElt.gen(A, "z2", 5))
        assert img.linear_is_zero()
        assert img.cols[2] == XYPoly.const(RATIONAL, F(1))
        assert img.cols[0].is_zero() and img.cols[1].is_zero()

    def test_adjoint_words(self):
        # e0^2 . z1 lands on Y^2 in column 1 only
        A = Alphabet.kz(3)
        e0 = LieElt.gen(A, "e0", 6)
        z1 = LieElt.gen(A, "z1", 6)
        u = bracket(e0, bracket(e0, z1))
        img = hain_mod_d2(u)
        assert img.linear_is_zero()
        assert img.cols[1] == XYPoly.monomial(RATIONAL, 0, 2)
        assert img.cols[0].is_zero() and img.cols[2].is_zero()

    def test_morphism_consistency(self):
        A = Alphabet.kz(2)
        e0 = LieElt.gen(A, "e0", 5)
        z0 = LieElt.gen(A, "z0", 5)
        lhs = hain_mod_d2(bracket(e0, z0))
        rhs = hain_mod_d2(e0).bracket(hain_mod_d2(z0))
        assert lhs == rhs


class TestEpsOp:
    def test_generic(self):
        d = eps_op(3, Root(1, 5))
        y2 = XYPoly.monomial(RATIONAL, 0, 2)
        assert d.u.cols[1] == y2
        assert d.u.cols[4] == y2
        assert d.u.cols[0].is_zero() and d.u.cols[2].is_zero() and d.u.cols[3].is_zero()

    def test_self_conjugate_even_vanishes(self):
        assert eps_op(2, Root(1, 2)).is_zero()
        assert eps_op(4, Root(0, 1)).is_zero()

    def test_self_conjugate_odd_doubles(self):
        d = eps_op(3, Root(1, 2))
        assert d.u.cols[1] == XYPoly.monomial(RATIONAL, 0, 2).scale(F(2))

    def test_sign_alternation(self):
        d = eps_op(4, Root(1, 5))
        assert d.u.cols[1] == XYPoly.monomial(RATIONAL, 0, 3)
        assert d.u.cols[4] == XYPoly.monomial(RATIONAL, 0, 3).scale(F(-1))

    def test_acts_as_inner_derivation(self):
        d = eps_op(3, Root(1, 4), cutoff=6)
        x = PolyQuot.x_vector(4, 6)
        y = PolyQuot.y_vector(4, 6)
        got_x = d.apply(x)
        got_y = d.apply(y)
        for k in range(4):
            assert got_x.cols[k] == -(XYPoly.monomial(RATIONAL, 1, 0) * d.u.cols[k])
            assert got_y.cols[k] == -(XYPoly.monomial(RATIONAL, 0, 1) * d.u.cols[k])
        # columns are killed
        assert d.apply(d.u).is_zero()

    def test_m_too_small(self):
        with pytest.raises(ValueError):
            eps_op(1, Root(1, 3))

    def test_json(self):
        blob = eps_op(3, Root(1, 5)).to_json()
        assert blob == {"N": 5, "m": 3, "columns": {"1": "Y^2", "4": "Y^2"}}


class TestMonodromy:
    def test_x_vector(self):
        v = PolyQuot.x_vector(1, 4, SYMBOLIC)
        hv = monodromy_hq(v)
        assert hv.a == SymPoly.one()
        assert hv.b == L_SYM

    def test_column_binomial(self):
        v = PolyQuot.column(1, 4, 0, XYPoly.monomial(SYMBOLIC, 2, 0))
        hv = monodromy_hq(v)
        col = hv.cols[0]
        assert col.coeff(2, 0) == SymPoly.one()
        assert col.coeff(1, 1) == 2 * L_SYM
        assert col.coeff(0, 2) == L_SYM * L_SYM

    def test_wrong_domain(self):
        with pytest.raises(ValueError):
            monodromy_hq(PolyQuot.x_vector(1, 4, RATIONAL))

    def test_betti_x_vector_lands_in_table_span(self):
        # (h_q - 1) of the Betti X-vector is exactly L times the weight -2
        # table vector of the same subquotient
        for m, r in ((2, Root(1, 3)), (4, Root(2, 5))):
            s = vsplit_derivation(m, r)
            moved = monodromy_hq(s.x_image) - s.x_image
            assert moved == s.y_image.scale(L_SYM)

    def test_invariants_are_y_and_y_only_columns(self):
        # kernel of (h_q - 1): Y and the X-free columns; everything else
        # is detected already by the first-order L coefficient
        level, cutoff = 2, 5
        maxdeg = cutoff - 2
        basis = [PolyQuot.x_vector(level, cutoff, SYMBOLIC), PolyQuot.y_vector(level, cutoff, SYMBOLIC)]
        kinds = ["x", "y"]
        for k in range(level):
            for i in range(maxdeg + 1):
                for j in range(maxdeg + 1 - i):
                    basis.append(
                        PolyQuot.column(level, cutoff, k, XYPoly.monomial(SYMBOLIC, i, j))
                    )
                    kinds.append("col-x-free" if i == 0 else "col-x")
        l1_rows = []
        for v, kind in zip(basis, kinds):
            moved = monodromy_hq(v) - v
            if kind in ("y", "col-x-free"):
                assert moved.is_zero()
            else:
                assert not moved.is_zero()
                l1_rows.append(_l1_vector(moved, maxdeg))
        from cyclokzb.linalg import rank

        assert rank(l1_rows) == len(l1_rows)


def _l1_vector(v, maxdeg):
    lkey = (("L", 1),)

    def lin(p):
        return p.terms.get(lkey, F(0))

    out = [lin(v.a), lin(v.b)]
    for col in v.cols:
        for i in range(maxdeg + 1):
            for j in range(maxdeg + 1 - i):
                out.append(lin(col.coeff(i, j)))
    return out


class TestVSplit:
    def test_generic_images(self):
        s = vsplit_derivation(2, Root(1, 3))
        lam21 = lam(2, 1)
        assert s.y_image.b == SymPoly.one()
        assert s.y_image.cols[1].coeff(0, 2) == -lam21
        assert s.x_image.a == SymPoly.one()
        assert s.x_image.cols[1].coeff(1, 1) == -lam21
        assert s.coefficient == lam21
        assert s.derivation.u.cols[1] == XYPoly.monomial(RATIONAL, 0, 1)
        assert s.derivation.u.cols[2] == XYPoly.monomial(RATIONAL, 0, 1).scale(F(-1))

    def test_self_conjugate_even_splits(self):
        s = vsplit_derivation(2, Root(0, 1))
        assert s.derivation.is_zero()
        s2 = vsplit_derivation(4, Root(2, 4))
        assert s2.derivation.is_zero()

    def test_self_conjugate_odd_half_coefficient(self):
        s = vsplit_derivation(3, Root(0, 1))
        assert s.coefficient == lam(3, 0) / 2
        assert s.derivation.u.cols[0] == XYPoly.monomial(RATIONAL, 0, 2).scale(F(2))

    def test_m_too_small(self):
        with pytest.raises(ValueError):
            vsplit_derivation(1, Root(1, 3))


class TestBettiBasis:
    def test_count_and_weights(self):
        vecs = betti_basis_cyc(2, 3)
        assert len(vecs) == 1 + 2 * 4
        assert vecs[0].weight == -2
        assert sorted(v.weight for v in vecs[1:]) == [-8, -8, -6, -6, -4, -4, -2, -2]

    def test_combined_vector_level1(self):
        vecs = betti_basis_cyc(1, 3)
        comb = vecs[0]
        assert comb.words["e0"] == L_SYM
        assert comb.words["e0.e0.z0"] == -(L_SYM * lam(2, 0))
        assert comb.words["e0.e0.e0.z0"] == -(L_SYM * lam(3, 0))
        assert set(comb.words) == {"e0", "e0.e0.z0", "e0.e0.e0.z0"}
        # elliptic image: b = L, column has the Bernoulli tail and the
        # polylog corrections
        assert comb.model.b == L_SYM
        col = comb.model.cols[0]
        assert col.coeff(0, 0) == -(L_SYM / 2)
        assert col.coeff(1, 0) == L_SYM / 12
        assert col.coeff(3, 0) == -(L_SYM / 720)
        assert col.coeff(0, 2) == -(L_SYM * lam(2, 0))
        assert col.coeff(0, 3) == -(L_SYM * lam(3, 0))

    def test_pure_vectors(self):
        vecs = betti_basis_cyc(3, 2)
        pure = [v for v in vecs[1:] if v.weight == -4]
        assert len(pure) == 3
        v = next(p for p in pure if "e0.z1" in p.words)
        assert v.words["e0.z1"] == L_SYM * L_SYM
        assert v.model.cols[1].coeff(0, 1) == L_SYM * L_SYM
        assert v.model.linear_is_zero()

    def test_m0_vectors_present(self):
        vecs = betti_basis_cyc(2, 2)
        w2 = [v for v in vecs[1:] if v.weight == -2]
        assert sorted(next(iter(v.words)) for v in w2) == ["z0", "z1"]


class TestDepth1Rank:
    def test_full_rank_family(self):
        ders = [
            eps_op(m, Root(k, 5), cutoff=7)
            for m in range(2, 6)
            for k in (1, 2)
        ]
        assert depth1_rank(ders) == 8

    def test_zero_derivation(self):
        assert depth1_rank([eps_op(2, Root(1, 2))]) == 0

    def test_dependent_family(self):
        d = eps_op(3, Root(1, 5))
        assert depth1_rank([d, d.scale(F(2))]) == 1

    def test_level_mismatch(self):
        with pytest.raises(ValueError):
            depth1_rank([eps_op(2, Root(1, 3), cutoff=5), eps_op(2, Root(1, 4), cutoff=5)])
