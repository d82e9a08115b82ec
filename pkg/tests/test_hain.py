"""Tests for the genus-zero to elliptic letter map."""

import random
from fractions import Fraction as F

import pytest

from cyclokzb.freelie import Alphabet, LieElt, bracket, degrees, kz_e_inf, lyndon_basis
from cyclokzb.hain import cylinder_check, hain_apply, hain_image
from cyclokzb.polyquot import PolyQuot, XYPoly, hain_mod_d2, project_mod_D2
from cyclokzb.rings import RATIONAL


def rand_kz(A, cutoff, rng, nterms):
    words = lyndon_basis(A, cutoff)
    out = LieElt.zero(A, cutoff)
    for _ in range(nterms):
        w = words[rng.randrange(len(words))]
        out = out + LieElt(A, cutoff, {w: F(rng.randrange(-5, 6), rng.randrange(1, 4))})
    return out


class TestLetterImages:
    def test_e0_bernoulli_series(self):
        u = hain_image("e0", 5)
        assert u.coeff("Y") == 1
        assert u.coeff("XY") == F(-1, 2)
        assert u.coeff("XXY") == F(1, 12)
        assert u.coeff("XXXY") == 0
        assert u.coeff("XXXXY") == F(-1, 720)
        assert len(u.support()) == 4

    def test_einf_series(self):
        u = hain_image("einf", 3)
        assert u.coeff("Y") == -1
        assert u.coeff("XY") == F(-1, 2)
        assert u.coeff("XXY") == F(-1, 12)

    def test_e0_plus_einf_is_minus_xy(self):
        # x/(e^x-1) + x/(e^(-x)-1) = -x, so the images sum to -[X,Y]
        for omega in (2, 5, 8):
            total = hain_image("e0", omega) + hain_image("einf", omega)
            A = Alphabet.kzb(1)
            expected = bracket(LieElt.gen(A, "X", omega), LieElt.gen(A, "Y", omega))
            assert total == -expected

    def test_root_letters(self):
        A = Alphabet.kzb(5)
        assert hain_image("z1", 4, level=5) == LieElt.gen(A, "t1", 4)
        assert hain_image("z3", 4, level=5) == LieElt.gen(A, "t3", 4)

    def test_z0_is_derived_letter(self):
        u = hain_image("z0", 4, level=3)
        A = Alphabet.kzb(3)
        xy = bracket(LieElt.gen(A, "X", 4), LieElt.gen(A, "Y", 4))
        assert u == xy - LieElt.gen(A, "t1", 4) - LieElt.gen(A, "t2", 4)

    def test_unknown_generator(self):
        for bad in ("e1", "w0", "z5", "zx"):
            with pytest.raises(ValueError):
                hain_image(bad, 4, level=5)
        with pytest.raises(ValueError):
            hain_image("e0", 0)


class TestMorphism:
    def test_puncture_sum_vanishes(self):
        for level in (1, 2, 3, 5):
            total = hain_image("e0", 6, level) + hain_image("einf", 6, level)
            for k in range(level):
                total = total + hain_image(f"z{k}", 6, level)
            assert total.is_zero()

    def test_derived_letter_consistent(self):
        # applying the morphism to the derived e_inf recovers its image
        for level in (1, 3):
            A = Alphabet.kz(level)
            assert hain_apply(kz_e_inf(A, 6)) == hain_image("einf", 6, level)

    def test_bracket_of_letters(self):
        A = Alphabet.kz(3)
        u = bracket(LieElt.gen(A, "e0", 5), LieElt.gen(A, "z1", 5))
        got = hain_apply(u)
        expected = bracket(hain_image("e0", 5, 3), hain_image("z1", 5, 3))
        assert got == expected

    def test_random_bracket_compatibility(self):
        rng = random.Random(11)
        A = Alphabet.kz(2)
        for _ in range(4):
            u, v = rand_kz(A, 5, rng, 2), rand_kz(A, 5, rng, 2)
            assert hain_apply(bracket(u, v)) == bracket(hain_apply(u), hain_apply(v))

    def test_matches_fused_mod_d2_map(self):
        rng = random.Random(12)
        A = Alphabet.kz(3)
        for _ in range(4):
            u = rand_kz(A, 5, rng, 3)
            assert project_mod_D2(hain_apply(u)) == hain_mod_d2(u)


class TestDepthOne:
    def test_ad_powers_land_on_y_powers(self):
        # e0^n . e_zeta goes to Y^n . t_zeta mod D^2; t1 sits in column 1
        A = Alphabet.kz(3)
        e0 = LieElt.gen(A, "e0", 8)
        u = LieElt.gen(A, "z1", 8)
        for n in range(5):
            if n:
                u = bracket(e0, u)
            got = project_mod_D2(hain_apply(u))
            poly = XYPoly.monomial(RATIONAL, 0, n, F(1))
            assert got == PolyQuot.column(3, 8, 1, poly)

    def test_images_independent_mod_d2(self):
        # e0 and the five ad-powers stay independent after projection
        A = Alphabet.kz(2)
        e0 = LieElt.gen(A, "e0", 6)
        elems = [e0]
        u = LieElt.gen(A, "z1", 6)
        for n in range(5):
            if n:
                u = bracket(e0, u)
            elems.append(u)
        vecs = [project_mod_D2(hain_apply(v)) for v in elems]
        monomials = sorted((i, j) for i in range(5) for j in range(5) if i + j <= 4)
        rows = []
        for v in vecs:
            row = [v.a, v.b]
            for k in range(2):
                col = v.cols[k]
                row.extend(col.coeff(i, j) for i, j in monomials)
            rows.append(row)
        from cyclokzb.linalg import rank

        assert rank(rows) == len(elems)


class TestFiltrations:
    # z-letters double in weight under the map, so the source needs cutoff
    # headroom to keep images out of the truncation zone

    def test_every_lyndon_word_compatible(self):
        A = Alphabet.kz(3)
        for w in lyndon_basis(A, 4):
            u = LieElt(A, 8, {w: F(1)})
            img = hain_apply(u)
            assert not img.is_zero()
            du, di = degrees(u), degrees(img)
            assert di["W"] >= du["W"]
            assert di["M"] >= du["M"]
            assert di["F"] <= du["F"]

    def test_depth_strict_up_to_model_cap(self):
        A = Alphabet.kz(2)
        for w in lyndon_basis(A, 6):
            zc = sum(1 for c in w if c)
            u = LieElt(A, max(2, len(w) + zc), {w: F(1)})
            got = degrees(hain_apply(u))["depth"]
            assert got == min(2, degrees(u)["depth"])


class TestCylinder:
    def test_symbolic_identity(self):
        assert cylinder_check(8)

    def test_low_degree(self):
        assert cylinder_check(2)

    def test_negative_control(self):
        assert not cylinder_check(2, perturb=True)
        assert not cylinder_check(5, perturb=True)
