"""Tests for distribution-relation linear algebra and Galois heads."""

from fractions import Fraction as F
from math import gcd

import pytest

from cyclokzb.errors import ContractViolation
from cyclokzb.extdecomp import (
    ExtClass,
    decompose,
    ext_dim,
    ext_dim_formula,
    head,
    relation_matrix,
    sigma_coefficient,
)
from cyclokzb.polyquot import InnerDer, PolyQuot, XYPoly, depth1_rank
from cyclokzb.rings import RATIONAL
from cyclokzb.roots import Root, primitive_upper_half


def phi(N):
    return sum(1 for k in range(1, N + 1) if gcd(k, N) == 1)


class TestRelationMatrix:
    def test_two_torsion_row(self):
        rows = relation_matrix(2, 3)
        assert rows[0] == [F(3), F(4)]

    def test_conjugation_row_sign(self):
        rows = relation_matrix(5, 2)
        # one distribution row, then conjugation rows indexed by j
        assert rows[0] == [F(4), F(5), F(5), F(5), F(5)]
        assert rows[1 + 1] == [F(0), F(1), F(0), F(0), F(1)]

    def test_odd_weight_conjugation_row(self):
        rows = relation_matrix(5, 3)
        assert rows[1 + 1] == [F(0), F(-1), F(0), F(0), F(1)]

    def test_weight_one_rejected(self):
        with pytest.raises(ValueError):
            relation_matrix(4, 1)


class TestDimensions:
    def test_spec_values(self):
        assert ext_dim(7, 4) == 3
        assert ext_dim(2, 4) == 0
        assert ext_dim(1, 3) == 1

    def test_formula_range(self):
        for N in range(1, 31):
            for m in range(2, 7):
                d = ext_dim(N, m)
                assert d == ext_dim_formula(N, m)
                if N >= 3:
                    assert d == phi(N) // 2

    def test_weight_one_rejected(self):
        with pytest.raises(ValueError):
            ext_dim_formula(6, 1)


class TestDecompose:
    def test_fourth_roots(self):
        c = decompose(4, 3, 2)
        assert c.coords == {Root(1, 4): F(8)}

    def test_unit_class_level_five(self):
        c = decompose(5, 3, 0)
        assert c.coords == {Root(1, 5): F(-25, 12), Root(2, 5): F(-25, 12)}

    def test_basis_elements_are_units(self):
        for N, m in ((5, 2), (7, 3), (12, 4)):
            for z in primitive_upper_half(N):
                assert decompose(N, m, z.k).coords == {z: F(1)}

    def test_collapsed_space_gives_zero(self):
        for j in range(2):
            assert decompose(2, 4, j).is_zero()

    def test_distribution_linearity(self):
        # l^(m-1) sum of classes over the fiber equals the base class
        for N, m in ((4, 3), (6, 2), (9, 3), (12, 2)):
            for l in (2, 3):
                if N % l:
                    continue
                step = N // l
                for b in range(step):
                    acc = ExtClass(N, m, {})
                    for t in range(l):
                        acc = acc + decompose(N, m, b + t * step)
                    lhs = acc.scale(l ** (m - 1))
                    assert lhs.coords == decompose(N, m, (b * l) % N).coords

    def test_conjugation_covariance(self):
        for N, m in ((5, 2), (5, 3), (8, 4)):
            for j in range(1, N):
                flipped = decompose(N, m, N - j)
                assert flipped.coords == decompose(N, m, j).scale((-1) ** (m + 1)).coords

    def test_residue_out_of_range(self):
        with pytest.raises(ValueError):
            decompose(5, 3, 5)


class TestSigmaCoefficient:
    def test_normalization(self):
        for N, m in ((5, 3), (7, 2), (8, 5)):
            for z in primitive_upper_half(N):
                assert sigma_coefficient(N, m, z, z.k) == 1

    def test_conjugate_sign(self):
        for N, m in ((5, 3), (5, 4), (7, 2)):
            for z in primitive_upper_half(N):
                jb = z.conj().k
                assert sigma_coefficient(N, m, z, jb) == (-1) ** (m + 1)

    def test_unit_residue_level_five(self):
        assert sigma_coefficient(5, 3, Root(1, 5), 0) == F(-25, 12)

    def test_non_basis_root_rejected(self):
        with pytest.raises(ValueError):
            sigma_coefficient(5, 3, Root(4, 5), 0)


class TestHeads:
    def test_prime_level(self):
        h = head(5, 3, Root(1, 5))
        assert h.coeffs == {Root(1, 5): F(1), Root(0, 5): F(-25, 24)}

    def test_prime_power_eight(self):
        h = head(8, 3, Root(1, 8))
        assert h.coeffs == {
            Root(1, 8): F(1),
            Root(2, 8): F(4),
            Root(4, 8): F(16),
            Root(0, 8): F(-64, 3),
        }

    def test_prime_power_nine_even_weight(self):
        # the self-conjugate generators vanish for even m, so no unit-root term
        h = head(9, 2, Root(1, 9))
        assert h.coeffs == {Root(1, 9): F(1), Root(3, 9): F(3)}

    def test_prime_level_even_weight(self):
        assert head(7, 4, Root(1, 7)).coeffs == {Root(1, 7): F(1)}

    def test_composite_level_six(self):
        h3 = head(6, 3, Root(1, 6))
        assert h3.coeffs == {
            Root(1, 6): F(1),
            Root(2, 6): F(-4, 3),
            Root(0, 6): F(3, 2),
            Root(3, 6): F(-9, 8),
        }
        h4 = head(6, 4, Root(1, 6))
        assert h4.coeffs == {Root(1, 6): F(1), Root(2, 6): F(8, 9)}

    def test_degenerate_levels(self):
        assert head(1, 5, Root(0, 1)).coeffs == {Root(0, 1): F(1, 2)}
        h = head(2, 3, Root(1, 2))
        assert h.coeffs == {Root(1, 2): F(1, 2), Root(0, 2): F(-2, 3)}

    def test_second_basis_root(self):
        h = head(8, 3, Root(3, 8))
        assert h.coeffs == {
            Root(3, 8): F(1),
            Root(2, 8): F(4),
            Root(4, 8): F(16),
            Root(0, 8): F(-64, 3),
        }

    def test_vanishing_image_rejected(self):
        for N in (1, 2):
            with pytest.raises(ValueError):
                head(N, 4, primitive_upper_half(N)[0])

    def test_non_basis_root_rejected(self):
        with pytest.raises(ValueError):
            head(5, 3, Root(3, 5))

    def test_derivation_matches_raw_columns(self):
        # sum_j s_j Y^(m-1) t_j equals the pair-folded derivation exactly
        for N, m in ((5, 3), (6, 4), (9, 2)):
            z = primitive_upper_half(N)[0]
            h = head(N, m, z)
            cols = [XYPoly.zero(RATIONAL) for _ in range(N)]
            mono = XYPoly.monomial(RATIONAL, 0, m - 1)
            for j in range(N):
                s = sigma_coefficient(N, m, z, j)
                if s:
                    cols[j] = cols[j] + mono.scale(s)
            raw = InnerDer(PolyQuot(N, m + 2, RATIONAL, cols=cols))
            assert h.derivation().u == raw.u

    def test_full_rank(self):
        for N, m in ((5, 2), (7, 3), (8, 4), (12, 5)):
            ders = [head(N, m, z).derivation() for z in primitive_upper_half(N)]
            assert depth1_rank(ders) == phi(N) // 2

    def test_degenerate_rank(self):
        for N in (1, 2):
            ders = [head(N, 3, z).derivation() for z in primitive_upper_half(N)]
            assert depth1_rank(ders) == 1
