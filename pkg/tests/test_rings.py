from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from cyclokzb.rings import L, RATIONAL, SYMBOLIC, SymPoly, XYPoly, lam

F = Fraction


class TestSymPoly:
    def test_ring_ops(self):
        assert (L + 1) * (L - 1) == L * L - 1
        assert L - L == SymPoly.zero()
        assert (2 * L) / 2 == L
        assert -(-L) == L

    def test_mixed_symbols(self):
        p = L * lam(2, 1) + 3
        q = p * p
        assert q == L * L * lam(2, 1) * lam(2, 1) + 6 * L * lam(2, 1) + 9
        assert q.symbols() == {"L", "lam_2_1"}

    def test_constant_helpers(self):
        assert SymPoly.const(F(3, 4)).constant_part() == F(3, 4)
        assert SymPoly.zero().is_zero()
        assert (L - L).is_constant()

    def test_evaluate(self):
        p = L * L + 2 * lam(3, 2) - F(1, 2)
        val = p.evaluate({"L": F(3), "lam_3_2": F(1, 4)})
        assert val == 9 + F(1, 2) - F(1, 2)

    def test_str_deterministic(self):
        p = lam(2, 1) - L + F(1, 2)
        assert str(p) == "1/2 - L + lam_2_1"
        assert str(SymPoly.zero()) == "0"
        assert str(-L) == "-L"


class TestXYPoly:
    def x(self, dom=RATIONAL):
        return XYPoly.monomial(dom, 1, 0)

    def y(self, dom=RATIONAL):
        return XYPoly.monomial(dom, 0, 1)

    def test_binomial_square(self):
        x, y = self.x(), self.y()
        assert (x + y) * (x + y) == x * x + (x * y).scale(F(2)) + y * y

    def test_shift_x(self):
        x, y = self.x(), self.y()
        c = F(3)
        shifted = (x * x).shift_x(c)
        assert shifted == x * x + (x * y).scale(F(6)) + (y * y).scale(F(9))
        # Y is untouched
        assert y.shift_x(c) == y

    def test_truncate_and_degree(self):
        x, y = self.x(), self.y()
        p = x * x * y + x + XYPoly.const(RATIONAL, F(5))
        assert p.degree() == 3
        assert p.truncate(1) == x + XYPoly.const(RATIONAL, F(5))
        assert XYPoly.zero(RATIONAL).degree() == -1

    def test_symbolic_coefficients(self):
        x = self.x(SYMBOLIC)
        p = x.scale(L)
        assert p.coeff(1, 0) == L
        assert (p - p).is_zero()

    def test_str(self):
        x, y = self.x(), self.y()
        p = (x * y).scale(F(-1, 2)) + y * y + XYPoly.const(RATIONAL, F(3))
        assert str(p) == "3 + Y^2 - 1/2*X*Y"

    @settings(max_examples=30, deadline=None)
    @given(
        st.fractions(min_value=-2, max_value=2, max_denominator=3),
        st.fractions(min_value=-2, max_value=2, max_denominator=3),
    )
    def test_shift_composes(self, a, b):
        x, y = self.x(), self.y()
        p = x * x * y + x * y + x.scale(F(2, 3))
        assert p.shift_x(a).shift_x(b) == p.shift_x(a + b)

    def test_map_coeffs_domain_change(self):
        p = self.x().scale(F(2))
        q = p.map_coeffs(SymPoly.const, SYMBOLIC)
        assert q.domain is SYMBOLIC
        assert q.coeff(1, 0) == SymPoly.const(2)
