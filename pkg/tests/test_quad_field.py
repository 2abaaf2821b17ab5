import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from relthue.binary_form import BinaryForm, evaluate_int, isolate_roots
from relthue.errors import NotSquarefree, OutOfRange
from relthue.quad_field import (
    Case,
    RingElement,
    abs_squared,
    evaluate_ring,
    from_numerator_view,
    im_cross,
    make_field,
    numerator_view,
    ring_mul,
    within,
)

from conftest import F_EX_COEFFS, FIELD_MS

coord = st.integers(-60, 60)
elements = st.builds(RingElement, coord, coord)
fields = st.sampled_from(FIELD_MS).map(make_field)


def _to_sympy(e, field):
    w = (1 + sympy.I * sympy.sqrt(field.m)) / 2 if field.case is Case.I else sympy.I * sympy.sqrt(field.m)
    return e.x1 + e.x2 * w


class TestField:
    @pytest.mark.parametrize("m, case", [(5, Case.II), (3, Case.I), (2, Case.II), (7, Case.I),
                                         (10, Case.II), (11, Case.I)])
    def test_case(self, m, case):
        assert make_field(m).case is case

    def test_not_squarefree(self):
        with pytest.raises(NotSquarefree):
            make_field(12)

    @pytest.mark.parametrize("m", [1, 0, -3])
    def test_out_of_range(self, m):
        with pytest.raises(OutOfRange):
            make_field(m)


class TestArithmetic:
    def test_abs_squared_examples(self):
        assert abs_squared(RingElement(1, -2), make_field(5)) == 21
        assert abs_squared(RingElement(0, 0), make_field(3)) == 0
        assert abs_squared(RingElement(0, 1), make_field(3)) == 1

    @given(elements, fields)
    def test_abs_squared_matches_sympy(self, e, field):
        z = _to_sympy(e, field)
        assert sympy.expand(z * sympy.conjugate(z)) == abs_squared(e, field)

    @given(elements, fields)
    def test_abs_squared_zero_iff_zero(self, e, field):
        assert (abs_squared(e, field) == 0) == e.is_zero()

    @given(elements, elements, fields)
    def test_multiplicative(self, a, b, field):
        assert abs_squared(ring_mul(a, b, field), field) == abs_squared(a, field) * abs_squared(b, field)

    @given(elements, elements, fields)
    def test_product_matches_sympy(self, a, b, field):
        prod = ring_mul(a, b, field)
        assert sympy.expand(_to_sympy(a, field) * _to_sympy(b, field) - _to_sympy(prod, field)) == 0

    @given(elements, fields)
    def test_numerator_view_round_trip(self, e, field):
        assert from_numerator_view(*numerator_view(e, field), field) == e

    def test_numerator_parity(self):
        assert from_numerator_view(1, 0, make_field(3)) is None
        assert from_numerator_view(1, 0, make_field(5)) == RingElement(1, 0)

    def test_within(self):
        f = make_field(5)
        assert within(RingElement(4, 0), 4, f)
        assert not within(RingElement(4, 1), 4, f)
        assert within(RingElement(1, 1), Fraction(245, 100), f)  # 6 <= 6.0025
        assert not within(RingElement(1, 1), Fraction(244, 100), f)


class TestImCross:
    def test_examples(self):
        f = make_field(5)
        assert im_cross(RingElement(1, 1), RingElement(1, 1), f) == 0
        assert im_cross(RingElement(1, 0), RingElement(0, 1), f) == -1
        assert im_cross(RingElement(2, 1), RingElement(3, -1), f) == 5

    def test_cross_check_complex(self):
        f = make_field(5)
        x, y = RingElement(2, 1), RingElement(3, -1)
        prod = sympy.expand(_to_sympy(x, f) * sympy.conjugate(_to_sympy(y, f)))
        assert sympy.im(prod) == 5 * sympy.sqrt(5)

    @given(elements, elements, fields)
    def test_contract(self, x, y, field):
        im = sympy.im(sympy.expand(_to_sympy(x, field) * sympy.conjugate(_to_sympy(y, field))))
        scale = sympy.sqrt(field.m) / (2 if field.case is Case.I else 1)
        assert sympy.simplify(im - im_cross(x, y, field) * scale) == 0


class TestEvaluateRing:
    def test_examples(self, F_ex, field5):
        assert evaluate_ring(F_ex, RingElement(1, 0), RingElement(0, 0), field5) == RingElement(1, 0)
        assert evaluate_ring(F_ex, RingElement(2, 0), RingElement(-4, 0), field5) == RingElement(-16, 0)

    def test_power_example(self, F_ex, field5):
        # F(x, -2x) = -x^4 and (1 + i*sqrt5)^4 = -4 - 16 i*sqrt5
        x = RingElement(1, 1)
        assert ring_mul(ring_mul(x, x, field5), ring_mul(x, x, field5), field5) == RingElement(-4, -16)
        value = evaluate_ring(F_ex, x, RingElement(-2, -2), field5)
        assert value == RingElement(4, 16)
        assert abs_squared(value, field5) == 36 ** 2

    def test_against_sympy(self, F_ex):
        rng = random.Random(5)
        X, Y = sympy.symbols("x y")
        expr = sum(c * X ** (4 - i) * Y ** i for i, c in enumerate(F_ex.coeffs))
        for m in FIELD_MS:
            field = make_field(m)
            for _ in range(8):
                x = RingElement(rng.randint(-30, 30), rng.randint(-30, 30))
                y = RingElement(rng.randint(-30, 30), rng.randint(-30, 30))
                got = _to_sympy(evaluate_ring(F_ex, x, y, field), field)
                want = expr.subs({X: _to_sympy(x, field), Y: _to_sympy(y, field)})
                assert sympy.expand(got - want) == 0

    @given(elements, elements, fields)
    def test_sign_symmetry(self, x, y, field):
        for coeffs in (F_EX_COEFFS, (1, -4, 1, 1)):
            F = BinaryForm(coeffs)
            v = evaluate_ring(F, x, y, field)
            w = evaluate_ring(F, -x, -y, field)
            assert w == (v if F.degree % 2 == 0 else -v)

    @given(coord, coord, fields)
    def test_consistent_with_integers(self, a, b, field):
        F = BinaryForm(F_EX_COEFFS)
        v = evaluate_ring(F, RingElement(a, 0), RingElement(b, 0), field)
        assert v == RingElement(evaluate_int(F, a, b), 0)

    def test_product_formula_enclosure(self, F_ex, roots_ex):
        # |F(x,y)|^2 = prod |x - a_j y|^2, bounded with interval arithmetic on the roots
        rs = roots_ex.refine(Fraction(1, 10 ** 30))
        rng = random.Random(9)
        for m in FIELD_MS:
            field = make_field(m)
            for _ in range(20):
                x = RingElement(rng.randint(-40, 40), rng.randint(-40, 40))
                y = RingElement(rng.randint(-40, 40), rng.randint(-40, 40))
                lo, hi = Fraction(1), Fraction(1)
                for a, b in rs.intervals:
                    flo, fhi = _factor_bounds(x, y, field, a, b)
                    lo, hi = lo * flo, hi * fhi
                exact = abs_squared(evaluate_ring(F_ex, x, y, field), field)
                assert lo <= exact <= hi


def _factor_bounds(x, y, field, a, b):
    """Range of |x - t*y|^2 for t in [a, b]; a convex quadratic in t."""
    (u, w), (p, q) = numerator_view(x, field), numerator_view(y, field)
    scale = 4 if field.case is Case.I else 1

    def g(t):
        return (Fraction((u - t * p) ** 2 + field.m * (w - t * q) ** 2)) / scale

    vals = [g(a), g(b)]
    den = p * p + field.m * q * q
    if den:
        t0 = Fraction(u * p + field.m * w * q, den)
        if a <= t0 <= b:
            vals.append(g(t0))
    return min(vals), max(vals)
