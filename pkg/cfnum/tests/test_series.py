from fractions import Fraction as F

from django.test import SimpleTestCase, override_settings

from cfnum import series as S
from cfnum.exceptions import ParameterError, SeriesDomainError, SeriesUsageError
from cfnum.polynomials import CENTRAL, basis_poly
from cfnum.series import TruncatedSeries, format_rational, parse_rational, resolve_order
from cfnum.triangles import alpha_bar_series, alpha_series


def series(coeffs, order):
    return TruncatedSeries.from_coeffs(coeffs, order)


class RationalTests(SimpleTestCase):
    def test_parse(self):
        self.assertEqual(parse_rational("3/4"), F(3, 4))
        self.assertEqual(parse_rational("-2"), F(-2))
        self.assertEqual(parse_rational(" +5/10 "), F(1, 2))

    def test_parse_rejects_decimals_and_zero_denominator(self):
        for text in ("1.5", "1/0", "abc", ""):
            with self.subTest(text=text):
                with self.assertRaises(ParameterError):
                    parse_rational(text)

    def test_format(self):
        self.assertEqual(format_rational(F(-1, 2)), "-1/2")
        self.assertEqual(format_rational(F(10, 2)), "5")

    @override_settings(CFNUM_ORDER=None)
    def test_default_order(self):
        self.assertEqual(resolve_order(4), 10)
        self.assertEqual(resolve_order(4, 6), 6)

    @override_settings(CFNUM_ORDER=12)
    def test_order_from_settings(self):
        self.assertEqual(resolve_order(4), 12)

    def test_order_below_n_max(self):
        with self.assertRaises(SeriesUsageError):
            resolve_order(4, 3)


class ArithmeticTests(SimpleTestCase):
    def test_add(self):
        self.assertEqual(series([1, 1], 3) + series([1, -1], 3), series([2], 3))
        self.assertEqual(series([0, F(1, 2)], 3) + series([0, F(1, 3)], 3), series([0, F(5, 6)], 3))

    def test_orders_must_match(self):
        with self.assertRaises(SeriesUsageError):
            S.add(series([1], 2), series([1], 3))
        with self.assertRaises(SeriesUsageError):
            S.mul(series([1], 2), series([1], 3))

    def test_mul_truncates(self):
        self.assertEqual(S.mul(series([1, 1], 4), series([1, -1], 4)), series([1, 0, -1], 4))
        t = TruncatedSeries.identity(1)
        self.assertEqual(S.mul(t, t), TruncatedSeries.zero(1))

    def test_exp_squared(self):
        e = S.exp_scaled(1, 8)
        self.assertEqual(S.mul(e, e), S.exp_scaled(2, 8))

    def test_egf_view(self):
        diff = S.exp_series(series([0, F(1, 2)], 5)) - S.exp_series(series([0, F(-1, 2)], 5))
        self.assertEqual(diff.egf_coefficient(3), F(1, 4))

    def test_truncate_cannot_raise_order(self):
        with self.assertRaises(SeriesUsageError):
            series([1], 3).truncate(4)


class CompositionTests(SimpleTestCase):
    def test_exp_of_log(self):
        self.assertEqual(
            S.compose(S.exp_scaled(1, 10) - 1, S.log1p(10)), TruncatedSeries.identity(10)
        )

    def test_inner_constant_term_rejected(self):
        with self.assertRaises(SeriesDomainError):
            S.compose(series([0, 0, 1], 4), series([1, 1], 4))

    def test_laguerre_delta_is_self_inverse(self):
        t = TruncatedSeries.identity(10)
        f = -S.mul(t, S.reciprocal(1 - t))
        self.assertEqual(S.compose(f, f), t)

    def test_comp_inverse_of_exp(self):
        self.assertEqual(S.comp_inverse(S.exp_scaled(1, 10) - 1), S.log1p(10))

    def test_comp_inverse_of_central_difference(self):
        inverse = S.comp_inverse(S.central_difference(7))
        self.assertEqual(list(inverse.coeffs[:6]), [0, 1, 0, F(-1, 24), 0, F(3, 640)])

    def test_closed_forms_agree_to_order_20(self):
        inverse = S.comp_inverse(S.central_difference(20))
        self.assertEqual(inverse, S.central_inverse(20))
        self.assertEqual(inverse, S.central_inverse_alt(20))
        self.assertEqual(inverse, S.comp_inverse_lagrange(S.central_difference(20)))

    def test_comp_inverse_of_alpha(self):
        self.assertEqual(S.comp_inverse(alpha_series(12)), alpha_bar_series(12))

    def test_inverse_composes_both_ways(self):
        f = S.central_difference(9) + S.mul(S.central_difference(9), S.central_difference(9))
        g = S.comp_inverse(f)
        self.assertEqual(S.compose(f, g), TruncatedSeries.identity(9))
        self.assertEqual(S.compose(g, f), TruncatedSeries.identity(9))

    def test_comp_inverse_needs_delta(self):
        with self.assertRaises(SeriesDomainError):
            S.comp_inverse(series([0, 0, 1], 4))


class ElementaryTests(SimpleTestCase):
    def test_geometric_series(self):
        self.assertEqual(S.reciprocal(series([1, -1], 6)), series([1] * 7, 6))

    def test_bernoulli_numbers_from_reciprocal(self):
        egf = S.reciprocal(S.shift_down(S.exp_scaled(1, 9) - 1))
        self.assertEqual(
            egf.egf_coefficients(), [1, F(-1, 2), F(1, 6), 0, F(-1, 30), 0, F(1, 42), 0, F(-1, 30)]
        )

    def test_reciprocal_needs_constant_term(self):
        with self.assertRaises(SeriesDomainError):
            S.reciprocal(series([0, 1], 3))

    def test_sqrt(self):
        self.assertEqual(S.sqrt_series(series([4, 0, 1], 4)), series([2, 0, F(1, 4), 0, F(-1, 64)], 4))
        self.assertEqual(S.sqrt_series(series([1, 1], 2)), series([1, F(1, 2), F(-1, 8)], 2))

    def test_sqrt_needs_rational_square(self):
        with self.assertRaises(SeriesDomainError):
            S.sqrt_series(series([2, 1], 3))

    def test_log_of_exp(self):
        f = series([0, 1, F(1, 3), -2], 6)
        self.assertEqual(S.log_series(S.exp_series(f)), f)
        self.assertEqual(S.log1p(4), series([0, 1, F(-1, 2), F(1, 3), F(-1, 4)], 4))

    def test_pow_rational(self):
        self.assertEqual(S.pow_rational(series([1, 1], 4), 2), series([1, 2, 1], 4))
        root = S.pow_rational(series([1, 2], 6), F(1, 2))
        self.assertEqual(S.mul(root, root), series([1, 2], 6))

    def test_pow_rational_needs_unit_constant(self):
        with self.assertRaises(SeriesDomainError):
            S.pow_rational(series([2, 1], 3), F(1, 2))

    def test_degenerate_exp(self):
        t = TruncatedSeries.identity(4)
        self.assertEqual(S.degenerate_exp(t, F(1, 2)).egf_coefficients(), [1, 1, F(1, 2), 0, 0])

    def test_degenerate_log(self):
        t = TruncatedSeries.identity(8)
        self.assertEqual(S.degenerate_log(1 + t, 1), t)
        lam = F(1, 3)
        self.assertEqual(S.degenerate_log(S.degenerate_exp(t, lam), lam), t)

    def test_degenerate_needs_nonzero_lambda(self):
        t = TruncatedSeries.identity(4)
        with self.assertRaises(SeriesDomainError):
            S.degenerate_log(1 + t, 0)
        with self.assertRaises(SeriesDomainError):
            S.degenerate_exp(t, 0)

    def test_shift_down_needs_zero_constant(self):
        with self.assertRaises(SeriesDomainError):
            S.shift_down(series([1, 1], 3))

    def test_central_factorial_egf(self):
        # Σ x0^[n] t^n/n! = ((t + √(t²+4))/2)^(2·x0)
        for x0 in (F(1, 2), F(1), F(3, 2), F(2)):
            values = [basis_poly(CENTRAL, n).eval(x0) for n in range(9)]
            with self.subTest(x0=x0):
                self.assertEqual(S.pow_rational(S.central_root(8), 2 * x0), TruncatedSeries.from_egf(values, 8))
