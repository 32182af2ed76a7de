from fractions import Fraction as F

from django.test import SimpleTestCase

from cfnum import series as S
from cfnum.catalog import catalog
from cfnum.exceptions import SeriesDomainError, SeriesUsageError, UnsupportedRouteError
from cfnum.polynomials import CENTRAL, Polynomial, basis_poly
from cfnum.series import TruncatedSeries
from cfnum.triangles import FamilyId, alpha_series, classical
from cfnum.umbral import (
    AssocKind,
    ShefferPair,
    T1Route,
    T2Route,
    apply_operator,
    assoc_t1,
    assoc_t2,
    assoc_triangle,
    central_exp,
    central_log,
    functional_apply,
    sheffer_polys,
    sheffer_recurrence_step,
)

LAM = F(1, 3)


class FunctionalTests(SimpleTestCase):
    def test_functional_apply(self):
        x2 = Polynomial.monomial(2)
        self.assertEqual(functional_apply(TruncatedSeries.monomial(2, 4), x2), 2)
        self.assertEqual(functional_apply(S.exp_scaled(3, 4), x2), 9)
        self.assertEqual(functional_apply(S.shift_down(S.exp_scaled(1, 5) - 1), x2), F(1, 3))

    def test_degree_above_order(self):
        with self.assertRaises(SeriesUsageError):
            functional_apply(TruncatedSeries.one(2), Polynomial.monomial(3))

    def test_apply_operator(self):
        self.assertEqual(
            apply_operator(TruncatedSeries.identity(3), Polynomial.monomial(3)), Polynomial((0, 0, 3))
        )
        self.assertEqual(apply_operator(S.exp_scaled(1, 2), Polynomial.monomial(2)), Polynomial((1, 2, 1)))
        self.assertEqual(
            apply_operator(S.central_difference(4), basis_poly(CENTRAL, 4)),
            basis_poly(CENTRAL, 3).scale(4),
        )


class ShefferTests(SimpleTestCase):
    def test_pair_validation(self):
        with self.assertRaises(SeriesDomainError):
            ShefferPair(TruncatedSeries.one(4), TruncatedSeries.monomial(2, 4))
        with self.assertRaises(SeriesDomainError):
            ShefferPair(TruncatedSeries.identity(4), TruncatedSeries.identity(4))
        with self.assertRaises(SeriesUsageError):
            ShefferPair(TruncatedSeries.one(3), TruncatedSeries.identity(4))

    def test_order_zero_rejected(self):
        self.assertFalse(TruncatedSeries.zero(0).is_delta)
        self.assertTrue(TruncatedSeries.identity(1).is_delta)
        with self.assertRaises(SeriesDomainError):
            S.comp_inverse(TruncatedSeries.zero(0))
        with self.assertRaises(SeriesUsageError):
            ShefferPair(TruncatedSeries.one(0), TruncatedSeries.zero(0))

    def test_assoc_order_zero(self):
        cases = (
            (assoc_t2, "bernoulli", T2Route.GENFUNC),
            (assoc_t1, "laguerre", T1Route.FUNCTIONAL),
            (assoc_t1, "laguerre", T1Route.GENFUNC),
        )
        for assoc, name, route in cases:
            with self.subTest(sequence=name, route=route.value):
                with self.assertRaises(SeriesUsageError):
                    assoc(catalog(name), 0, route, order=0)

    def test_bernoulli_polynomials(self):
        polys = sheffer_polys(catalog("bernoulli").pair(6), 2)
        self.assertEqual(polys[2], Polynomial((F(1, 6), -1, 1)))

    def test_laguerre_polynomials(self):
        polys = sheffer_polys(catalog("laguerre").pair(6), 2)
        self.assertEqual(polys[2], Polynomial((0, -2, 1)))

    def test_recurrence_step(self):
        pair = catalog("bernoulli").pair(6)
        b1 = Polynomial((F(-1, 2), 1))
        self.assertEqual(sheffer_recurrence_step(pair, b1), Polynomial((F(1, 6), -1, 1)))
        central = ShefferPair(TruncatedSeries.one(8), S.central_difference(8))
        self.assertEqual(sheffer_recurrence_step(central, Polynomial.monomial(2)), basis_poly(CENTRAL, 3))

    def test_associated_flag(self):
        self.assertTrue(catalog("laguerre").pair(4).is_associated)
        self.assertFalse(catalog("euler").pair(4).is_associated)


class CentralLogExpTests(SimpleTestCase):
    def test_central_log_of_identity(self):
        self.assertEqual(
            list(central_log(TruncatedSeries.identity(9)).coeffs[:6]), [0, 1, 0, F(-1, 24), 0, F(3, 640)]
        )

    def test_central_exp_of_identity(self):
        self.assertEqual(central_exp(TruncatedSeries.identity(9)), S.central_difference(9))

    def test_degenerate_bases(self):
        t = TruncatedSeries.identity(12)
        f = (S.exp_scaled(LAM, 12) - 1) / LAM
        self.assertEqual(
            central_exp(f),
            S.degenerate_exp(t, LAM, F(1, 2)) - S.degenerate_exp(t, LAM, F(-1, 2)),
        )
        self.assertEqual(central_log(f), S.degenerate_log(S.central_root(12) ** 2, LAM))

    def test_round_trip(self):
        order = 20
        t = TruncatedSeries.identity(order)
        deltas = {
            "identity": t,
            "degenerate_exp": (S.exp_scaled(LAM, order) - 1) / LAM,
            "one_minus_exp_neg": 1 - S.exp_scaled(-1, order),
            "laguerre": -S.mul(t, S.reciprocal(1 - t)),
            "alpha": alpha_series(order),
        }
        for name, f in deltas.items():
            with self.subTest(delta=name):
                self.assertEqual(S.compose(central_exp(f), central_log(f)), t)

    def test_requires_delta(self):
        with self.assertRaises(SeriesDomainError):
            central_log(TruncatedSeries.one(4))
        with self.assertRaises(SeriesDomainError):
            central_exp(TruncatedSeries.monomial(2, 4))


class AssocTriangleTests(SimpleTestCase):
    def test_monomials_give_classical(self):
        spec = catalog("monomials")
        self.assertEqual(assoc_t2(spec, 8).rows, classical(FamilyId.T2, 8).rows)
        self.assertEqual(assoc_t1(spec, 8).rows, classical(FamilyId.T1, 8).rows)

    def test_bernoulli_second_kind(self):
        spec = catalog("bernoulli")
        self.assertEqual(assoc_t2(spec, 2).row(2), (F(1, 6), -1, 1))
        for route in T2Route:
            with self.subTest(route=route.value):
                self.assertEqual(assoc_t2(spec, 6, route).rows, assoc_t2(spec, 6).rows)

    def test_rising(self):
        spec = catalog("rising")
        self.assertEqual(assoc_t2(spec, 2).row(2), (0, 1, 1))
        self.assertEqual(assoc_t1(spec, 2).row(2), (0, -1, 1))

    def test_euler_first_kind(self):
        spec = catalog("euler")
        self.assertEqual(assoc_t1(spec, 2).row(2), (F(1, 2), 1, 1))
        self.assertEqual(assoc_t1(spec, 6, T1Route.FUNCTIONAL).rows, assoc_t1(spec, 6).rows)

    def test_laguerre_routes(self):
        spec = catalog("laguerre")
        self.assertEqual(assoc_t1(spec, 6, T1Route.GENFUNC).rows, assoc_t1(spec, 6).rows)
        self.assertEqual(assoc_t2(spec, 6, T2Route.GENFUNC).rows, assoc_t2(spec, 6).rows)

    def test_mittag_leffler_diagonal(self):
        spec = catalog("mittag_leffler")
        t2, t1 = assoc_t2(spec, 5), assoc_t1(spec, 5)
        for n in range(6):
            with self.subTest(n=n):
                self.assertEqual(t2(n, n), 2**n)
                self.assertEqual(t1(n, n), F(1, 2**n))

    def test_unsupported_routes(self):
        with self.assertRaises(UnsupportedRouteError):
            assoc_t2(catalog("bernoulli_product"), 4, T2Route.GENFUNC)
        with self.assertRaises(UnsupportedRouteError):
            assoc_t1(catalog("bernoulli"), 4, T1Route.GENFUNC)
        with self.assertRaises(UnsupportedRouteError):
            assoc_triangle(AssocKind.FIRST, catalog("bernoulli"), 4, "explicit")

    def test_assoc_triangle_defaults(self):
        triangle = assoc_triangle("t1", catalog("rising"), 4)
        self.assertEqual(triangle.route, "solve")
        self.assertEqual(triangle.kind, AssocKind.FIRST)
        self.assertEqual(triangle(4, 6), 0)
