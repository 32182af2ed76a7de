import dataclasses
from fractions import Fraction as F

from django.test import SimpleTestCase

from cfnum.catalog import catalog, xbar_of
from cfnum.exceptions import ParameterError, UnregisteredClosedFormError
from cfnum.identities import (
    CHECK_IDS,
    CLOSED_FORMS,
    QUADRUPLE_SUMS,
    Status,
    _falling,
    check_closed_forms,
    check_inverse_relations,
    check_one_step_recurrences,
    check_orthogonality,
    check_quadruple_sum,
    check_recurrences,
    check_routes,
    check_sheffer_axioms,
    check_sum_rule,
    check_triangle_routes,
    parse_suite,
    run_suite,
    suite_specs,
)
from cfnum.triangles import TriangleFamily
from cfnum.umbral import assoc_t2


class OrthogonalityTests(SimpleTestCase):
    def test_passes(self):
        for name in ("monomials", "laguerre", "bernoulli_product"):
            with self.subTest(sequence=name):
                self.assertTrue(check_orthogonality(catalog(name), 8).passed)

    def test_corrupted_table_is_detected(self):
        spec = catalog("monomials")
        t2 = assoc_t2(spec, 6)
        rows = [list(row) for row in t2.rows]
        rows[4][2] += 1
        corrupted = dataclasses.replace(t2, rows=tuple(tuple(row) for row in rows))
        result = check_orthogonality(spec, 6, t2=corrupted)
        self.assertEqual(result.status, Status.FAIL)
        self.assertEqual(result.witness["product"], "t1·t2")
        self.assertEqual((result.witness["n"], result.witness["l"]), (4, 2))
        self.assertEqual(result.as_dict()["status"], "fail")


class InverseRelationTests(SimpleTestCase):
    def test_passes(self):
        for name in ("monomials", "rising", "euler"):
            with self.subTest(sequence=name):
                self.assertTrue(check_inverse_relations(catalog(name), 6, trials=10).passed)

    def test_deterministic(self):
        spec = catalog("bell")
        self.assertEqual(
            check_inverse_relations(spec, 5, trials=5, seed=3),
            check_inverse_relations(spec, 5, trials=5, seed=3),
        )

    def test_trials_must_be_positive(self):
        with self.assertRaises(ParameterError):
            check_inverse_relations(catalog("monomials"), 4, trials=0)


class ClosedFormTests(SimpleTestCase):
    def test_every_catalog_entry(self):
        for spec in suite_specs():
            with self.subTest(sequence=spec.label):
                result = check_closed_forms(spec, 6)
                self.assertTrue(result.passed, result.witness)

    def test_registry_covers_both_kinds(self):
        self.assertEqual(len(CLOSED_FORMS), 22)
        for name, forms in CLOSED_FORMS.items():
            with self.subTest(sequence=name):
                self.assertEqual({kind.value for kind in forms}, {"t1", "t2"})

    def test_unregistered(self):
        with self.assertRaises(UnregisteredClosedFormError):
            check_closed_forms(xbar_of(catalog("monomials")), 4)


class QuadrupleSumTests(SimpleTestCase):
    def test_all_pass(self):
        for name in QUADRUPLE_SUMS:
            with self.subTest(name=name):
                self.assertTrue(check_quadruple_sum(name, 5).passed)

    def test_capped(self):
        self.assertEqual(check_quadruple_sum("central_bell", 9).n_max, 6)

    def test_unknown(self):
        with self.assertRaises(UnregisteredClosedFormError):
            check_quadruple_sum("bell", 4)


class RecurrenceTests(SimpleTestCase):
    def test_two_step(self):
        for name in ("monomials", "bernoulli", "rising"):
            with self.subTest(sequence=name):
                self.assertTrue(check_recurrences(catalog(name), 8).passed)

    def test_one_step_form_fails(self):
        result = check_one_step_recurrences(catalog("monomials"), 4)
        self.assertFalse(result.passed)
        self.assertEqual(result.id, "recurrences_one_step")
        self.assertEqual(result.witness, {"kind": "t2", "n": 1, "k": 1, "lhs": "0", "rhs": "1/2"})


class SumRuleTests(SimpleTestCase):
    def test_falling_value(self):
        self.assertEqual(_falling(F(3, 2), 2), F(3, 4))
        self.assertEqual(_falling(F(1, 2), 0), 1)

    def test_passes(self):
        for name in ("monomials", "bernoulli_product", "tlb2"):
            with self.subTest(sequence=name):
                self.assertTrue(check_sum_rule(catalog(name), 8).passed)


class RouteAgreementTests(SimpleTestCase):
    def test_routes(self):
        for name in ("bernoulli_product", "laguerre", "tlb1", "poisson_charlier"):
            params = {"a": F(1, 2)} if name == "poisson_charlier" else {}
            with self.subTest(sequence=name):
                self.assertTrue(check_routes(catalog(name, **params), 6).passed)

    def test_sheffer_axioms(self):
        for name in ("bernoulli", "euler", "gould_hopper", "tlb2"):
            params = {"r": 2, "s": 1} if name == "gould_hopper" else {}
            with self.subTest(sequence=name):
                self.assertTrue(check_sheffer_axioms(catalog(name, **params), 6).passed)

    def test_triangle_routes(self):
        result = check_triangle_routes(TriangleFamily.build("t1l", **{"lambda": "1/3"}), 6)
        self.assertTrue(result.passed)
        self.assertEqual(result.sequence, "t1l[lambda=1/3]")


class SuiteTests(SimpleTestCase):
    def test_parse_suite(self):
        self.assertEqual(parse_suite("all"), CHECK_IDS)
        self.assertEqual(parse_suite(None), CHECK_IDS)
        self.assertEqual(parse_suite("none"), ())
        self.assertEqual(parse_suite("routes, orthogonality"), ("orthogonality", "routes"))
        with self.assertRaises(ParameterError):
            parse_suite("orthogonality,foo")

    def test_empty_suite(self):
        report = run_suite([], n_max=4)
        self.assertEqual(report["checks"], [])
        self.assertTrue(report["all_pass"])
        self.assertEqual(report["suite_version"], "1.0")

    def test_report(self):
        report = run_suite(["orthogonality"], n_max=4, seed=7)
        self.assertTrue(report["all_pass"])
        self.assertEqual(report["params"]["n_max"], 4)
        self.assertEqual(report["params"]["seed"], 7)
        self.assertEqual(report["params"]["lambda"], "1/3")
        self.assertEqual({check["id"] for check in report["checks"]}, {"orthogonality"})
        self.assertEqual(len(report["checks"]), len(suite_specs()))

    def test_jobs_do_not_change_report(self):
        checks = ["sum_rule", "quadruple_sums"]
        self.assertEqual(run_suite(checks, n_max=4, jobs=1), run_suite(checks, n_max=4, jobs=3))
