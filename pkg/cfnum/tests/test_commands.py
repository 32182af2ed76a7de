import json
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings


def run(*args, **options):
    out = StringIO()
    call_command(*args, stdout=out, **options)
    return out.getvalue()


class TriangleCommandTests(SimpleTestCase):
    def test_csv(self):
        output = run("triangle", family="t2", n=6, format="csv")
        lines = output.splitlines()
        self.assertEqual(lines[0], "n,k,value")
        self.assertIn('6,4,"5"', lines)
        self.assertIn('3,1,"1/4"', lines)

    def test_json(self):
        payload = json.loads(run("triangle", family="s2l", n=4, **{"lambda": "1/3"}))
        self.assertEqual(payload["family"], "s2l")
        self.assertEqual(payload["params"], {"lambda": "1/3"})
        self.assertEqual(payload["n_max"], 4)
        self.assertEqual(len(payload["rows"][4]), 5)

    def test_gould_hopper(self):
        payload = json.loads(run("triangle", family="gh", n=4, r="2", s="1", no_crosscheck=True))
        self.assertEqual(payload["rows"][4][4], "16")

    def test_usage_errors(self):
        for options in ({"family": "xx"}, {"family": "s1l"}, {"family": "t2", "n": 6, "order": 3}):
            with self.subTest(options=options):
                with self.assertRaises(CommandError) as ctx:
                    run("triangle", **options)
                self.assertEqual(ctx.exception.returncode, 2)


class AssocCommandTests(SimpleTestCase):
    def test_second_kind(self):
        payload = json.loads(run("assoc", seq="bernoulli", n=2))
        self.assertEqual(payload["family"], "t2:bernoulli")
        self.assertEqual(payload["route"], "explicit")
        self.assertEqual(payload["rows"][2], ["1/6", "-1", "1"])

    def test_first_kind(self):
        payload = json.loads(run("assoc", kind="t1", seq="bernoulli_product", n=2))
        self.assertEqual(payload["rows"][2], ["11/36", "1/2", "1/3"])

    def test_routes_agree(self):
        genfunc = json.loads(run("assoc", kind="t1", seq="laguerre", n=6, route="genfunc"))
        solve = json.loads(run("assoc", kind="t1", seq="laguerre", n=6, route="solve"))
        self.assertEqual(genfunc["rows"], solve["rows"])

    def test_params(self):
        payload = json.loads(run("assoc", seq="falling_lambda", n=3, **{"lambda": "1/2"}))
        self.assertEqual(payload["params"], {"lambda": "1/2"})

    def test_list_sequences(self):
        self.assertEqual(len(json.loads(run("assoc", list_sequences=True))), 22)

    def test_errors(self):
        cases = (
            {"kind": "t2", "seq": "bernoulli_product", "route": "genfunc"},
            {"kind": "t1", "seq": "bernoulli", "route": "explicit"},
            {"seq": "hermite"},
            {"seq": "falling_lambda"},
            {},
        )
        for options in cases:
            with self.subTest(options=options):
                with self.assertRaises(CommandError) as ctx:
                    run("assoc", n=4, **options)
                self.assertEqual(ctx.exception.returncode, 2)

    def test_order_zero(self):
        for kind, seq, route in (("t2", "bernoulli", "genfunc"), ("t1", "laguerre", "functional")):
            with self.subTest(seq=seq, route=route):
                with self.assertRaises(CommandError) as ctx:
                    run("assoc", kind=kind, seq=seq, route=route, n=0, order=0)
                self.assertEqual(ctx.exception.returncode, 2)


class ConvertCommandTests(SimpleTestCase):
    def test_monomial_to_central(self):
        output = run("convert", "0,0,0,1", **{"from": "monomial", "to": "central"})
        self.assertEqual(output.strip(), "0,1/4,0,1")

    def test_central_to_monomial(self):
        output = run("convert", "0,0,0,0,0,0,1", **{"from": "central", "to": "monomial"})
        self.assertEqual(output.strip(), "0,0,4,0,-5,0,1")

    def test_lambda_basis(self):
        output = run("convert", "0,0,1", **{"from": "falling_lambda", "to": "monomial", "lambda": "1/2"})
        self.assertEqual(output.strip(), "0,-1/2,1")

    def test_errors(self):
        cases = (
            ("1,x", {"from": "monomial", "to": "central"}),
            ("1,2", {"from": "monomial", "to": "hermite"}),
            ("1,2", {"from": "monomial", "to": "central_lambda"}),
        )
        for coeffs, options in cases:
            with self.subTest(coeffs=coeffs, options=options):
                with self.assertRaises(CommandError) as ctx:
                    run("convert", coeffs, **options)
                self.assertEqual(ctx.exception.returncode, 2)


class SeriesCommandTests(SimpleTestCase):
    def test_identity(self):
        payload = json.loads(run("series", delta="identity", order=5))
        self.assertEqual(payload["view"], "ogf")
        self.assertEqual(payload["central_log"], ["0", "1", "0", "-1/24", "0", "3/640"])
        self.assertEqual(payload["f_bar"], ["0", "1", "0", "0", "0", "0"])

    def test_egf_view(self):
        payload = json.loads(run("series", delta="central", order=3, egf=True))
        self.assertEqual(payload["f"], ["0", "1", "0", "1/4"])

    def test_catalog_delta(self):
        payload = json.loads(run("series", delta="falling_lambda", order=4, **{"lambda": "1/3"}))
        self.assertEqual(payload["params"], {"lambda": "1/3"})

    @override_settings(CFNUM_ORDER=4)
    def test_order_from_settings(self):
        payload = json.loads(run("series", delta="identity"))
        self.assertEqual(payload["order"], 4)
        self.assertEqual(len(payload["central_log"]), 5)

    @override_settings(CFNUM_ORDER=None)
    def test_default_order(self):
        self.assertEqual(json.loads(run("series", delta="identity"))["order"], 10)

    def test_missing_lambda(self):
        with self.assertRaises(CommandError) as ctx:
            run("series", delta="degenerate_exp")
        self.assertEqual(ctx.exception.returncode, 2)


class VerifyCommandTests(SimpleTestCase):
    def test_empty_suite(self):
        report = json.loads(run("verify", suite="none"))
        self.assertEqual(report["checks"], [])
        self.assertTrue(report["all_pass"])

    def test_orthogonality(self):
        report = json.loads(run("verify", suite="orthogonality", n=4, jobs=2))
        self.assertTrue(report["all_pass"])
        self.assertTrue(all(check["status"] == "pass" for check in report["checks"]))

    def test_unknown_check(self):
        with self.assertRaises(CommandError) as ctx:
            run("verify", suite="bogus")
        self.assertEqual(ctx.exception.returncode, 2)


class ListSequencesCommandTests(SimpleTestCase):
    def test_listing(self):
        listing = json.loads(run("list_sequences"))
        self.assertEqual(listing[0]["name"], "monomials")
        self.assertIn("falling_lambda", [item["name"] for item in listing])
