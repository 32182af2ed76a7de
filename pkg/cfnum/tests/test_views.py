from django.test import SimpleTestCase
from django.urls import reverse


class TriangleViewTests(SimpleTestCase):
    def test_rows(self):
        response = self.client.get(reverse("triangle"), {"family": "t2", "n": 6})
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json()["rows"][6][4], "5")

    def test_invalid_family(self):
        response = self.client.get(reverse("triangle"), {"family": "xx"})
        self.assertEqual(response.status_code, 400)
        self.assertIn("family", response.json()["errors"])

    def test_missing_lambda(self):
        response = self.client.get(reverse("triangle"), {"family": "t1l"})
        self.assertEqual(response.status_code, 422)

    def test_decimal_lambda_rejected(self):
        response = self.client.get(reverse("triangle"), {"family": "t1l", "lambda": "0.5"})
        self.assertEqual(response.status_code, 400)
        self.assertIn("lambda", response.json()["errors"])


class AssocViewTests(SimpleTestCase):
    def test_rows(self):
        response = self.client.get(reverse("assoc"), {"kind": "t1", "seq": "euler", "n": 2})
        self.assertEqual(response.status_code, 200)
        payload = response.json()
        self.assertEqual(payload["family"], "t1:euler")
        self.assertEqual(payload["rows"][2], ["1/2", "1", "1"])

    def test_unsupported_route(self):
        response = self.client.get(
            reverse("assoc"), {"kind": "t2", "seq": "bernoulli_product", "route": "genfunc", "n": 4}
        )
        self.assertEqual(response.status_code, 422)


class ConvertViewTests(SimpleTestCase):
    def test_convert(self):
        response = self.client.get(
            reverse("convert"), {"coeffs": "0,0,0,1", "from": "monomial", "to": "central"}
        )
        self.assertEqual(response.status_code, 200)
        self.assertEqual(
            response.json(),
            {"from": "monomial", "to": "central", "coeffs": ["0", "1/4", "0", "1"], "lambda": None},
        )

    def test_empty_coeffs(self):
        response = self.client.get(reverse("convert"), {"coeffs": "", "from": "monomial", "to": "central"})
        self.assertEqual(response.status_code, 400)


class SequenceListViewTests(SimpleTestCase):
    def test_listing(self):
        response = self.client.get(reverse("sequences"))
        self.assertEqual(response.status_code, 200)
        self.assertEqual(len(response.json()["sequences"]), 22)
