# cfnum/views.py
import logging

from django.http import JsonResponse
from django.views import View

from .catalog import catalog, catalog_listing
from .exceptions import CfnumError, CrossCheckError
from .forms import AssocForm, ConvertForm, TriangleForm
from .output import assoc_payload, rows_payload, triangle_payload
from .polynomials import BasisId, change_basis
from .series import format_rational
from .triangles import Route, TriangleFamily, get_triangle
from .umbral import assoc_triangle

logger = logging.getLogger(__name__)


# --- MIXINS ---

class JsonFormMixin:
    """Valida a query string com ``form_class`` e devolve JSON.

    400 para entrada inválida, 422 para erro do domínio, 500 se duas rotas
    independentes discordarem.
    """
    form_class = None

    def get(self, request, *args, **kwargs):
        form = self.form_class(request.GET)
        if not form.is_valid():
            return JsonResponse({"errors": form.errors.get_json_data()}, status=400)
        try:
            payload = self.compute(form.cleaned_data, form)
        except CrossCheckError as exc:
            logger.error("cross-check falhou em %s: %s", request.path, exc)
            return JsonResponse({"errors": {"__all__": [str(exc)]}, "witness": exc.witness}, status=500)
        except CfnumError as exc:
            return JsonResponse({"errors": {"__all__": [str(exc)]}}, status=422)
        return JsonResponse(payload, json_dumps_params={"ensure_ascii": False})

    def compute(self, data, form):
        raise NotImplementedError


# --- VIEWS ---

class TriangleView(JsonFormMixin, View):
    form_class = TriangleForm

    def compute(self, data, form):
        family = TriangleFamily.build(data["family"], **form.params())
        triangle = get_triangle(family, data["n"], Route.SERIES, data.get("order"))
        return triangle_payload(triangle)


class AssocView(JsonFormMixin, View):
    form_class = AssocForm

    def compute(self, data, form):
        spec = catalog(data["seq"], **form.params())
        triangle = assoc_triangle(data["kind"], spec, data["n"], data["route"], data.get("order"))
        return assoc_payload(triangle)


class ConvertView(JsonFormMixin, View):
    form_class = ConvertForm

    def compute(self, data, form):
        lam = data.get("lambda")
        src = BasisId(data["from"], lam)
        dst = BasisId(data["to"], lam)
        coeffs = change_basis(data["coeffs"], src, dst)
        return {
            "from": src.kind.value,
            "to": dst.kind.value,
            "coeffs": rows_payload([coeffs])[0],
            "lambda": format_rational(lam) if lam is not None else None,
        }


class SequenceListView(View):
    def get(self, request, *args, **kwargs):
        return JsonResponse({"sequences": catalog_listing()}, json_dumps_params={"ensure_ascii": False})
