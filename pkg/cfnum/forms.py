# cfnum/forms.py
from django import forms
from django.core.exceptions import ValidationError

from .catalog import CATALOG
from .constants import DEFAULT_N_MAX, DEFAULT_SEED
from .exceptions import ParameterError
from .identities import parse_suite
from .polynomials import BasisKind
from .series import parse_rational
from .triangles import FamilyId
from .umbral import AssocKind, T1Route, T2Route

PARAM_NAMES = ("lambda", "r", "s", "a")


class RationalField(forms.CharField):
    """Racional exato no formato "p/q"; nunca aceita decimais."""

    def to_python(self, value):
        value = super().to_python(value)
        if value in self.empty_values:
            return None
        try:
            return parse_rational(value)
        except ParameterError as exc:
            raise ValidationError(str(exc), code="invalid") from exc


class RationalListField(forms.CharField):
    """Lista "c0,c1,..." de racionais."""

    def to_python(self, value):
        value = super().to_python(value)
        if value in self.empty_values:
            return []
        try:
            return [parse_rational(part) for part in value.split(",")]
        except ParameterError as exc:
            raise ValidationError(str(exc), code="invalid") from exc


class ParamsMixin(forms.Form):
    """Parâmetros nomeados λ, r, s, a (o campo se chama "lambda")."""

    r = RationalField(required=False)
    s = RationalField(required=False)
    a = RationalField(required=False)

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # "lambda" é palavra reservada, não dá para declarar como atributo.
        self.fields["lambda"] = RationalField(required=False, label="λ")

    def params(self) -> dict:
        return {
            name: self.cleaned_data[name]
            for name in PARAM_NAMES
            if self.cleaned_data.get(name) is not None
        }


class TableForm(ParamsMixin):
    n = forms.IntegerField(min_value=0, required=False)
    format = forms.ChoiceField(choices=[("json", "JSON"), ("csv", "CSV")], required=False)
    order = forms.IntegerField(min_value=0, required=False)

    def clean_n(self):
        n = self.cleaned_data.get("n")
        return DEFAULT_N_MAX if n is None else n

    def clean_format(self):
        return self.cleaned_data.get("format") or "json"

    def clean(self):
        cleaned_data = super().clean()
        n, order = cleaned_data.get("n"), cleaned_data.get("order")
        if n is not None and order is not None and order < n:
            self.add_error("order", f"A ordem de truncamento ({order}) não pode ser menor que n ({n}).")
        return cleaned_data


class TriangleForm(TableForm):
    family = forms.ChoiceField(choices=FamilyId.choices)


class AssocForm(TableForm):
    kind = forms.ChoiceField(choices=AssocKind.choices)
    seq = forms.CharField()
    route = forms.CharField(required=False)

    def clean_seq(self):
        seq = self.cleaned_data["seq"].strip()
        if seq not in CATALOG:
            raise ValidationError(
                f"Sequência desconhecida: {seq!r}. Use list_sequences para ver as opções."
            )
        return seq

    def clean(self):
        cleaned_data = super().clean()
        kind, route = cleaned_data.get("kind"), cleaned_data.get("route")
        if kind and route:
            routes = T2Route if kind == AssocKind.SECOND else T1Route
            if route not in routes.values:
                self.add_error(
                    "route",
                    f"Rota {route!r} não existe para {kind}. Opções: {', '.join(routes.values)}.",
                )
        cleaned_data["route"] = route or None
        return cleaned_data


class ConvertForm(forms.Form):
    coeffs = RationalListField()

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.fields["from"] = forms.ChoiceField(choices=BasisKind.choices)
        self.fields["to"] = forms.ChoiceField(choices=BasisKind.choices)
        self.fields["lambda"] = RationalField(required=False, label="λ")

    def clean_coeffs(self):
        coeffs = self.cleaned_data["coeffs"]
        if not coeffs:
            raise ValidationError("Informe ao menos um coeficiente.")
        return coeffs


class SeriesForm(forms.Form):
    delta = forms.CharField()
    order = forms.IntegerField(min_value=1, required=False)
    egf = forms.BooleanField(required=False)

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.fields["lambda"] = RationalField(required=False, label="λ")


class VerifyForm(forms.Form):
    suite = forms.CharField(required=False)
    n = forms.IntegerField(min_value=0, required=False)
    seed = forms.IntegerField(required=False)
    jobs = forms.IntegerField(min_value=1, required=False)

    def clean_n(self):
        n = self.cleaned_data.get("n")
        return DEFAULT_N_MAX if n is None else n

    def clean_seed(self):
        seed = self.cleaned_data.get("seed")
        return DEFAULT_SEED if seed is None else seed

    def clean_suite(self):
        try:
            return parse_suite(self.cleaned_data.get("suite"))
        except ParameterError as exc:
            raise ValidationError(str(exc)) from exc


def form_errors(form: forms.Form) -> str:
    """Erros do formulário numa linha só, para mensagens de CLI."""
    parts = []
    for field, errors in form.errors.items():
        prefix = "" if field == "__all__" else f"{field}: "
        parts.append(prefix + " ".join(errors))
    return "; ".join(parts)
