from django.conf import settings

from ... import series as S
from ...catalog import delta_series
from ...constants import DEFAULT_SERIES_ORDER
from ...forms import SeriesForm
from ...output import series_payload, to_json
from ...umbral import central_exp, central_log
from ..base import CfnumCommand


class Command(CfnumCommand):
    help = "Emite f, f̄, LC_f e EC_f de uma série delta nomeada."

    def add_arguments(self, parser):
        parser.add_argument(
            "--delta", required=True,
            help="identity, degenerate_exp, one_minus_exp_neg, laguerre, alpha, central "
                 "ou o nome de uma sequência de Sheffer do catálogo",
        )
        parser.add_argument(
            "--order", type=int,
            help=f"Ordem de truncamento (padrão: CFNUM_ORDER ou {DEFAULT_SERIES_ORDER}).",
        )
        parser.add_argument("--egf", action="store_true", help="Coeficientes na visão EGF (n!·c_n).")
        for name in ("lambda", "r", "s", "a"):
            parser.add_argument(f"--{name}", dest=name)

    def handle(self, *args, **options):
        form = self.validate(SeriesForm, options)
        data = form.cleaned_data
        order = data["order"] or getattr(settings, "CFNUM_ORDER", None) or DEFAULT_SERIES_ORDER
        params = {key: options.get(key) for key in ("lambda", "r", "s", "a")}
        with self.domain_errors():
            f, used = delta_series(data["delta"], order, **params)
            payload = series_payload(
                data["delta"], used, f, S.comp_inverse(f), central_log(f), central_exp(f),
                egf=data["egf"],
            )
        self.stdout.write(to_json(payload))
