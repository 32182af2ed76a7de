from ...catalog import catalog, catalog_listing
from ...constants import DEFAULT_N_MAX
from ...forms import AssocForm
from ...output import assoc_payload, to_json
from ...umbral import assoc_triangle
from ..base import CfnumCommand, add_param_arguments


class Command(CfnumCommand):
    help = "Calcula T2(n,k;P) ou T1(n,k;P) para uma sequência do catálogo."

    def add_arguments(self, parser):
        parser.add_argument("--kind", choices=["t1", "t2"], default="t2")
        parser.add_argument("--seq", help="Nome da sequência (veja --list-sequences).")
        parser.add_argument(
            "--route",
            help="t2: explicit | derivative | genfunc; t1: solve | functional | genfunc",
        )
        parser.add_argument("--n", type=int, default=DEFAULT_N_MAX)
        parser.add_argument("--format", default="json", choices=["json", "csv"])
        parser.add_argument("--order", type=int)
        parser.add_argument("--list-sequences", action="store_true")
        add_param_arguments(parser)

    def handle(self, *args, **options):
        if options["list_sequences"]:
            self.stdout.write(to_json(catalog_listing()))
            return
        form = self.validate(AssocForm, options)
        data = form.cleaned_data
        with self.domain_errors():
            spec = catalog(data["seq"], **form.params())
            triangle = assoc_triangle(data["kind"], spec, data["n"], data["route"], data["order"])
        self.emit(assoc_payload(triangle), triangle.rows, data["format"])
