from ...constants import DEFAULT_N_MAX
from ...forms import TriangleForm
from ...output import triangle_payload
from ...triangles import Route, TriangleFamily, crosscheck, get_triangle
from ..base import CfnumCommand, add_param_arguments


class Command(CfnumCommand):
    help = "Emite um triângulo clássico ou degenerado (JSON ou CSV)."

    def add_arguments(self, parser):
        parser.add_argument("--family", required=True, help="s1, s2, s1l, ..., tl2, gh")
        parser.add_argument("--n", type=int, default=DEFAULT_N_MAX)
        parser.add_argument("--format", default="json", choices=["json", "csv"])
        parser.add_argument("--order", type=int)
        parser.add_argument(
            "--no-crosscheck", action="store_true",
            help="Não confere a rota de séries contra a rota algébrica.",
        )
        add_param_arguments(parser, ("lambda", "r", "s"))

    def handle(self, *args, **options):
        form = self.validate(TriangleForm, options)
        data = form.cleaned_data
        with self.domain_errors():
            family = TriangleFamily.build(data["family"], **form.params())
            if options["no_crosscheck"]:
                triangle = get_triangle(family, data["n"], Route.SERIES, data["order"])
            else:
                triangle = crosscheck(family, data["n"], data["order"])
        self.emit(triangle_payload(triangle), triangle.rows, data["format"])
