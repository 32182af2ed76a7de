from ...forms import ConvertForm
from ...output import rows_payload
from ...polynomials import BasisId, change_basis
from ..base import CfnumCommand


class Command(CfnumCommand):
    help = 'Converte coeficientes entre bases: convert --from monomial --to central "0,0,0,1".'

    def add_arguments(self, parser):
        parser.add_argument("coeffs", help="Coeficientes c0,c1,... como racionais p/q.")
        parser.add_argument("--from", dest="from", required=True)
        parser.add_argument("--to", dest="to", required=True)
        parser.add_argument("--lambda", dest="lambda")

    def handle(self, *args, **options):
        form = self.validate(ConvertForm, options)
        data = form.cleaned_data
        with self.domain_errors():
            src = BasisId(data["from"], data["lambda"])
            dst = BasisId(data["to"], data["lambda"])
            coeffs = change_basis(data["coeffs"], src, dst)
        self.stdout.write(",".join(rows_payload([coeffs])[0]))
