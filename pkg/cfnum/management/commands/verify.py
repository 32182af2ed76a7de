from django.conf import settings
from django.core.management.base import CommandError

from ...constants import DEFAULT_N_MAX, DEFAULT_SEED, EXIT_VERIFY_FAILED
from ...forms import VerifyForm
from ...identities import run_suite
from ...output import to_json
from ..base import CfnumCommand


class Command(CfnumCommand):
    help = "Roda a suíte de identidades e emite o relatório JSON (saída 1 se algo falhar)."

    def add_arguments(self, parser):
        parser.add_argument("--suite", default="all", help="all, none ou ids separados por vírgula.")
        parser.add_argument("--n", type=int, default=DEFAULT_N_MAX)
        parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
        parser.add_argument("--jobs", type=int)

    def handle(self, *args, **options):
        form = self.validate(VerifyForm, options)
        data = form.cleaned_data
        jobs = data["jobs"] or settings.CFNUM_VERIFY_JOBS
        with self.domain_errors():
            report = run_suite(data["suite"], data["n"], data["seed"], jobs)
        self.stdout.write(to_json(report))
        if not report["all_pass"]:
            failed = [c["id"] + ":" + c["sequence"] for c in report["checks"] if c["status"] != "pass"]
            raise CommandError(
                f"{len(failed)} checagem(ns) falharam: {', '.join(failed[:5])}",
                returncode=EXIT_VERIFY_FAILED,
            )
