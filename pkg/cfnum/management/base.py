"""Base dos comandos: validação por formulário e códigos de saída."""
import logging
from contextlib import contextmanager

from django.core.management.base import BaseCommand, CommandError

from ..constants import EXIT_CROSSCHECK, EXIT_USAGE
from ..exceptions import CfnumError, CrossCheckError
from ..forms import form_errors
from ..output import to_csv, to_json

logger = logging.getLogger(__name__)


def add_param_arguments(parser, names=("lambda", "r", "s", "a")):
    for name in names:
        parser.add_argument(f"--{name}", dest=name, help=f"Parâmetro {name} como racional p/q.")


class CfnumCommand(BaseCommand):
    """stdout só recebe o payload; erros viram CommandError com returncode."""

    def validate(self, form_class, data):
        form = form_class(data)
        if not form.is_valid():
            raise CommandError(form_errors(form), returncode=EXIT_USAGE)
        return form

    @contextmanager
    def domain_errors(self):
        try:
            yield
        except CrossCheckError as exc:
            logger.error("cross-check: %s (testemunha %s)", exc, exc.witness)
            raise CommandError(str(exc), returncode=EXIT_CROSSCHECK) from exc
        except CfnumError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE) from exc

    def emit(self, payload, rows=None, fmt="json"):
        if fmt == "csv":
            self.stdout.write(to_csv(rows), ending="")
        else:
            self.stdout.write(to_json(payload))
