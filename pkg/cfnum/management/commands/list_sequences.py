from ...catalog import catalog_listing
from ...output import to_json
from ..base import CfnumCommand


class Command(CfnumCommand):
    help = "Lista as sequências do catálogo e os parâmetros que cada uma exige."

    def handle(self, *args, **options):
        self.stdout.write(to_json(catalog_listing()))
