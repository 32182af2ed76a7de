from django.apps import AppConfig


class CfnumConfig(AppConfig):
    name = 'cfnum'
    verbose_name = 'Números fatoriais centrais associados'
