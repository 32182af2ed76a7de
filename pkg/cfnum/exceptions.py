"""Hierarquia de erros do cfnum.

Falhas de identidade não são exceções: viram resultados (IdentityCheck).
"""


class CfnumError(Exception):
    """Base de todos os erros do pacote."""


class SeriesUsageError(CfnumError, ValueError):
    """Uso incorreto da API: ordens diferentes, grau acima do truncamento."""


class SeriesDomainError(CfnumError, ValueError):
    """Série fora do domínio da operação (não delta, c_0 inválido, ...)."""


class ParameterError(CfnumError, ValueError):
    """Parâmetro ausente ou inválido (λ = 0, r = 0, a = 0, n < 0)."""


class UnknownSequenceError(CfnumError, LookupError):
    pass


class UnsupportedRouteError(CfnumError):
    """A rota pedida não vale para a regra da sequência."""


class UnregisteredClosedFormError(CfnumError, LookupError):
    pass


class CrossCheckError(CfnumError):
    """Duas rotas independentes discordaram: erro interno."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
