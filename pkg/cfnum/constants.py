from fractions import Fraction

# Parâmetros padrão da suíte de verificação (λ, r, s, a).
DEFAULT_LAMBDA = Fraction(1, 3)
DEFAULT_R = Fraction(2)
DEFAULT_S = Fraction(1)
DEFAULT_A = Fraction(1, 2)
DEFAULT_PARAMS = {
    "lambda": DEFAULT_LAMBDA,
    "r": DEFAULT_R,
    "s": DEFAULT_S,
    "a": DEFAULT_A,
}

# Vetores aleatórios das relações inversas.
RANDOM_NUMERATOR_RANGE = (-9, 9)
RANDOM_DENOMINATOR_RANGE = (1, 9)
DEFAULT_TRIALS = 100
DEFAULT_SEED = 0

# As somas quádruplas são avaliadas diretamente só até este n.
QUADRUPLE_SUM_MAX_N = 6

DEFAULT_N_MAX = 8
DEFAULT_SERIES_ORDER = 10
SUITE_VERSION = "1.0"

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CROSSCHECK = 3
