"""
Triângulos numéricos clássicos e degenerados.

Cada família é gerada por duas rotas independentes:

* ``series``: T(n,k) = n!·[t^n] prefator·base^k/k!, acumulando potências
  coluna a coluna;
* ``algebra``: mudança de base em ``polynomials``, fórmulas fechadas (Lah,
  Lah central) e produtos de matrizes (TL1, TL2).

Triângulos prontos são imutáveis e ficam num cache do processo.
"""
from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from django.db import models

from . import series as S
from .exceptions import CrossCheckError, ParameterError, SeriesUsageError
from .polynomials import (
    BasisId,
    BasisKind,
    FALLING,
    Polynomial,
    basis_poly,
    change_basis,
    solve_triangular,
)
from .series import TruncatedSeries, format_rational, parse_rational

logger = logging.getLogger(__name__)


class FamilyId(models.TextChoices):
    S1 = "s1", "Stirling de primeira espécie"
    S2 = "s2", "Stirling de segunda espécie"
    S1L = "s1l", "Stirling degenerados de primeira espécie"
    S2L = "s2l", "Stirling degenerados de segunda espécie"
    T1 = "t1", "Fatoriais centrais de primeira espécie"
    T2 = "t2", "Fatoriais centrais de segunda espécie"
    T1L = "t1l", "Fatoriais centrais degenerados de primeira espécie"
    T2L = "t2l", "Fatoriais centrais degenerados de segunda espécie"
    R1L = "r1l", "Coeficientes de x^[n,λ] na base monomial"
    R2L = "r2l", "Coeficientes de x^n na base x^[k,λ]"
    LAH = "lah", "Lah (sem sinal)"
    L1C = "l1c", "Lah centrais de primeira espécie"
    L2C = "l2c", "Lah centrais de segunda espécie"
    TL1 = "tl1", "Lah fatoriais centrais de primeira espécie"
    TL2 = "tl2", "Lah fatoriais centrais de segunda espécie"
    GH = "gh", "Gould-Hopper G(n,k;r,s)"


class Route(models.TextChoices):
    SERIES = "series", "Extração de coeficientes de séries"
    ALGEBRA = "algebra", "Mudança de base e fórmulas fechadas"


LAMBDA_FAMILIES = frozenset(
    {FamilyId.S1L, FamilyId.S2L, FamilyId.T1L, FamilyId.T2L, FamilyId.R1L, FamilyId.R2L}
)
PARITY_FAMILIES = frozenset({FamilyId.T1, FamilyId.T2, FamilyId.L1C, FamilyId.L2C})


def required_params(family_id) -> tuple:
    family_id = FamilyId(family_id)
    if family_id in LAMBDA_FAMILIES:
        return ("lambda",)
    if family_id == FamilyId.GH:
        return ("r", "s")
    return ()


@dataclass(frozen=True)
class TriangleFamily:
    id: FamilyId
    params: tuple = ()

    @classmethod
    def build(cls, family_id, **params) -> TriangleFamily:
        """Valida e normaliza: só os parâmetros exigidos pela família ficam."""
        try:
            family_id = FamilyId(family_id)
        except ValueError:
            raise ParameterError(f"Família desconhecida: {family_id!r}.") from None
        values = []
        for name in required_params(family_id):
            if params.get(name) is None:
                raise ParameterError(f"A família {family_id.value} exige o parâmetro {name}.")
            value = parse_rational(params[name])
            if name in ("lambda", "r") and value == 0:
                raise ParameterError(f"O parâmetro {name} deve ser diferente de zero.")
            values.append((name, value))
        return cls(family_id, tuple(values))

    def param(self, name: str) -> Fraction:
        return dict(self.params)[name]

    @property
    def lam(self) -> Fraction:
        return self.param("lambda")

    def params_payload(self) -> dict:
        return {name: format_rational(value) for name, value in self.params}


@dataclass(frozen=True)
class Triangle:
    family: TriangleFamily
    n_max: int
    rows: tuple
    route: str = Route.SERIES

    def entry(self, n: int, k: int) -> Fraction:
        """T(n,k); zero fora de 0 <= k <= n."""
        if n > self.n_max:
            raise SeriesUsageError(f"Linha {n} acima de n_max={self.n_max}.")
        if n < 0 or k < 0 or k > n:
            return Fraction(0)
        return self.rows[n][k]

    def __call__(self, n: int, k: int) -> Fraction:
        return self.entry(n, k)

    def row(self, n: int) -> tuple:
        return self.rows[n]

    def restricted(self, n_max: int) -> Triangle:
        return Triangle(self.family, n_max, self.rows[: n_max + 1], self.route)


# --- ÁLGEBRA DE MATRIZES TRIANGULARES ---

def lower_product(left, right) -> tuple:
    """(A·B)(n,k) = Σ_{l=k}^{n} A(n,l)·B(l,k) para linhas triangulares."""
    size = min(len(left), len(right))
    return tuple(
        tuple(
            sum((left[n][l] * right[l][k] for l in range(k, n + 1)), Fraction(0))
            for k in range(n + 1)
        )
        for n in range(size)
    )


def lower_inverse(rows) -> tuple:
    out = []
    for n in range(len(rows)):
        diagonal = rows[n][n]
        new_row = [Fraction(0)] * (n + 1)
        new_row[n] = 1 / diagonal
        for k in range(n):
            acc = sum((rows[n][l] * out[l][k] for l in range(k, n)), Fraction(0))
            new_row[k] = -acc / diagonal
        out.append(tuple(new_row))
    return tuple(out)


# --- SÉRIES DO APARATO DE LAH CENTRAL ---

def alpha_series(order: int) -> TruncatedSeries:
    """α(t) = 4t/(4 − t²)."""
    t = TruncatedSeries.identity(order)
    return S.mul(t, S.reciprocal(TruncatedSeries.from_coeffs([1, 0, Fraction(-1, 4)], order)))


def alpha_bar_series(order: int) -> TruncatedSeries:
    """ᾱ(t) = (2/t)(√(t² + 1) − 1); a raiz é calculada uma ordem acima."""
    root = S.sqrt_series(TruncatedSeries.from_coeffs([1, 0, 1], order + 1))
    return S.shift_down(root - 1).scale(2)


def _series_spec(family: TriangleFamily, order: int):
    """(prefator ou None, base) da função geradora da família."""
    fid = family.id
    t = TruncatedSeries.identity(order)
    if fid == FamilyId.S1:
        return None, S.log1p(order)
    if fid == FamilyId.S2:
        return None, S.exp_scaled(1, order) - 1
    if fid == FamilyId.S1L:
        return None, S.degenerate_log(1 + t, family.lam)
    if fid == FamilyId.S2L:
        return None, S.degenerate_exp(t, family.lam) - 1
    if fid == FamilyId.T1:
        return None, S.central_inverse(order)
    if fid == FamilyId.T2:
        return None, S.central_difference(order)
    if fid == FamilyId.T1L:
        return None, S.degenerate_log(S.central_root(order) ** 2, family.lam)
    if fid == FamilyId.T2L:
        half = Fraction(1, 2)
        return None, (
            S.degenerate_exp(t, family.lam, half) - S.degenerate_exp(t, family.lam, -half)
        )
    if fid == FamilyId.R1L:
        return None, S.central_inverse(order).dilate(family.lam) / family.lam
    if fid == FamilyId.R2L:
        return None, S.central_difference(order).dilate(family.lam) / family.lam
    if fid == FamilyId.LAH:
        return None, S.mul(t, S.reciprocal(1 - t))
    if fid == FamilyId.L2C:
        return None, alpha_series(order)
    if fid == FamilyId.L1C:
        return None, alpha_bar_series(order)
    if fid == FamilyId.TL1:
        return None, S.compose(S.central_inverse(order), alpha_series(order))
    if fid == FamilyId.TL2:
        return None, S.compose(alpha_bar_series(order), S.central_difference(order))
    if fid == FamilyId.GH:
        one_plus_t = 1 + t
        return (
            S.pow_rational(one_plus_t, family.param("s")),
            S.pow_rational(one_plus_t, family.param("r")) - 1,
        )
    raise ParameterError(f"Família sem série geradora: {fid}.")


def columns_from_series(prefactor, base: TruncatedSeries, n_max: int) -> tuple:
    """Linhas de T(n,k) = n!·[t^n] prefator·base^k/k!."""
    rows = [[Fraction(0)] * (n + 1) for n in range(n_max + 1)]
    column = prefactor if prefactor is not None else TruncatedSeries.one(base.order)
    for k in range(n_max + 1):
        scale = Fraction(1, math.factorial(k))
        for n in range(k, n_max + 1):
            rows[n][k] = column.egf_coefficient(n) * scale
        column = S.mul(column, base)
    return tuple(tuple(row) for row in rows)


def triangle_by_series(family: TriangleFamily, n_max: int, order: int | None = None) -> Triangle:
    if n_max < 0:
        raise ParameterError("n_max deve ser >= 0.")
    order = S.resolve_order(n_max, order)
    prefactor, base = _series_spec(family, order)
    rows = columns_from_series(prefactor, base, n_max)
    return _finalize(Triangle(family, n_max, rows, Route.SERIES))


# --- ROTA ALGÉBRICA ---

def _connection(src: BasisId, dst: BasisId, n_max: int) -> tuple:
    """Linha n = coeficientes de src_n na base dst."""
    rows = []
    for n in range(n_max + 1):
        unit = [0] * n + [1]
        coeffs = change_basis(unit, src, dst)
        rows.append(tuple(coeffs + [Fraction(0)] * (n + 1 - len(coeffs))))
    return tuple(rows)


def _bases(family: TriangleFamily):
    """(origem, destino) das famílias que são matrizes de mudança de base."""
    monomial = BasisId(BasisKind.MONOMIAL)
    central = BasisId(BasisKind.CENTRAL)
    fid = family.id
    if fid in LAMBDA_FAMILIES:
        falling_lam = BasisId(BasisKind.FALLING_LAMBDA, family.lam)
        central_lam = BasisId(BasisKind.CENTRAL_LAMBDA, family.lam)
        return {
            FamilyId.S1L: (FALLING, falling_lam),
            FamilyId.S2L: (falling_lam, FALLING),
            FamilyId.T1L: (central, falling_lam),
            FamilyId.T2L: (falling_lam, central),
            FamilyId.R1L: (central_lam, monomial),
            FamilyId.R2L: (monomial, central_lam),
        }[fid]
    return {
        FamilyId.S1: (FALLING, monomial),
        FamilyId.S2: (monomial, FALLING),
        FamilyId.T1: (central, monomial),
        FamilyId.T2: (monomial, central),
    }.get(fid)


def lah_rows(n_max: int) -> tuple:
    """L(n,k) = C(n−1,k−1)·n!/k!, com L(0,0) = 1."""
    rows = []
    for n in range(n_max + 1):
        row = [Fraction(0)] * (n + 1)
        row[0] = Fraction(1 if n == 0 else 0)
        for k in range(1, n + 1):
            row[k] = Fraction(math.comb(n - 1, k - 1) * math.factorial(n), math.factorial(k))
        rows.append(tuple(row))
    return tuple(rows)


def central_lah2_rows(n_max: int) -> tuple:
    """L2c(n,k) = n!/k!·C(k+j−1, j)/4^j para n − k = 2j; expansão de (4t/(4−t²))^k."""
    rows = []
    for n in range(n_max + 1):
        row = [Fraction(0)] * (n + 1)
        for k in range(n + 1):
            if (n - k) % 2:
                continue
            j = (n - k) // 2
            if k == 0:
                row[k] = Fraction(1 if n == 0 else 0)
                continue
            row[k] = Fraction(
                math.factorial(n) * math.comb(k + j - 1, j), math.factorial(k) * 4**j
            )
        rows.append(tuple(row))
    return tuple(rows)


def gould_hopper_rows(r: Fraction, s: Fraction, n_max: int) -> tuple:
    """(rx+s)_n expandido nos fatoriais descendentes (x)_k."""
    falling = [basis_poly(FALLING, k) for k in range(n_max + 1)]
    rows = []
    for n in range(n_max + 1):
        p = Polynomial.from_linear_factors((s - j) / r for j in range(n)).scale(r**n)
        rows.append(tuple(solve_triangular(p, falling[: n + 1])))
    return tuple(rows)


def _algebra_rows(family: TriangleFamily, n_max: int) -> tuple:
    fid = family.id
    pair = _bases(family)
    if pair is not None:
        return _connection(*pair, n_max)
    if fid == FamilyId.LAH:
        return lah_rows(n_max)
    if fid == FamilyId.L2C:
        return central_lah2_rows(n_max)
    if fid == FamilyId.L1C:
        return lower_inverse(central_lah2_rows(n_max))
    if fid == FamilyId.TL1:
        t1 = _connection(BasisId(BasisKind.CENTRAL), BasisId(BasisKind.MONOMIAL), n_max)
        return lower_product(central_lah2_rows(n_max), t1)
    if fid == FamilyId.TL2:
        t2 = _connection(BasisId(BasisKind.MONOMIAL), BasisId(BasisKind.CENTRAL), n_max)
        return lower_product(t2, lower_inverse(central_lah2_rows(n_max)))
    if fid == FamilyId.GH:
        return gould_hopper_rows(family.param("r"), family.param("s"), n_max)
    raise ParameterError(f"Família sem rota algébrica: {fid}.")


def triangle_by_algebra(family: TriangleFamily, n_max: int) -> Triangle:
    if n_max < 0:
        raise ParameterError("n_max deve ser >= 0.")
    rows = _algebra_rows(family, n_max)
    return _finalize(Triangle(family, n_max, rows, Route.ALGEBRA))


def _finalize(triangle: Triangle) -> Triangle:
    """Confere diagonal e paridade antes de liberar o triângulo."""
    fid = triangle.family.id
    for n in range(triangle.n_max + 1):
        expected = triangle.family.param("r") ** n if fid == FamilyId.GH else 1
        if triangle.rows[n][n] != expected:
            raise CrossCheckError(
                f"{fid.value}: diagonal ({n},{n}) = {format_rational(triangle.rows[n][n])}",
                witness={"n": n, "k": n},
            )
        if fid in PARITY_FAMILIES:
            for k in range(n + 1):
                if (n - k) % 2 and triangle.rows[n][k]:
                    raise CrossCheckError(
                        f"{fid.value}: entrada ({n},{k}) deveria ser nula por paridade",
                        witness={"n": n, "k": k},
                    )
    return triangle


# --- CACHE ---

_cache: dict = {}
_cache_lock = threading.Lock()


def get_triangle(family, n_max: int, route=Route.SERIES, order: int | None = None, **params) -> Triangle:
    """Triângulo memoizado por (família, parâmetros, rota); reaproveita n_max maiores."""
    if not isinstance(family, TriangleFamily):
        family = TriangleFamily.build(family, **params)
    route = Route(route)
    key = (family, route)
    with _cache_lock:
        cached = _cache.get(key)
    if cached is not None and cached.n_max >= n_max:
        return cached.restricted(n_max) if cached.n_max > n_max else cached
    logger.debug("calculando %s (%s) até n=%s", family.id.value, route.value, n_max)
    if route == Route.SERIES:
        built = triangle_by_series(family, n_max, order)
    else:
        built = triangle_by_algebra(family, n_max)
    with _cache_lock:
        current = _cache.get(key)
        if current is None or current.n_max < built.n_max:
            _cache[key] = built
    return built


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()
    number_sequence.cache_clear()


def first_mismatch(left: Triangle, right: Triangle):
    """Primeiro (n, k, esquerda, direita) divergente, ou None."""
    for n in range(min(left.n_max, right.n_max) + 1):
        for k in range(n + 1):
            if left.entry(n, k) != right.entry(n, k):
                return n, k, left.entry(n, k), right.entry(n, k)
    return None


def crosscheck(family: TriangleFamily, n_max: int, order: int | None = None) -> Triangle:
    """Gera pelas duas rotas e exige igualdade exata."""
    by_series = get_triangle(family, n_max, Route.SERIES, order)
    by_algebra = get_triangle(family, n_max, Route.ALGEBRA)
    mismatch = first_mismatch(by_series, by_algebra)
    if mismatch is not None:
        n, k, lhs, rhs = mismatch
        logger.warning("rotas divergem em %s(%s,%s)", family.id.value, n, k)
        raise CrossCheckError(
            f"{family.id.value}({n},{k}): série {format_rational(lhs)} "
            f"≠ álgebra {format_rational(rhs)}",
            witness={"n": n, "k": k, "lhs": format_rational(lhs), "rhs": format_rational(rhs)},
        )
    return by_series


def classical(family_id, n_max: int, **params) -> Triangle:
    """Atalho usado pelas fórmulas fechadas: rota de séries, memoizada."""
    return get_triangle(family_id, n_max, Route.SERIES, **params)


# --- SEQUÊNCIAS DE NÚMEROS ---

class SequenceKind(models.TextChoices):
    BERNOULLI = "bernoulli", "Números de Bernoulli B_n"
    EULER = "euler", "Números de Euler E_n = E_n(0)"
    BERNOULLI_SECOND = "bernoulli_second", "Bernoulli de segunda espécie b_n"
    BELL = "bell", "Polinômios de Bell em x0"
    CENTRAL_BELL = "central_bell", "Polinômios de Bell centrais em x0"


@dataclass(frozen=True)
class NumberSequence:
    kind: SequenceKind
    values: tuple
    x0: Fraction | None = None

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]


@lru_cache(maxsize=None)
def number_sequence(kind, n_max: int, x0=None) -> NumberSequence:
    kind = SequenceKind(kind)
    order = n_max
    if kind == SequenceKind.BERNOULLI:
        egf = S.reciprocal(S.shift_down(S.exp_scaled(1, order + 1) - 1))
    elif kind == SequenceKind.EULER:
        egf = S.reciprocal((S.exp_scaled(1, order) + 1) / 2)
    elif kind == SequenceKind.BERNOULLI_SECOND:
        egf = S.reciprocal(S.shift_down(S.log1p(order + 1)))
    else:
        x0 = Fraction(1) if x0 is None else parse_rational(x0)
        base = S.exp_scaled(1, order) - 1 if kind == SequenceKind.BELL else S.central_difference(order)
        egf = S.exp_series(base.scale(x0))
        return NumberSequence(kind, tuple(egf.egf_coefficients()), x0)
    return NumberSequence(kind, tuple(egf.egf_coefficients()))
