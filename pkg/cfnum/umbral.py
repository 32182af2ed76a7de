"""
Cálculo umbral: funcionais lineares, operadores, sequências de Sheffer e os
números fatoriais centrais associados a uma sequência de polinômios P.

    p_n(x) = Σ_k T2(n,k;P)·x^[k]        x^[n] = Σ_k T1(n,k;P)·p_k(x)
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING

from django.db import models

from . import series as S
from .exceptions import CrossCheckError, SeriesDomainError, SeriesUsageError, UnsupportedRouteError
from .polynomials import CENTRAL, Polynomial, basis_poly, solve_triangular
from .series import TruncatedSeries
from .triangles import FamilyId, classical, columns_from_series

if TYPE_CHECKING:
    from .catalog import PolySequenceSpec

logger = logging.getLogger(__name__)


# --- FUNCIONAIS E OPERADORES ---

def functional_apply(functional: TruncatedSeries, p: Polynomial) -> Fraction:
    """⟨L | p⟩ = Σ_n n!·[t^n]L · p_n."""
    if p.degree > functional.order:
        raise SeriesUsageError(
            f"Grau {p.degree} acima do truncamento {functional.order} do funcional."
        )
    return sum(
        (functional.egf_coefficient(n) * c for n, c in enumerate(p.coeffs)),
        Fraction(0),
    )


def apply_operator(operator: TruncatedSeries, p: Polynomial) -> Polynomial:
    """f(t)·x^n = Σ_k a_k·(n)_k·x^(n−k), estendido por linearidade."""
    if p.degree > operator.order:
        raise SeriesUsageError(
            f"Grau {p.degree} acima do truncamento {operator.order} do operador."
        )
    out = [Fraction(0)] * max(len(p.coeffs), 1)
    for n, c in enumerate(p.coeffs):
        if not c:
            continue
        for k in range(n + 1):
            a = operator.coeffs[k]
            if a:
                out[n - k] += c * a * math.perm(n, k)
    return Polynomial(tuple(out))


# --- SHEFFER ---

@dataclass(frozen=True)
class ShefferPair:
    g: TruncatedSeries
    f: TruncatedSeries

    def __post_init__(self):
        if self.g.order != self.f.order:
            raise SeriesUsageError("g e f precisam ter a mesma ordem.")
        if self.order < 1:
            raise SeriesUsageError("O par de Sheffer exige ordem de truncamento >= 1.")
        if not self.g.is_invertible:
            raise SeriesDomainError("g precisa ser inversível (c_0 ≠ 0).")
        if not self.f.is_delta:
            raise SeriesDomainError("f precisa ser uma série delta (c_0 = 0, c_1 ≠ 0).")

    @property
    def order(self) -> int:
        return self.f.order

    @cached_property
    def f_bar(self) -> TruncatedSeries:
        return S.comp_inverse(self.f)

    @cached_property
    def conjugate_prefactor(self) -> TruncatedSeries:
        """1/g(f̄(t))."""
        return S.reciprocal(S.compose(self.g, self.f_bar))

    @property
    def is_associated(self) -> bool:
        """g = 1, isto é, sequência associada a f."""
        return self.g == TruncatedSeries.one(self.order)


def sheffer_polys(pair: ShefferPair, n_max: int) -> list:
    """s_0..s_n_max pela representação conjugada: [x^j]s_n = n!·[t^n] f̄^j/(j!·g(f̄))."""
    if n_max > pair.order:
        raise SeriesUsageError(f"n_max={n_max} acima da ordem {pair.order} do par.")
    coeffs = [[Fraction(0)] * (n + 1) for n in range(n_max + 1)]
    column = pair.conjugate_prefactor
    for j in range(n_max + 1):
        scale = Fraction(1, math.factorial(j))
        for n in range(j, n_max + 1):
            coeffs[n][j] = column.egf_coefficient(n) * scale
        column = S.mul(column, pair.f_bar)
    return [Polynomial(tuple(row)) for row in coeffs]


def sheffer_recurrence_step(pair: ShefferPair, s_n: Polynomial) -> Polynomial:
    """s_(n+1) = (x − g'(t)/g(t))·(1/f'(t))·s_n."""
    df = S.derivative(pair.f)
    log_dg = S.mul(S.derivative(pair.g), S.reciprocal(pair.g.truncate(df.order)))
    h = apply_operator(S.reciprocal(df), s_n)
    return Polynomial.x() * h - apply_operator(log_dg, h)


# --- LOGARITMO E EXPONENCIAL CENTRAIS ---

def central_log(f: TruncatedSeries) -> TruncatedSeries:
    """LC_f(t) = f(l̄(t)), com l(t) = e^(t/2) − e^(−t/2)."""
    if not f.is_delta:
        raise SeriesDomainError("central_log exige uma série delta.")
    return S.compose(f, S.comp_inverse(S.central_difference(f.order)))


def central_exp(f: TruncatedSeries) -> TruncatedSeries:
    """EC_f(t) = l(f̄(t)) = e^(f̄/2) − e^(−f̄/2)."""
    if not f.is_delta:
        raise SeriesDomainError("central_exp exige uma série delta.")
    return S.compose(S.central_difference(f.order), S.comp_inverse(f))


# --- TRIÂNGULOS ASSOCIADOS ---

class AssocKind(models.TextChoices):
    SECOND = "t2", "Segunda espécie T2(n,k;P)"
    FIRST = "t1", "Primeira espécie T1(n,k;P)"


class T2Route(models.TextChoices):
    EXPLICIT = "explicit", "Σ T2(l,k)·p_(n,l)"
    DERIVATIVE = "derivative", "Σ S2(l,k)·(1/l!)p_n^(l)(−k/2)"
    GENFUNC = "genfunc", "Função geradora 1/g(f̄)·l(f̄)^k/k!"


class T1Route(models.TextChoices):
    SOLVE = "solve", "Sistema triangular"
    FUNCTIONAL = "functional", "(1/k!)⟨g·f^k | x^[n]⟩"
    GENFUNC = "genfunc", "Logaritmo central (LC_f)^k/k!"


DEFAULT_ROUTES = {AssocKind.SECOND: T2Route.EXPLICIT, AssocKind.FIRST: T1Route.SOLVE}


@dataclass(frozen=True)
class AssocTriangle:
    kind: AssocKind
    spec: "PolySequenceSpec"
    n_max: int
    route: str
    rows: tuple

    def entry(self, n: int, k: int) -> Fraction:
        if n > self.n_max:
            raise SeriesUsageError(f"Linha {n} acima de n_max={self.n_max}.")
        if n < 0 or k < 0 or k > n:
            return Fraction(0)
        return self.rows[n][k]

    def __call__(self, n: int, k: int) -> Fraction:
        return self.entry(n, k)

    def row(self, n: int) -> tuple:
        return self.rows[n]


def _require_pair(spec, route, order: int) -> ShefferPair:
    if not spec.has_pair:
        raise UnsupportedRouteError(
            f"A rota {route} exige uma sequência de Sheffer; {spec.name} não é."
        )
    return spec.pair(order)


def _check_reconstruction(kind, spec, rows, polys, route) -> None:
    for n, row in enumerate(rows):
        if kind == AssocKind.SECOND:
            lhs = polys[n]
            rhs = sum((basis_poly(CENTRAL, k).scale(c) for k, c in enumerate(row)), Polynomial())
        else:
            lhs = basis_poly(CENTRAL, n)
            rhs = sum((polys[k].scale(c) for k, c in enumerate(row)), Polynomial())
        if lhs != rhs:
            logger.warning("reconstrução falhou: %s %s rota %s n=%s", spec.name, kind, route, n)
            raise CrossCheckError(
                f"{spec.name}: a rota {route} não reconstrói a linha {n} ({kind.value})",
                witness={"n": n},
            )


def assoc_t2(spec: "PolySequenceSpec", n_max: int, route=T2Route.EXPLICIT,
             order: int | None = None) -> AssocTriangle:
    """T2(n,k;P), os coeficientes de p_n na base x^[k]."""
    route = T2Route(route)
    order = S.resolve_order(n_max, order)
    polys = spec.polys(n_max, order)
    if route == T2Route.EXPLICIT:
        t2 = classical(FamilyId.T2, n_max)
        rows = tuple(
            tuple(
                sum((t2(l, k) * polys[n].coefficient(l) for l in range(k, n + 1)), Fraction(0))
                for k in range(n + 1)
            )
            for n in range(n_max + 1)
        )
    elif route == T2Route.DERIVATIVE:
        s2 = classical(FamilyId.S2, n_max)
        rows = tuple(
            tuple(
                sum(
                    (s2(l, k) * polys[n].derivative_taylor(Fraction(-k, 2), l)
                     for l in range(k, n + 1)),
                    Fraction(0),
                )
                for k in range(n + 1)
            )
            for n in range(n_max + 1)
        )
    else:
        pair = _require_pair(spec, route, order)
        base = S.compose(S.central_difference(order), pair.f_bar)
        rows = columns_from_series(pair.conjugate_prefactor, base, n_max)
    _check_reconstruction(AssocKind.SECOND, spec, rows, polys, route)
    return AssocTriangle(AssocKind.SECOND, spec, n_max, route.value, rows)


def assoc_t1(spec: "PolySequenceSpec", n_max: int, route=T1Route.SOLVE,
             order: int | None = None) -> AssocTriangle:
    """T1(n,k;P), os coeficientes de x^[n] na base p_k."""
    route = T1Route(route)
    order = S.resolve_order(n_max, order)
    polys = spec.polys(n_max, order)
    if route == T1Route.SOLVE:
        rows = tuple(
            tuple(solve_triangular(basis_poly(CENTRAL, n), polys[: n + 1]))
            for n in range(n_max + 1)
        )
    elif route == T1Route.FUNCTIONAL:
        pair = _require_pair(spec, route, order)
        power = pair.g
        columns = []
        for k in range(n_max + 1):
            columns.append(power.scale(Fraction(1, math.factorial(k))))
            power = S.mul(power, pair.f)
        rows = tuple(
            tuple(functional_apply(columns[k], basis_poly(CENTRAL, n)) for k in range(n + 1))
            for n in range(n_max + 1)
        )
    else:
        pair = _require_pair(spec, route, order)
        if not pair.is_associated:
            raise UnsupportedRouteError(
                f"A rota genfunc de T1 exige g = 1; {spec.name} tem g ≠ 1."
            )
        rows = columns_from_series(None, central_log(pair.f), n_max)
    _check_reconstruction(AssocKind.FIRST, spec, rows, polys, route)
    return AssocTriangle(AssocKind.FIRST, spec, n_max, route.value, rows)


def assoc_triangle(kind, spec, n_max: int, route=None, order: int | None = None) -> AssocTriangle:
    kind = AssocKind(kind)
    route = route or DEFAULT_ROUTES[kind]
    if kind == AssocKind.SECOND:
        if route not in T2Route.values:
            raise UnsupportedRouteError(f"Rota {route!r} não existe para T2.")
        return assoc_t2(spec, n_max, route, order)
    if route not in T1Route.values:
        raise UnsupportedRouteError(f"Rota {route!r} não existe para T1.")
    return assoc_t1(spec, n_max, route, order)

