"""
Séries formais de potências truncadas sobre os racionais.

Todos os coeficientes são ``Fraction``; nenhuma operação arredonda. Os
coeficientes ficam na base comum (c_n de t^n) e a visão EGF (n!·c_n) é
calculada sob demanda.
"""
from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from django.conf import settings

from .exceptions import ParameterError, SeriesDomainError, SeriesUsageError

logger = logging.getLogger(__name__)

RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:/(\d+))?\s*$")


# --- RACIONAIS ---

def parse_rational(text) -> Fraction:
    """Lê "p/q" (ou "p") com sinal opcional; denominador não pode ser zero."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    match = RATIONAL_RE.match(str(text))
    if not match:
        raise ParameterError(f"Racional inválido: {text!r}. Use p ou p/q.")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ParameterError(f"Denominador zero em {text!r}.")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def resolve_order(n_max: int, order: int | None = None) -> int:
    """Ordem de truncamento: explícita, senão CFNUM_ORDER, senão 2·n_max + 2."""
    if order is None:
        order = getattr(settings, "CFNUM_ORDER", None)
    if order is None:
        order = 2 * n_max + 2
    if order < n_max:
        raise SeriesUsageError(f"Ordem {order} menor que n_max={n_max}.")
    logger.debug("ordem de truncamento %s para n_max=%s", order, n_max)
    return order


def _is_rational_square(value: Fraction) -> bool:
    if value < 0:
        return False
    p, q = value.numerator, value.denominator
    return math.isqrt(p) ** 2 == p and math.isqrt(q) ** 2 == q


# --- TIPO PRINCIPAL ---

@dataclass(frozen=True)
class TruncatedSeries:
    """Série Σ c_n t^n módulo t^(order+1)."""

    order: int
    coeffs: tuple

    def __post_init__(self):
        if self.order < 0:
            raise SeriesUsageError("A ordem de truncamento deve ser >= 0.")
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.order + 1:
            raise SeriesUsageError(
                f"Esperados {self.order + 1} coeficientes, recebidos {len(coeffs)}."
            )
        object.__setattr__(self, "coeffs", coeffs)

    # Construtores
    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int) -> TruncatedSeries:
        """Completa com zeros ou trunca até ``order``."""
        values = list(coeffs)[: order + 1]
        values += [0] * (order + 1 - len(values))
        return cls(order, tuple(values))

    @classmethod
    def from_egf(cls, values: Iterable, order: int) -> TruncatedSeries:
        return cls.from_coeffs(
            (Fraction(v) / math.factorial(n) for n, v in enumerate(values)), order
        )

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls.from_coeffs([], order)

    @classmethod
    def constant(cls, value, order: int) -> TruncatedSeries:
        return cls.from_coeffs([value], order)

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls.constant(1, order)

    @classmethod
    def identity(cls, order: int) -> TruncatedSeries:
        """A série t."""
        return cls.monomial(1, order)

    @classmethod
    def monomial(cls, power: int, order: int, coefficient=1) -> TruncatedSeries:
        values = [0] * (order + 1)
        if power <= order:
            values[power] = coefficient
        return cls(order, tuple(values))

    # Visões
    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def egf_coefficient(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise SeriesUsageError(f"Coeficiente {n} fora da ordem {self.order}.")
        return self.coeffs[n] * math.factorial(n)

    def egf_coefficients(self) -> list:
        return [self.egf_coefficient(n) for n in range(self.order + 1)]

    @property
    def is_delta(self) -> bool:
        return self.order >= 1 and self.coeffs[0] == 0 and self.coeffs[1] != 0

    @property
    def is_invertible(self) -> bool:
        return self.coeffs[0] != 0

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise SeriesUsageError(
                f"Não é possível elevar a ordem de {self.order} para {order}."
            )
        return TruncatedSeries(order, self.coeffs[: order + 1])

    def pad(self, order: int) -> TruncatedSeries:
        """Mesma série com zeros acima da ordem original."""
        return TruncatedSeries.from_coeffs(self.coeffs, order)

    # Aritmética
    def scale(self, factor) -> TruncatedSeries:
        factor = Fraction(factor)
        return TruncatedSeries(self.order, tuple(c * factor for c in self.coeffs))

    def dilate(self, factor) -> TruncatedSeries:
        """f(c·t)."""
        factor = Fraction(factor)
        return TruncatedSeries(
            self.order, tuple(c * factor**n for n, c in enumerate(self.coeffs))
        )

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return add(self, TruncatedSeries.constant(other, self.order))
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, reciprocal(other))
        return self.scale(Fraction(1) / Fraction(other))

    def __pow__(self, k: int):
        if k < 0:
            return reciprocal(self) ** (-k)
        result = TruncatedSeries.one(self.order)
        for _ in range(k):
            result = mul(result, self)
        return result

    def __repr__(self):
        terms = ", ".join(format_rational(c) for c in self.coeffs)
        return f"TruncatedSeries(order={self.order}, [{terms}])"


def _check_orders(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.order != b.order:
        raise SeriesUsageError(f"Ordens diferentes: {a.order} e {b.order}.")


# --- OPERAÇÕES ---

def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_orders(a, b)
    return TruncatedSeries(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Produto de Cauchy truncado."""
    _check_orders(a, b)
    n = a.order
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j in range(n + 1 - i):
            y = b.coeffs[j]
            if y:
                out[i + j] += x * y
    return TruncatedSeries(n, tuple(out))


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner(t)) por Horner; inner precisa ter termo constante nulo."""
    _check_orders(outer, inner)
    if inner.coeffs[0] != 0:
        raise SeriesDomainError("A série interna da composição precisa ter c_0 = 0.")
    result = TruncatedSeries.constant(outer.coeffs[-1], outer.order)
    for c in reversed(outer.coeffs[:-1]):
        result = mul(result, inner) + c
    return result


def derivative(f: TruncatedSeries) -> TruncatedSeries:
    """f'(t); a ordem cai para N - 1 (N = 0 devolve a série nula)."""
    if f.order == 0:
        return TruncatedSeries.zero(0)
    return TruncatedSeries(
        f.order - 1, tuple(n * c for n, c in enumerate(f.coeffs) if n > 0)
    )


def shift_down(f: TruncatedSeries) -> TruncatedSeries:
    """f(t)/t, exige c_0 = 0; a ordem cai para N - 1."""
    if f.coeffs[0] != 0:
        raise SeriesDomainError("Divisão por t exige c_0 = 0.")
    if f.order == 0:
        raise SeriesUsageError("Série de ordem 0 não pode ser dividida por t.")
    return TruncatedSeries(f.order - 1, f.coeffs[1:])


def reciprocal(f: TruncatedSeries) -> TruncatedSeries:
    c0 = f.coeffs[0]
    if c0 == 0:
        raise SeriesDomainError("Série sem inversa multiplicativa (c_0 = 0).")
    inv0 = 1 / c0
    out = [inv0]
    for n in range(1, f.order + 1):
        acc = sum((f.coeffs[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
        out.append(-acc * inv0)
    return TruncatedSeries(f.order, tuple(out))


def sqrt_series(f: TruncatedSeries) -> TruncatedSeries:
    """Raiz quadrada com c_0 > 0; c_0 precisa ser quadrado de um racional."""
    c0 = f.coeffs[0]
    if c0 == 0 or not _is_rational_square(c0):
        raise SeriesDomainError(
            f"c_0 = {format_rational(c0)} não é quadrado de um racional não nulo."
        )
    s0 = Fraction(math.isqrt(c0.numerator), math.isqrt(c0.denominator))
    out = [s0]
    for n in range(1, f.order + 1):
        acc = sum((out[k] * out[n - k] for k in range(1, n)), Fraction(0))
        out.append((f.coeffs[n] - acc) / (2 * s0))
    return TruncatedSeries(f.order, tuple(out))


def exp_series(f: TruncatedSeries) -> TruncatedSeries:
    """exp(f) via n·e_n = Σ k·f_k·e_(n-k); exige c_0 = 0."""
    if f.coeffs[0] != 0:
        raise SeriesDomainError("exp_series exige c_0 = 0.")
    out = [Fraction(1)]
    for n in range(1, f.order + 1):
        acc = sum((k * f.coeffs[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
        out.append(acc / n)
    return TruncatedSeries(f.order, tuple(out))


def log_series(f: TruncatedSeries) -> TruncatedSeries:
    """log(f) via n·l_n = n·f_n − Σ k·l_k·f_(n-k); exige c_0 = 1."""
    if f.coeffs[0] != 1:
        raise SeriesDomainError("log_series exige c_0 = 1.")
    out = [Fraction(0)]
    for n in range(1, f.order + 1):
        acc = sum((k * out[k] * f.coeffs[n - k] for k in range(1, n)), Fraction(0))
        out.append(f.coeffs[n] - acc / n)
    return TruncatedSeries(f.order, tuple(out))


def pow_rational(f: TruncatedSeries, r) -> TruncatedSeries:
    """f^r no ramo principal (c_0 = 1), pela recorrência de J. C. P. Miller."""
    r = Fraction(r)
    if f.coeffs[0] != 1:
        raise SeriesDomainError("pow_rational exige c_0 = 1.")
    out = [Fraction(1)]
    for n in range(1, f.order + 1):
        acc = sum(
            (((r + 1) * k - n) * f.coeffs[k] * out[n - k] for k in range(1, n + 1)),
            Fraction(0),
        )
        out.append(acc / n)
    return TruncatedSeries(f.order, tuple(out))


def degenerate_log(f: TruncatedSeries, lam) -> TruncatedSeries:
    """log_λ(f) = (f^λ − 1)/λ. O limite λ → 0 é log_series."""
    lam = Fraction(lam)
    if lam == 0:
        raise SeriesDomainError("degenerate_log exige λ ≠ 0; use log_series.")
    return (pow_rational(f, lam) - 1) / lam


def degenerate_exp(f: TruncatedSeries, lam, power=1) -> TruncatedSeries:
    """e_λ^power(f) = (1 + λf)^(power/λ); exige f com c_0 = 0."""
    lam = Fraction(lam)
    if lam == 0:
        raise SeriesDomainError("degenerate_exp exige λ ≠ 0; use exp_series.")
    if f.coeffs[0] != 0:
        raise SeriesDomainError("degenerate_exp exige c_0 = 0.")
    return pow_rational(1 + f.scale(lam), Fraction(power) / lam)


def comp_inverse(f: TruncatedSeries) -> TruncatedSeries:
    """Inversa composicional f̄ por Newton, dobrando a precisão a cada passo."""
    if not f.is_delta:
        raise SeriesDomainError("comp_inverse exige uma série delta (c_0 = 0, c_1 ≠ 0).")
    target = f.order
    if target <= 1:
        return TruncatedSeries.from_coeffs([0, 1 / f.coeffs[1]], target)
    df = derivative(f)
    g = TruncatedSeries.from_coeffs([0, 1 / f.coeffs[1]], 1)
    precision = 1
    while precision < target:
        precision = min(2 * precision, target)
        g = g.pad(precision)
        f_p = f.truncate(precision)
        df_p = df.truncate(precision) if precision <= df.order else df.pad(precision)
        residual = compose(f_p, g) - TruncatedSeries.identity(precision)
        g = g - residual / compose(df_p, g)
    return g


def comp_inverse_lagrange(f: TruncatedSeries) -> TruncatedSeries:
    """Oráculo: [t^n]f̄ = (1/n)·[t^(n-1)](t/f)^n."""
    if not f.is_delta:
        raise SeriesDomainError("comp_inverse exige uma série delta (c_0 = 0, c_1 ≠ 0).")
    h = reciprocal(shift_down(f))
    out = [Fraction(0)]
    power = TruncatedSeries.one(h.order)
    for n in range(1, f.order + 1):
        power = mul(power, h)
        out.append(power.coeffs[n - 1] / n)
    return TruncatedSeries(f.order, tuple(out))


# --- SÉRIES NOMEADAS ---

def exp_scaled(a, order: int) -> TruncatedSeries:
    """e^(a·t)."""
    a = Fraction(a)
    return TruncatedSeries(
        order, tuple(a**n / math.factorial(n) for n in range(order + 1))
    )


def log1p(order: int, a=1) -> TruncatedSeries:
    """log(1 + a·t)."""
    return log_series(TruncatedSeries.from_coeffs([1, a], order))


def central_difference(order: int) -> TruncatedSeries:
    """e^(t/2) − e^(−t/2), a série delta dos fatoriais centrais."""
    return exp_scaled(Fraction(1, 2), order) - exp_scaled(Fraction(-1, 2), order)


def central_root(order: int) -> TruncatedSeries:
    """(t + √(t² + 4))/2, com c_0 = 1."""
    root = sqrt_series(TruncatedSeries.from_coeffs([4, 0, 1], order))
    return (TruncatedSeries.identity(order) + root) / 2


def central_inverse(order: int) -> TruncatedSeries:
    """Forma fechada 2·log((t + √(t² + 4))/2) da inversa de e^(t/2) − e^(−t/2)."""
    return log_series(central_root(order)).scale(2)


def central_inverse_alt(order: int) -> TruncatedSeries:
    """Segunda forma fechada: log(1 + (t/2)(t + √(t² + 4)))."""
    t = TruncatedSeries.identity(order)
    root = sqrt_series(TruncatedSeries.from_coeffs([4, 0, 1], order))
    return log_series(1 + mul(t, t + root) / 2)
