"""
Catálogo de sequências de polinômios P = {p_n(x)}.

Cada entrada é um ``PolySequenceSpec``: um par de Sheffer (g, f), uma regra
direta ou o produto de Bernoulli. Os polinômios são gerados sob demanda e
memoizados; grau n e p_0 = 1 são conferidos na geração.
"""
from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from django.db import models

from . import series as S
from .exceptions import (
    CrossCheckError,
    ParameterError,
    SeriesDomainError,
    UnknownSequenceError,
    UnsupportedRouteError,
)
from .polynomials import Polynomial
from .series import TruncatedSeries, format_rational, parse_rational
from .triangles import (
    FamilyId,
    SequenceKind,
    alpha_bar_series,
    alpha_series,
    classical,
    number_sequence,
)
from .umbral import AssocKind, AssocTriangle, ShefferPair, sheffer_polys

logger = logging.getLogger(__name__)


class Rule(models.TextChoices):
    SHEFFER = "sheffer", "Par de Sheffer (g, f)"
    DIRECT = "direct", "Regra direta n → p_n"
    PRODUCT = "product", "Produto Σ B_k(x)·B_(n−k)(x)"
    XBAR = "xbar", "p̄_0 = 1, p̄_n = x·p_(n−1)"
    XXBAR = "xxbar", "p̿_0 = 1, p̿_1 = x, p̿_n = x²·p_(n−2)"


@dataclass(frozen=True)
class PolySequenceSpec:
    name: str
    rule: Rule
    params: tuple = ()
    pair_factory: Callable | None = field(default=None, compare=False, repr=False)
    builder: Callable | None = field(default=None, compare=False, repr=False)
    base: PolySequenceSpec | None = None
    _memo: dict = field(default_factory=dict, init=False, compare=False, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, compare=False, repr=False)

    @property
    def has_pair(self) -> bool:
        return self.pair_factory is not None

    @property
    def label(self) -> str:
        """Nome com parâmetros, p. ex. falling_lambda[lambda=1/3]."""
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={format_rational(v)}" for k, v in self.params)
        return f"{self.name}[{inner}]"

    def param(self, name: str) -> Fraction:
        return dict(self.params)[name]

    def params_payload(self) -> dict:
        return {name: format_rational(value) for name, value in self.params}

    def pair(self, order: int) -> ShefferPair:
        if self.pair_factory is None:
            raise UnsupportedRouteError(f"{self.name} não é uma sequência de Sheffer.")
        key = ("pair", order)
        with self._lock:
            cached = self._memo.get(key)
        if cached is None:
            cached = self.pair_factory(order)
            with self._lock:
                cached = self._memo.setdefault(key, cached)
        return cached

    def polys(self, n_max: int, order: int | None = None) -> list:
        """p_0..p_n_max (memoizado; pedidos menores reaproveitam o maior)."""
        with self._lock:
            cached = self._memo.get("polys")
        if cached is not None and len(cached) > n_max:
            return cached[: n_max + 1]
        generated = self._generate(n_max, order)
        self._validate(generated)
        with self._lock:
            current = self._memo.get("polys")
            if current is None or len(current) < len(generated):
                self._memo["polys"] = generated
        return generated

    def _generate(self, n_max: int, order: int | None) -> list:
        logger.debug("gerando %s até n=%s", self.label, n_max)
        if self.rule == Rule.SHEFFER:
            return sheffer_polys(self.pair(S.resolve_order(n_max, order)), n_max)
        if self.rule in (Rule.DIRECT, Rule.PRODUCT):
            return list(self.builder(n_max))
        x = Polynomial.x()
        if self.rule == Rule.XBAR:
            inner = self.base.polys(max(n_max - 1, 0), order)
            return [Polynomial.constant(1)] + [x * p for p in inner[:n_max]]
        inner = self.base.polys(max(n_max - 2, 0), order)
        head = [Polynomial.constant(1), x][: n_max + 1]
        return head + [x * x * p for p in inner[: max(n_max - 1, 0)]]

    def _validate(self, polys: list) -> None:
        if polys[0] != Polynomial.constant(1):
            raise SeriesDomainError(f"{self.label}: p_0 = {polys[0]} (esperado 1).")
        for n, p in enumerate(polys):
            if p.degree != n:
                raise SeriesDomainError(f"{self.label}: p_{n} tem grau {p.degree}.")


# --- TRANSFORMAÇÕES ---

@lru_cache(maxsize=None)
def xbar_of(spec: PolySequenceSpec) -> PolySequenceSpec:
    return PolySequenceSpec(f"xbar({spec.name})", Rule.XBAR, spec.params, base=spec)


@lru_cache(maxsize=None)
def xxbar_of(spec: PolySequenceSpec) -> PolySequenceSpec:
    return PolySequenceSpec(f"xxbar({spec.name})", Rule.XXBAR, spec.params, base=spec)


# --- SÉRIES DOS PARES ---

def _t(order):
    return TruncatedSeries.identity(order)


def _exp_minus_one(order, a=1):
    return S.exp_scaled(a, order) - 1


def _sheffer(g: Callable | None, f: Callable) -> Callable:
    """Fábrica order → ShefferPair; g ausente significa g = 1."""
    def factory(order):
        g_series = g(order) if g is not None else TruncatedSeries.one(order)
        return ShefferPair(g_series, f(order))
    return factory


def _rows_to_polys(family: FamilyId) -> Callable:
    def builder(n_max):
        triangle = classical(family, n_max)
        return [Polynomial(triangle.row(n)) for n in range(n_max + 1)]
    return builder


def _bernoulli_product_builder(bernoulli: PolySequenceSpec) -> Callable:
    """p_n = 2/(n+2)·Σ_{m<=n−2} C(n+2,m)·B_(n−m)·B_m(x) + (n+1)·B_n(x)."""
    def builder(n_max):
        b_polys = bernoulli.polys(n_max)
        numbers = number_sequence(SequenceKind.BERNOULLI, n_max)
        out = []
        for n in range(n_max + 1):
            p = b_polys[n].scale(n + 1)
            for m in range(n - 1):
                p = p + b_polys[m].scale(
                    Fraction(2, n + 2) * math.comb(n + 2, m) * numbers[n - m]
                )
            convolution = sum(
                (b_polys[k] * b_polys[n - k] for k in range(n + 1)), Polynomial()
            )
            if p != convolution:
                raise CrossCheckError(
                    f"bernoulli_product: p_{n} difere da convolução Σ B_k·B_(n−k)",
                    witness={"n": n},
                )
            out.append(p)
        return out
    return builder


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    params: tuple
    make: Callable = field(compare=False, repr=False)


def _entries() -> list:
    half = Fraction(1, 2)

    def lam_of(p):
        return p["lambda"]

    return [
        CatalogEntry("monomials", "x^n", (), lambda p: PolySequenceSpec(
            "monomials", Rule.SHEFFER, pair_factory=_sheffer(None, _t))),
        CatalogEntry("falling_lambda", "(x)_{n,λ} ~ (1, (e^{λt}−1)/λ)", ("lambda",),
            lambda p: PolySequenceSpec("falling_lambda", Rule.SHEFFER, _params(p, "lambda"),
                pair_factory=_sheffer(None, lambda o: _exp_minus_one(o, lam_of(p)) / lam_of(p)))),
        CatalogEntry("rising", "<x>_n ~ (1, 1 − e^{−t})", (), lambda p: PolySequenceSpec(
            "rising", Rule.SHEFFER,
            pair_factory=_sheffer(None, lambda o: 1 - S.exp_scaled(-1, o)))),
        CatalogEntry("rising_lambda", "<x>_{n,λ} ~ (1, (1 − e^{−λt})/λ)", ("lambda",),
            lambda p: PolySequenceSpec("rising_lambda", Rule.SHEFFER, _params(p, "lambda"),
                pair_factory=_sheffer(None, lambda o: (1 - S.exp_scaled(-lam_of(p), o)) / lam_of(p)))),
        CatalogEntry("tlb1", "TLB_{n,1}(x) = Σ TL1(n,k)x^k ~ (1, ᾱ(l(t)))", (),
            lambda p: PolySequenceSpec("tlb1", Rule.DIRECT,
                pair_factory=_sheffer(None, lambda o: S.compose(alpha_bar_series(o), S.central_difference(o))),
                builder=_rows_to_polys(FamilyId.TL1))),
        CatalogEntry("tlb2", "TLB_{n,2}(x) = Σ TL2(n,k)x^k ~ (1, l̄(α(t)))", (),
            lambda p: PolySequenceSpec("tlb2", Rule.DIRECT,
                pair_factory=_sheffer(None, lambda o: S.compose(S.central_inverse(o), alpha_series(o))),
                builder=_rows_to_polys(FamilyId.TL2))),
        CatalogEntry("central_bell", "Bel^c_n(x) ~ (1, 2log((t+√(t²+4))/2))", (),
            lambda p: PolySequenceSpec("central_bell", Rule.SHEFFER,
                pair_factory=_sheffer(None, S.central_inverse))),
        CatalogEntry("degenerate_central_bell", "Bel^c_{n,λ}(x) ~ (1, log_λ(((t+√(t²+4))/2)²))",
            ("lambda",), lambda p: PolySequenceSpec(
                "degenerate_central_bell", Rule.SHEFFER, _params(p, "lambda"),
                pair_factory=_sheffer(None, lambda o: S.degenerate_log(S.central_root(o) ** 2, lam_of(p))))),
        CatalogEntry("central_factorial_lambda", "x^[n,λ] ~ (1, (e^{λt/2} − e^{−λt/2})/λ)",
            ("lambda",), lambda p: PolySequenceSpec(
                "central_factorial_lambda", Rule.SHEFFER, _params(p, "lambda"),
                pair_factory=_sheffer(None, lambda o: S.central_difference(o).dilate(lam_of(p)) / lam_of(p)))),
        CatalogEntry("lah_bell", "B^L_n(x) ~ (1, t/(1+t))", (), lambda p: PolySequenceSpec(
            "lah_bell", Rule.SHEFFER,
            pair_factory=_sheffer(None, lambda o: S.mul(_t(o), S.reciprocal(1 + _t(o)))))),
        CatalogEntry("degenerate_lah_bell", "B^L_{n,λ}(x) ~ (1, (e^{λt}−1)/(λ+e^{λt}−1))",
            ("lambda",), lambda p: PolySequenceSpec(
                "degenerate_lah_bell", Rule.SHEFFER, _params(p, "lambda"),
                pair_factory=_sheffer(None, lambda o: S.mul(
                    _exp_minus_one(o, lam_of(p)),
                    S.reciprocal(_exp_minus_one(o, lam_of(p)) + lam_of(p)))))),
        CatalogEntry("bell", "Bel_n(x) ~ (1, log(1+t))", (), lambda p: PolySequenceSpec(
            "bell", Rule.SHEFFER, pair_factory=_sheffer(None, S.log1p))),
        CatalogEntry("partially_degenerate_bell", "Bel_{n,λ}(x) ~ (1, log_λ(1+t))", ("lambda",),
            lambda p: PolySequenceSpec("partially_degenerate_bell", Rule.SHEFFER, _params(p, "lambda"),
                pair_factory=_sheffer(None, lambda o: S.degenerate_log(1 + _t(o), lam_of(p))))),
        CatalogEntry("fully_degenerate_bell", "φ_{n,λ}(x) ~ (1, log_λ(1 + (e^{λt}−1)/λ))",
            ("lambda",), lambda p: PolySequenceSpec(
                "fully_degenerate_bell", Rule.SHEFFER, _params(p, "lambda"),
                pair_factory=_sheffer(None, lambda o: S.degenerate_log(
                    1 + _exp_minus_one(o, lam_of(p)) / lam_of(p), lam_of(p))))),
        CatalogEntry("mittag_leffler", "M_n(x) ~ (1, (e^t−1)/(e^t+1))", (),
            lambda p: PolySequenceSpec("mittag_leffler", Rule.SHEFFER,
                pair_factory=_sheffer(None, lambda o: S.mul(
                    _exp_minus_one(o), S.reciprocal(S.exp_scaled(1, o) + 1))))),
        CatalogEntry("laguerre", "L_n(x) de ordem −1 ~ (1, t/(t−1))", (),
            lambda p: PolySequenceSpec("laguerre", Rule.SHEFFER,
                pair_factory=_sheffer(None, lambda o: -S.mul(_t(o), S.reciprocal(1 - _t(o)))))),
        CatalogEntry("bernoulli", "B_n(x) ~ ((e^t−1)/t, t)", (), lambda p: PolySequenceSpec(
            "bernoulli", Rule.SHEFFER,
            pair_factory=_sheffer(lambda o: S.shift_down(_exp_minus_one(o + 1)), _t))),
        CatalogEntry("euler", "E_n(x) ~ ((e^t+1)/2, t)", (), lambda p: PolySequenceSpec(
            "euler", Rule.SHEFFER,
            pair_factory=_sheffer(lambda o: (S.exp_scaled(1, o) + 1) * half, _t))),
        CatalogEntry("gould_hopper", "(rx+s)_n ~ (e^{−(s/r)t}, e^{t/r}−1)", ("r", "s"),
            lambda p: PolySequenceSpec("gould_hopper", Rule.SHEFFER, _params(p, "r", "s"),
                pair_factory=_sheffer(lambda o: S.exp_scaled(-p["s"] / p["r"], o),
                                      lambda o: _exp_minus_one(o, 1 / p["r"])))),
        CatalogEntry("bernoulli_second", "b_n(x) ~ (t/(e^t−1), e^t−1)", (),
            lambda p: PolySequenceSpec("bernoulli_second", Rule.SHEFFER,
                pair_factory=_sheffer(lambda o: S.reciprocal(S.shift_down(_exp_minus_one(o + 1))),
                                      _exp_minus_one))),
        CatalogEntry("poisson_charlier", "C_n(x;a) ~ (e^{a(e^t−1)}, a(e^t−1))", ("a",),
            lambda p: PolySequenceSpec("poisson_charlier", Rule.SHEFFER, _params(p, "a"),
                pair_factory=_sheffer(lambda o: S.exp_series(_exp_minus_one(o) * p["a"]),
                                      lambda o: _exp_minus_one(o) * p["a"]))),
        CatalogEntry("bernoulli_product", "p_n(x) = Σ B_k(x)·B_(n−k)(x) (não é Sheffer)", (),
            lambda p: PolySequenceSpec("bernoulli_product", Rule.PRODUCT,
                builder=_bernoulli_product_builder(catalog("bernoulli")),
                base=catalog("bernoulli"))),
    ]


def _params(values: dict, *names) -> tuple:
    return tuple((name, values[name]) for name in names)


CATALOG = {entry.name: entry for entry in _entries()}
NONZERO_PARAMS = ("lambda", "r", "a")


def catalog(name: str, **params) -> PolySequenceSpec:
    """Spec da entrada ``name``; parâmetros exigidos precisam estar presentes."""
    entry = CATALOG.get(name)
    if entry is None:
        raise UnknownSequenceError(
            f"Sequência desconhecida: {name!r}. Use list_sequences para ver as opções."
        )
    values = []
    for key in entry.params:
        if params.get(key) is None:
            raise ParameterError(f"A sequência {name} exige o parâmetro {key}.")
        value = parse_rational(params[key])
        if key in NONZERO_PARAMS and value == 0:
            raise ParameterError(f"O parâmetro {key} deve ser diferente de zero.")
        values.append((key, value))
    return _build(name, tuple(values))


@lru_cache(maxsize=None)
def _build(name: str, values: tuple) -> PolySequenceSpec:
    return CATALOG[name].make(dict(values))


def catalog_listing() -> list:
    return [
        {
            "name": entry.name,
            "description": entry.description,
            "params": list(entry.params),
            "rule": _build_rule(entry),
        }
        for entry in CATALOG.values()
    ]


def _build_rule(entry: CatalogEntry) -> str:
    if entry.name == "bernoulli_product":
        return Rule.PRODUCT.value
    if entry.name in ("tlb1", "tlb2"):
        return Rule.DIRECT.value
    return Rule.SHEFFER.value


# --- PRODUTO DE BERNOULLI: T1 PELO SISTEMA Γ = A·S ---

def bernoulli_product_t1(n_max: int) -> AssocTriangle:
    """T1(n,k;P) para p_n = Σ B_k(x)B_(n−k)(x) resolvendo Γ = A·S.

    γ_m = Σ_l C(l+1,m)·T1(n,l)/(l+1) são os coeficientes de x^[n] na base
    B_m(x); A é triangular superior com diagonal 1..n+1 e entradas
    ε_(m,k) = 2/(k+2)·C(k+2,m)·B_(k−m) para k >= m+2.
    """
    t1 = classical(FamilyId.T1, n_max)
    numbers = number_sequence(SequenceKind.BERNOULLI, n_max)
    rows = []
    for n in range(n_max + 1):
        gamma = [
            sum(
                (Fraction(math.comb(l + 1, m), l + 1) * t1(n, l) for l in range(m, n + 1)),
                Fraction(0),
            )
            for m in range(n + 1)
        ]
        solution = [Fraction(0)] * (n + 1)
        for m in range(n, -1, -1):
            acc = sum(
                (Fraction(2 * math.comb(k + 2, m), k + 2) * numbers[k - m] * solution[k]
                 for k in range(m + 2, n + 1)),
                Fraction(0),
            )
            solution[m] = (gamma[m] - acc) / (m + 1)
        rows.append(tuple(solution))
    return AssocTriangle(AssocKind.FIRST, catalog("bernoulli_product"), n_max, "matrix", tuple(rows))


# --- SÉRIES DELTA NOMEADAS (comando series) ---

DELTA_SERIES = {
    "identity": ((), lambda o, p: _t(o)),
    "degenerate_exp": (("lambda",), lambda o, p: _exp_minus_one(o, p["lambda"]) / p["lambda"]),
    "one_minus_exp_neg": ((), lambda o, p: 1 - S.exp_scaled(-1, o)),
    "laguerre": ((), lambda o, p: -S.mul(_t(o), S.reciprocal(1 - _t(o)))),
    "alpha": ((), lambda o, p: alpha_series(o)),
    "central": ((), lambda o, p: S.central_difference(o)),
}


def delta_series(name: str, order: int, **params) -> tuple:
    """(série f, parâmetros usados) para um nome de DELTA_SERIES ou do catálogo."""
    if name in DELTA_SERIES:
        needed, make = DELTA_SERIES[name]
        values = {}
        for key in needed:
            if params.get(key) is None:
                raise ParameterError(f"A série {name} exige o parâmetro {key}.")
            values[key] = parse_rational(params[key])
            if key in NONZERO_PARAMS and values[key] == 0:
                raise ParameterError(f"O parâmetro {key} deve ser diferente de zero.")
        return make(order, values), values
    spec = catalog(name, **params)
    if not spec.has_pair:
        raise UnsupportedRouteError(f"{name} não é uma sequência de Sheffer: não há série f.")
    return spec.pair(order).f, dict(spec.params)
