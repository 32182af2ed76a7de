"""
Suíte de verificação: ortogonalidade, relações inversas, fórmulas fechadas,
somas quádruplas, recorrências, regra da soma, concordância de rotas e os
axiomas de Sheffer.

Toda comparação é igualdade exata de ``Fraction``. Falhas não levantam
exceção: viram um ``IdentityCheck`` com o primeiro contraexemplo.
"""
from __future__ import annotations

import logging
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from django.conf import settings
from django.db import models

from . import series as S
from .catalog import CATALOG, PolySequenceSpec, bernoulli_product_t1, catalog, xbar_of, xxbar_of
from .constants import (
    DEFAULT_N_MAX,
    DEFAULT_PARAMS,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    QUADRUPLE_SUM_MAX_N,
    RANDOM_DENOMINATOR_RANGE,
    RANDOM_NUMERATOR_RANGE,
    SUITE_VERSION,
)
from .exceptions import CfnumError, ParameterError, UnregisteredClosedFormError
from .polynomials import Polynomial
from .series import format_rational
from .triangles import (
    FamilyId,
    SequenceKind,
    TriangleFamily,
    classical,
    crosscheck,
    number_sequence,
    required_params,
)
from .umbral import (
    AssocKind,
    T1Route,
    T2Route,
    apply_operator,
    assoc_t1,
    assoc_t2,
    functional_apply,
    sheffer_recurrence_step,
)

logger = logging.getLogger(__name__)


class Status(models.TextChoices):
    PASS = "pass", "Passou"
    FAIL = "fail", "Falhou"


@dataclass(frozen=True)
class IdentityCheck:
    id: str
    sequence: str
    n_max: int
    status: Status
    witness: dict | None = None

    @classmethod
    def from_witness(cls, check_id: str, sequence: str, n_max: int, witness) -> IdentityCheck:
        if witness is None:
            return cls(check_id, sequence, n_max, Status.PASS)
        logger.warning("falha em %s (%s): %s", check_id, sequence, witness)
        return cls(check_id, sequence, n_max, Status.FAIL, witness)

    @property
    def passed(self) -> bool:
        return self.status == Status.PASS

    def as_dict(self) -> dict:
        out = {
            "id": self.id,
            "sequence": self.sequence,
            "n_max": self.n_max,
            "status": self.status.value,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _sigma(terms) -> Fraction:
    return sum(terms, Fraction(0))


def _witness(where: dict, lhs, rhs) -> dict:
    return {**where, "lhs": format_rational(lhs), "rhs": format_rational(rhs)}


def _first_failure(comparisons):
    """Primeiro (onde, lhs, rhs) com lhs ≠ rhs, já formatado."""
    for where, lhs, rhs in comparisons:
        if lhs != rhs:
            return _witness(where, lhs, rhs)
    return None


def _delta(n: int, l: int) -> Fraction:
    return Fraction(1 if n == l else 0)


def _falling(x, j: int) -> Fraction:
    return math.prod((Fraction(x) - i for i in range(j)), start=Fraction(1))


# --- TABELAS CLÁSSICAS ---

class ClassicalTables:
    """Triângulos e números clássicos até n_max, com os parâmetros da sequência."""

    def __init__(self, n_max: int, params: dict | None = None):
        self.n_max = n_max
        self.params = dict(DEFAULT_PARAMS, **(params or {}))

    def _family(self, family_id):
        names = required_params(family_id)
        return classical(family_id, self.n_max, **{k: self.params[k] for k in names})

    @property
    def lam(self) -> Fraction:
        return self.params["lambda"]

    @cached_property
    def s1(self):
        return self._family(FamilyId.S1)

    @cached_property
    def s2(self):
        return self._family(FamilyId.S2)

    @cached_property
    def s1l(self):
        return self._family(FamilyId.S1L)

    @cached_property
    def s2l(self):
        return self._family(FamilyId.S2L)

    @cached_property
    def t1(self):
        return self._family(FamilyId.T1)

    @cached_property
    def t2(self):
        return self._family(FamilyId.T2)

    @cached_property
    def t1l(self):
        return self._family(FamilyId.T1L)

    @cached_property
    def t2l(self):
        return self._family(FamilyId.T2L)

    @cached_property
    def r1l(self):
        return self._family(FamilyId.R1L)

    @cached_property
    def r2l(self):
        return self._family(FamilyId.R2L)

    @cached_property
    def lah(self):
        return self._family(FamilyId.LAH)

    @cached_property
    def l1c(self):
        return self._family(FamilyId.L1C)

    @cached_property
    def l2c(self):
        return self._family(FamilyId.L2C)

    @cached_property
    def tl1(self):
        return self._family(FamilyId.TL1)

    @cached_property
    def tl2(self):
        return self._family(FamilyId.TL2)

    @cached_property
    def bernoulli(self):
        return number_sequence(SequenceKind.BERNOULLI, self.n_max)

    @cached_property
    def euler(self):
        return number_sequence(SequenceKind.EULER, self.n_max)

    @cached_property
    def bernoulli_second(self):
        return number_sequence(SequenceKind.BERNOULLI_SECOND, self.n_max)

    @cached_property
    def bell_at_a(self):
        return number_sequence(SequenceKind.BELL, self.n_max, self.params["a"])

    @cached_property
    def bernoulli_product_t1(self):
        return bernoulli_product_t1(self.n_max)


# --- FÓRMULAS FECHADAS ---

CLOSED_FORMS: dict = {}


def closed_form(name: str, kind: AssocKind, label: str):
    """Registra ``fn(tabelas, n, k)`` como fórmula fechada de ``name``."""
    def register(fn):
        CLOSED_FORMS.setdefault(name, {}).setdefault(AssocKind(kind), []).append((label, fn))
        return fn
    return register


T2, T1 = AssocKind.SECOND, AssocKind.FIRST


@closed_form("monomials", T2, "T2(n,k)")
def _(tb, n, k):
    return tb.t2(n, k)


@closed_form("monomials", T1, "T1(n,k)")
def _(tb, n, k):
    return tb.t1(n, k)


@closed_form("falling_lambda", T2, "T2λ(n,k)")
def _(tb, n, k):
    return tb.t2l(n, k)


@closed_form("falling_lambda", T2, "Σ λ^(n−l)·S1(n,l)·T2(l,k)")
def _(tb, n, k):
    return _sigma(tb.lam ** (n - l) * tb.s1(n, l) * tb.t2(l, k) for l in range(k, n + 1))


@closed_form("falling_lambda", T1, "T1λ(n,k)")
def _(tb, n, k):
    return tb.t1l(n, k)


@closed_form("rising", T2, "Σ (−1)^(n−l)·S1(n,l)·T2(l,k)")
def _(tb, n, k):
    return _sigma((-1) ** (n - l) * tb.s1(n, l) * tb.t2(l, k) for l in range(k, n + 1))


@closed_form("rising", T1, "Σ (−1)^(l−k)·T1(n,l)·S2(l,k)")
def _(tb, n, k):
    return _sigma((-1) ** (l - k) * tb.t1(n, l) * tb.s2(l, k) for l in range(k, n + 1))


@closed_form("rising_lambda", T2, "Σ (−λ)^(n−l)·S1(n,l)·T2(l,k)")
def _(tb, n, k):
    return _sigma((-tb.lam) ** (n - l) * tb.s1(n, l) * tb.t2(l, k) for l in range(k, n + 1))


@closed_form("rising_lambda", T1, "Σ (−λ)^(l−k)·T1(n,l)·S2(l,k)")
def _(tb, n, k):
    return _sigma((-tb.lam) ** (l - k) * tb.t1(n, l) * tb.s2(l, k) for l in range(k, n + 1))


@closed_form("tlb1", T2, "L2c(n,k)")
def _(tb, n, k):
    return tb.l2c(n, k)


@closed_form("tlb1", T2, "Σ TL1(n,l)·T2(l,k), TL1 = L2c·T1")
def _(tb, n, k):
    return _sigma(
        _sigma(tb.l2c(n, j) * tb.t1(j, l) for j in range(l, n + 1)) * tb.t2(l, k)
        for l in range(k, n + 1)
    )


@closed_form("tlb1", T1, "L1c(n,k)")
def _(tb, n, k):
    return tb.l1c(n, k)


@closed_form("tlb2", T2, "Σ TL2(n,l)·T2(l,k)")
def _(tb, n, k):
    return _sigma(tb.tl2(n, l) * tb.t2(l, k) for l in range(k, n + 1))


@closed_form("tlb2", T2, "Σ TL2(n,l)·T2(l,k), TL2 = T2·L1c")
def _(tb, n, k):
    return _sigma(
        _sigma(tb.t2(n, j) * tb.l1c(j, l) for j in range(l, n + 1)) * tb.t2(l, k)
        for l in range(k, n + 1)
    )


@closed_form("tlb2", T1, "Σ T1(n,l)·TL1(l,k)")
def _(tb, n, k):
    return _sigma(tb.t1(n, l) * tb.tl1(l, k) for l in range(k, n + 1))


@closed_form("central_bell", T2, "Σ T2(n,l)·T2(l,k)")
def _(tb, n, k):
    return _sigma(tb.t2(n, l) * tb.t2(l, k) for l in range(k, n + 1))


@closed_form("central_bell", T1, "Σ T1(n,l)·T1(l,k)")
def _(tb, n, k):
    return _sigma(tb.t1(n, l) * tb.t1(l, k) for l in range(k, n + 1))


@closed_form("degenerate_central_bell", T2, "Σ T2(l,k)·T2λ(n,l)")
def _(tb, n, k):
    return _sigma(tb.t2(l, k) * tb.t2l(n, l) for l in range(k, n + 1))


@closed_form("degenerate_central_bell", T1, "Σ T1(n,l)·T1λ(l,k)")
def _(tb, n, k):
    return _sigma(tb.t1(n, l) * tb.t1l(l, k) for l in range(k, n + 1))


@closed_form("central_factorial_lambda", T2, "Σ T2(l,k)·R1λ(n,l)")
def _(tb, n, k):
    return _sigma(tb.t2(l, k) * tb.r1l(n, l) for l in range(k, n + 1))


@closed_form("central_factorial_lambda", T1, "Σ T1(n,l)·R2λ(l,k)")
def _(tb, n, k):
    return _sigma(tb.t1(n, l) * tb.r2l(l, k) for l in range(k, n + 1))


@closed_form("lah_bell", T2, "Σ T2(l,k)·L(n,l)")
def _(tb, n, k):
    return _sigma(tb.t2(l, k) * tb.lah(n, l) for l in range(k, n + 1))


@closed_form("lah_bell", T1, "Σ (−1)^(l−k)·T1(n,l)·L(l,k)")
def _(tb, n, k):
    return _sigma((-1) ** (l - k) * tb.t1(n, l) * tb.lah(l, k) for l in range(k, n + 1))


@closed_form("degenerate_lah_bell", T2, "ΣΣ λ^(m−l)·L(n,m)·S1(m,l)·T2(l,k)")
def _(tb, n, k):
    return _sigma(
        tb.lam ** (m - l) * tb.lah(n, m) * tb.s1(m, l) * tb.t2(l, k)
        for l in range(k, n + 1)
        for m in range(l, n + 1)
    )


@closed_form("degenerate_lah_bell", T1, "ΣΣ (−1)^(m−k)·λ^(l−m)·T1(n,l)·S2(l,m)·L(m,k)")
def _(tb, n, k):
    return _sigma(
        (-1) ** (m - k) * tb.lam ** (l - m) * tb.t1(n, l) * tb.s2(l, m) * tb.lah(m, k)
        for l in range(k, n + 1)
        for m in range(k, l + 1)
    )


@closed_form("bell", T2, "Σ S2(n,l)·T2(l,k)")
def _(tb, n, k):
    return _sigma(tb.s2(n, l) * tb.t2(l, k) for l in range(k, n + 1))


@closed_form("bell", T1, "Σ T1(n,l)·S1(l,k)")
def _(tb, n, k):
    return _sigma(tb.t1(n, l) * tb.s1(l, k) for l in range(k, n + 1))


@closed_form("partially_degenerate_bell", T2, "Σ S2λ(n,l)·T2(l,k)")
def _(tb, n, k):
    return _sigma(tb.s2l(n, l) * tb.t2(l, k) for l in range(k, n + 1))


@closed_form("partially_degenerate_bell", T1, "Σ T1(n,l)·S1λ(l,k)")
def _(tb, n, k):
    return _sigma(tb.t1(n, l) * tb.s1l(l, k) for l in range(k, n + 1))


@closed_form("fully_degenerate_bell", T2, "ΣΣ λ^(m−l)·S2λ(n,m)·S1(m,l)·T2(l,k)")
def _(tb, n, k):
    return _sigma(
        tb.lam ** (m - l) * tb.s2l(n, m) * tb.s1(m, l) * tb.t2(l, k)
        for l in range(k, n + 1)
        for m in range(l, n + 1)
    )


@closed_form("fully_degenerate_bell", T1, "ΣΣ λ^(l−m)·T1(n,l)·S2(l,m)·S1λ(m,k)")
def _(tb, n, k):
    return _sigma(
        tb.lam ** (l - m) * tb.t1(n, l) * tb.s2(l, m) * tb.s1l(m, k)
        for l in range(k, n + 1)
        for m in range(k, l + 1)
    )


@closed_form("mittag_leffler", T2, "ΣΣ 2^m·L(n,m)·S1(m,l)·T2(l,k)")
def _(tb, n, k):
    return _sigma(
        2**m * tb.lah(n, m) * tb.s1(m, l) * tb.t2(l, k)
        for l in range(k, n + 1)
        for m in range(l, n + 1)
    )


@closed_form("mittag_leffler", T1, "ΣΣ (−1)^(m−k)·2^(−m)·T1(n,l)·S2(l,m)·L(m,k)")
def _(tb, n, k):
    return _sigma(
        (-1) ** (m - k) * Fraction(1, 2**m) * tb.t1(n, l) * tb.s2(l, m) * tb.lah(m, k)
        for l in range(k, n + 1)
        for m in range(k, l + 1)
    )


@closed_form("laguerre", T2, "Σ (−1)^l·L(n,l)·T2(l,k)")
def _(tb, n, k):
    return _sigma((-1) ** l * tb.lah(n, l) * tb.t2(l, k) for l in range(k, n + 1))


@closed_form("laguerre", T1, "(−1)^k·Σ T1(n,l)·L(l,k)")
def _(tb, n, k):
    return (-1) ** k * _sigma(tb.t1(n, l) * tb.lah(l, k) for l in range(k, n + 1))


def _bernoulli_t2(tb, n, k) -> Fraction:
    return _sigma(
        tb.t2(l, k) * math.comb(n, l) * tb.bernoulli[n - l] for l in range(k, n + 1)
    )


closed_form("bernoulli", T2, "Σ T2(l,k)·C(n,l)·B_(n−l)")(_bernoulli_t2)


@closed_form("bernoulli", T1, "Σ C(l+1,k)/(l+1)·T1(n,l)")
def _(tb, n, k):
    return _sigma(
        Fraction(math.comb(l + 1, k), l + 1) * tb.t1(n, l) for l in range(k, n + 1)
    )


@closed_form("euler", T2, "Σ C(n,l)·T2(l,k)·E_(n−l)")
def _(tb, n, k):
    return _sigma(math.comb(n, l) * tb.t2(l, k) * tb.euler[n - l] for l in range(k, n + 1))


@closed_form("euler", T1, "½·Σ C(l,k)·T1(n,l) + ½·T1(n,k)")
def _(tb, n, k):
    half = Fraction(1, 2)
    return half * _sigma(math.comb(l, k) * tb.t1(n, l) for l in range(k, n + 1)) + half * tb.t1(n, k)


@closed_form("gould_hopper", T2, "ΣΣ C(n,m)·r^l·(s)_(n−m)·S1(m,l)·T2(l,k)")
def _(tb, n, k):
    r, s = tb.params["r"], tb.params["s"]
    return _sigma(
        math.comb(n, m) * r**l * _falling(s, n - m) * tb.s1(m, l) * tb.t2(l, k)
        for l in range(k, n + 1)
        for m in range(l, n + 1)
    )


@closed_form("gould_hopper", T1, "ΣΣ C(l,m)·r^(−l)·(−s)^(l−m)·T1(n,l)·S2(m,k)")
def _(tb, n, k):
    r, s = tb.params["r"], tb.params["s"]
    return _sigma(
        math.comb(l, m) * r ** (-l) * (-s) ** (l - m) * tb.t1(n, l) * tb.s2(m, k)
        for l in range(k, n + 1)
        for m in range(k, l + 1)
    )


@closed_form("bernoulli_second", T2, "ΣΣ C(n,m)·b_(n−m)·S1(m,l)·T2(l,k)")
def _(tb, n, k):
    return _sigma(
        math.comb(n, m) * tb.bernoulli_second[n - m] * tb.s1(m, l) * tb.t2(l, k)
        for l in range(k, n + 1)
        for m in range(l, n + 1)
    )


@closed_form("bernoulli_second", T1, "ΣΣ C(l,m)·B_(l−m)·T1(n,l)·S2(m,k)")
def _(tb, n, k):
    return _sigma(
        math.comb(l, m) * tb.bernoulli[l - m] * tb.t1(n, l) * tb.s2(m, k)
        for l in range(k, n + 1)
        for m in range(k, l + 1)
    )


@closed_form("poisson_charlier", T2, "ΣΣ C(n,m)·(−1)^(n−m)·a^(−m)·S1(m,l)·T2(l,k)")
def _(tb, n, k):
    a = tb.params["a"]
    return _sigma(
        math.comb(n, m) * (-1) ** (n - m) * a ** (-m) * tb.s1(m, l) * tb.t2(l, k)
        for l in range(k, n + 1)
        for m in range(l, n + 1)
    )


@closed_form("poisson_charlier", T1, "ΣΣ a^k·C(l,m)·Bel_(l−m)(a)·T1(n,l)·S2(m,k)")
def _(tb, n, k):
    a = tb.params["a"]
    return _sigma(
        a**k * math.comb(l, m) * tb.bell_at_a[l - m] * tb.t1(n, l) * tb.s2(m, k)
        for l in range(k, n + 1)
        for m in range(0, l + 1)
    )


@closed_form("bernoulli_product", T2,
             "2/(n+2)·Σ C(n+2,m)·B_(n−m)·T2(m,k;B) + (n+1)·T2(n,k;B)")
def _(tb, n, k):
    head = _sigma(
        Fraction(2, n + 2) * math.comb(n + 2, m) * tb.bernoulli[n - m] * _bernoulli_t2(tb, m, k)
        for m in range(0, n - 1)
    )
    return head + (n + 1) * _bernoulli_t2(tb, n, k)


@closed_form("bernoulli_product", T1, "Γ = A·S")
def _(tb, n, k):
    return tb.bernoulli_product_t1(n, k)


# --- CHECAGENS ---

def check_orthogonality(spec: PolySequenceSpec, n_max: int, t1=None, t2=None) -> IdentityCheck:
    """Σ_k T1(n,k;P)·T2(k,l;P) = δ_(n,l) nas duas ordens."""
    t1 = t1 or assoc_t1(spec, n_max)
    t2 = t2 or assoc_t2(spec, n_max)

    def comparisons():
        for left, right, product in ((t1, t2, "t1·t2"), (t2, t1, "t2·t1")):
            for n in range(n_max + 1):
                for l in range(n + 1):
                    lhs = _sigma(left(n, k) * right(k, l) for k in range(l, n + 1))
                    yield {"product": product, "n": n, "l": l}, lhs, _delta(n, l)

    return IdentityCheck.from_witness(
        "orthogonality", spec.label, n_max, _first_failure(comparisons())
    )


def _random_vector(rng: random.Random, size: int) -> list:
    return [
        Fraction(rng.randint(*RANDOM_NUMERATOR_RANGE), rng.randint(*RANDOM_DENOMINATOR_RANGE))
        for _ in range(size)
    ]


def check_inverse_relations(spec: PolySequenceSpec, n_max: int, trials: int = DEFAULT_TRIALS,
                            seed: int = DEFAULT_SEED) -> IdentityCheck:
    """a = T2·c ⟺ c = T1·a, pelas somas inferiores e superiores (m = n_max)."""
    if trials < 1:
        raise ParameterError("trials deve ser >= 1.")
    t1 = assoc_t1(spec, n_max)
    t2 = assoc_t2(spec, n_max)
    m = n_max
    rng = random.Random(f"{seed}:{spec.label}")

    def lower(table, vector):
        return [_sigma(table(n, k) * vector[k] for k in range(n + 1)) for n in range(m + 1)]

    def upper(table, vector):
        return [_sigma(table(k, n) * vector[k] for k in range(n, m + 1)) for n in range(m + 1)]

    def comparisons():
        for trial in range(trials):
            vector = _random_vector(rng, m + 1)
            for form, transform in (("inferior", lower), ("superior", upper)):
                for direction, there, back in (("t2→t1", t2, t1), ("t1→t2", t1, t2)):
                    recovered = transform(back, transform(there, vector))
                    for n in range(m + 1):
                        where = {"trial": trial, "form": form, "direction": direction, "n": n}
                        yield where, recovered[n], vector[n]

    return IdentityCheck.from_witness(
        "inverse_relations", spec.label, n_max, _first_failure(comparisons())
    )


def check_closed_forms(spec: PolySequenceSpec, n_max: int) -> IdentityCheck:
    """Fórmulas fechadas (só triângulos clássicos) contra as rotas do motor umbral."""
    forms = CLOSED_FORMS.get(spec.name)
    if forms is None:
        raise UnregisteredClosedFormError(f"Sem fórmula fechada registrada para {spec.name}.")
    tables = ClassicalTables(n_max, dict(spec.params))
    computed = {AssocKind.SECOND: assoc_t2(spec, n_max), AssocKind.FIRST: assoc_t1(spec, n_max)}

    def comparisons():
        for kind, entries in forms.items():
            for label, fn in entries:
                for n in range(n_max + 1):
                    for k in range(n + 1):
                        where = {"kind": kind.value, "form": label, "n": n, "k": k}
                        yield where, fn(tables, n, k), computed[kind](n, k)

    return IdentityCheck.from_witness(
        "closed_forms", spec.label, n_max, _first_failure(comparisons())
    )


# --- SOMAS QUÁDRUPLAS ---
# Cada entrada: (termo da ordem T1·T2, termo da ordem T2·T1). No primeiro,
# m percorre k..n e j percorre l..k; no segundo, j percorre k..n e m, l..k.

QUADRUPLE_SUMS = {
    "rising": (
        lambda tb, n, k, l, m, j: (
            tb.t1(n, m) * (-1) ** (m - k) * tb.s2(m, k) * (-1) ** (k - j) * tb.s1(k, j) * tb.t2(j, l)
        ),
        lambda tb, n, k, l, j, m: (
            (-1) ** (n - j) * tb.s1(n, j) * tb.t2(j, k) * tb.t1(k, m) * (-1) ** (m - l) * tb.s2(m, l)
        ),
    ),
    "central_bell": (
        lambda tb, n, k, l, m, j: tb.t1(n, m) * tb.t1(m, k) * tb.t2(k, j) * tb.t2(j, l),
        lambda tb, n, k, l, j, m: tb.t2(n, j) * tb.t2(j, k) * tb.t1(k, m) * tb.t1(m, l),
    ),
    "lah_bell": (
        lambda tb, n, k, l, m, j: (-1) ** (m - k) * tb.t1(n, m) * tb.lah(m, k) * tb.lah(k, j) * tb.t2(j, l),
        lambda tb, n, k, l, j, m: (-1) ** (m - l) * tb.lah(n, j) * tb.t2(j, k) * tb.t1(k, m) * tb.lah(m, l),
    ),
    "laguerre": (
        lambda tb, n, k, l, m, j: (-1) ** (k - j) * tb.t1(n, m) * tb.lah(m, k) * tb.lah(k, j) * tb.t2(j, l),
        lambda tb, n, k, l, j, m: (-1) ** (j - l) * tb.lah(n, j) * tb.t2(j, k) * tb.t1(k, m) * tb.lah(m, l),
    ),
}


def check_quadruple_sum(name: str, n_max: int) -> IdentityCheck:
    """Avaliação direta das somas quádruplas, limitada a QUADRUPLE_SUM_MAX_N."""
    if name not in QUADRUPLE_SUMS:
        raise UnregisteredClosedFormError(f"Sem soma quádrupla registrada para {name}.")
    n_max = min(n_max, QUADRUPLE_SUM_MAX_N)
    first, second = QUADRUPLE_SUMS[name]
    tables = ClassicalTables(n_max)

    def comparisons():
        for n in range(n_max + 1):
            for l in range(n + 1):
                lhs = _sigma(
                    first(tables, n, k, l, m, j)
                    for k in range(l, n + 1)
                    for m in range(k, n + 1)
                    for j in range(l, k + 1)
                )
                yield {"product": "t1·t2", "n": n, "l": l}, lhs, _delta(n, l)
                lhs = _sigma(
                    second(tables, n, k, l, j, m)
                    for k in range(l, n + 1)
                    for j in range(k, n + 1)
                    for m in range(l, k + 1)
                )
                yield {"product": "t2·t1", "n": n, "l": l}, lhs, _delta(n, l)

    return IdentityCheck.from_witness(
        "quadruple_sums", name, n_max, _first_failure(comparisons())
    )


# --- RECORRÊNCIAS ---

def check_recurrences(spec: PolySequenceSpec, n_max: int) -> IdentityCheck:
    """Recorrências de passo dois com p̿_n = x²·p_(n−2):

        T2(n+2,k;P̿) = T2(n,k−2;P) + (k²/4)·T2(n,k;P)
        T1(n+2,k;P̿) = T1(n,k−2;P) − (n²/4)·T1(n,k;P̿)

    Elas vêm de x^[n+2] = (x² − n²/4)·x^[n].
    """
    doubled = xxbar_of(spec)
    t2, t1 = assoc_t2(spec, n_max), assoc_t1(spec, n_max)
    t2_dd, t1_dd = assoc_t2(doubled, n_max), assoc_t1(doubled, n_max)
    quarter = Fraction(1, 4)

    def comparisons():
        for n in range(n_max - 1):
            for k in range(n + 3):
                rhs = t2(n, k - 2) + quarter * k * k * t2(n, k)
                yield {"kind": "t2", "n": n, "k": k}, t2_dd(n + 2, k), rhs
            for k in range(n + 3):
                rhs = t1(n, k - 2) - quarter * n * n * t1_dd(n, k)
                yield {"kind": "t1", "n": n, "k": k}, t1_dd(n + 2, k), rhs

    return IdentityCheck.from_witness(
        "recurrences", spec.label, n_max, _first_failure(comparisons())
    )


def check_one_step_recurrences(spec: PolySequenceSpec, n_max: int) -> IdentityCheck:
    """Forma de passo um com p̄_n = x·p_(n−1), como costuma ser enunciada:

        T2(n+1,k;P̄) = T2(n,k−1;P) + (k/2)·T2(n,k;P)
        T1(n+1,k;P̄) = T1(n,k−1;P) − (n/2)·T1(n,k;P̄)

    Pressupõe x^[n+1] = (x − n/2)·x^[n], o que não vale; o resultado traz o
    primeiro contraexemplo (para monômios, n = 1 e k = 1). Fica fora da suíte.
    """
    shifted = xbar_of(spec)
    t2, t1 = assoc_t2(spec, n_max), assoc_t1(spec, n_max)
    t2_bar, t1_bar = assoc_t2(shifted, n_max), assoc_t1(shifted, n_max)
    half = Fraction(1, 2)

    def comparisons():
        for n in range(n_max):
            for k in range(n + 2):
                yield {"kind": "t2", "n": n, "k": k}, t2_bar(n + 1, k), t2(n, k - 1) + half * k * t2(n, k)
            for k in range(n + 2):
                yield {"kind": "t1", "n": n, "k": k}, t1_bar(n + 1, k), t1(n, k - 1) - half * n * t1_bar(n, k)

    return IdentityCheck.from_witness(
        "recurrences_one_step", spec.label, n_max, _first_failure(comparisons())
    )


def check_sum_rule(spec: PolySequenceSpec, n_max: int) -> IdentityCheck:
    """Σ_k T1(n,k;P)·p_k(1) = (n/2)_(n−1) para n >= 1."""
    t1 = assoc_t1(spec, n_max)
    polys = spec.polys(n_max)
    values = [p.eval(1) for p in polys]

    def comparisons():
        for n in range(1, n_max + 1):
            lhs = _sigma(t1(n, k) * values[k] for k in range(n + 1))
            yield {"n": n}, lhs, _falling(Fraction(n, 2), n - 1)

    return IdentityCheck.from_witness("sum_rule", spec.label, n_max, _first_failure(comparisons()))


def _route_tables(spec: PolySequenceSpec, n_max: int) -> list:
    """(tipo, rota, triângulo) de todas as rotas válidas para a sequência."""
    out = [(AssocKind.SECOND, route, assoc_t2(spec, n_max, route))
           for route in (T2Route.EXPLICIT, T2Route.DERIVATIVE)]
    if spec.has_pair:
        out.append((AssocKind.SECOND, T2Route.GENFUNC, assoc_t2(spec, n_max, T2Route.GENFUNC)))
    out.append((AssocKind.FIRST, T1Route.SOLVE, assoc_t1(spec, n_max, T1Route.SOLVE)))
    if spec.has_pair:
        out.append((AssocKind.FIRST, T1Route.FUNCTIONAL, assoc_t1(spec, n_max, T1Route.FUNCTIONAL)))
        if spec.pair(S.resolve_order(n_max)).is_associated:
            out.append((AssocKind.FIRST, T1Route.GENFUNC, assoc_t1(spec, n_max, T1Route.GENFUNC)))
    if spec.name == "bernoulli_product":
        out.append((AssocKind.FIRST, "matrix", bernoulli_product_t1(n_max)))
    return out


def check_routes(spec: PolySequenceSpec, n_max: int) -> IdentityCheck:
    """Todas as rotas de T2 (e de T1) concordam com a primeira."""
    tables = _route_tables(spec, n_max)
    reference = {}

    def comparisons():
        for kind, route, table in tables:
            base_route, base = reference.setdefault(kind, (route, table))
            for n in range(n_max + 1):
                for k in range(n + 1):
                    where = {"kind": kind.value, "route": str(route), "against": str(base_route),
                             "n": n, "k": k}
                    yield where, table(n, k), base(n, k)

    return IdentityCheck.from_witness("routes", spec.label, n_max, _first_failure(comparisons()))


SHEFFER_SHIFTS = (Fraction(1, 2), Fraction(-2))


def check_sheffer_axioms(spec: PolySequenceSpec, n_max: int) -> IdentityCheck:
    """f(t)s_n = n·s_(n−1), ⟨g·f^k | s_n⟩ = n!·δ_(n,k), identidade binomial e
    o passo de recorrência s_(n+1) = (x − g'/g)(1/f')s_n."""
    order = S.resolve_order(n_max)
    pair = spec.pair(order)
    polys = spec.polys(n_max, order)
    associated = [apply_operator(pair.g, p) for p in polys]

    def comparisons():
        for n, s_n in enumerate(polys):
            lowered = apply_operator(pair.f, s_n)
            expected = polys[n - 1].scale(n) if n else Polynomial()
            for j in range(n + 1):
                yield {"axiom": "f(t)s_n", "n": n, "j": j}, lowered.coefficient(j), expected.coefficient(j)
        power = pair.g
        for k in range(n_max + 1):
            for n, s_n in enumerate(polys):
                expected = math.factorial(n) if n == k else 0
                yield {"axiom": "⟨g·f^k|s_n⟩", "n": n, "k": k}, functional_apply(power, s_n), Fraction(expected)
            power = S.mul(power, pair.f)
        for y in SHEFFER_SHIFTS:
            shift = S.exp_scaled(y, order)
            for n, s_n in enumerate(polys):
                lhs = apply_operator(shift, s_n)
                rhs = _sum_polys(
                    polys[j].scale(math.comb(n, j) * associated[n - j].eval(y)) for j in range(n + 1)
                )
                for j in range(n + 1):
                    where = {"axiom": "s_n(x+y)", "y": format_rational(y), "n": n, "j": j}
                    yield where, lhs.coefficient(j), rhs.coefficient(j)
        for n in range(n_max):
            step = sheffer_recurrence_step(pair, polys[n])
            for j in range(n + 2):
                yield {"axiom": "s_(n+1)", "n": n, "j": j}, step.coefficient(j), polys[n + 1].coefficient(j)

    return IdentityCheck.from_witness(
        "sheffer_axioms", spec.label, n_max, _first_failure(comparisons())
    )


def _sum_polys(polys) -> Polynomial:
    return sum(polys, Polynomial())


def check_triangle_routes(family: TriangleFamily, n_max: int) -> IdentityCheck:
    """Rota de séries = rota algébrica, entrada a entrada."""
    label = family.id.value
    if family.params:
        label += "[" + ",".join(f"{k}={format_rational(v)}" for k, v in family.params) + "]"
    try:
        crosscheck(family, n_max)
    except CfnumError as exc:
        return IdentityCheck.from_witness(
            "triangle_routes", label, n_max, getattr(exc, "witness", None) or {"error": str(exc)}
        )
    return IdentityCheck.from_witness("triangle_routes", label, n_max, None)


# --- SUÍTE ---

SPEC_CHECKS = {
    "orthogonality": check_orthogonality,
    "inverse_relations": check_inverse_relations,
    "closed_forms": check_closed_forms,
    "recurrences": check_recurrences,
    "sum_rule": check_sum_rule,
    "routes": check_routes,
    "sheffer_axioms": check_sheffer_axioms,
}
CHECK_IDS = (
    "triangle_routes",
    "orthogonality",
    "inverse_relations",
    "closed_forms",
    "quadruple_sums",
    "recurrences",
    "sum_rule",
    "routes",
    "sheffer_axioms",
)


def parse_suite(text: str | None) -> tuple:
    """"all", "none" ou lista separada por vírgulas; a ordem segue CHECK_IDS."""
    text = (text or "all").strip()
    if text == "all":
        return CHECK_IDS
    if text in ("none", ""):
        return ()
    wanted = {part.strip() for part in text.split(",") if part.strip()}
    unknown = sorted(wanted - set(CHECK_IDS))
    if unknown:
        raise ParameterError(
            f"Checagens desconhecidas: {', '.join(unknown)}. Opções: {', '.join(CHECK_IDS)}."
        )
    return tuple(check_id for check_id in CHECK_IDS if check_id in wanted)


def suite_specs() -> list:
    """Todas as entradas do catálogo com os parâmetros padrão, mais λ = 1."""
    specs = []
    for name, entry in CATALOG.items():
        params = {key: DEFAULT_PARAMS[key] for key in entry.params}
        specs.append(catalog(name, **params))
        if "lambda" in entry.params:
            specs.append(catalog(name, **dict(params, **{"lambda": 1})))
    return specs


def suite_families() -> list:
    families = []
    for family_id in FamilyId:
        params = {key: DEFAULT_PARAMS[key] for key in required_params(family_id)}
        families.append(TriangleFamily.build(family_id, **params))
        if "lambda" in params:
            families.append(TriangleFamily.build(family_id, **{"lambda": 1}))
    return families


def _guarded(check_id: str, label: str, n_max: int, fn, *args) -> IdentityCheck:
    """Erros do domínio durante uma checagem viram FAIL com a mensagem."""
    try:
        return fn(*args)
    except CfnumError as exc:
        witness = dict(getattr(exc, "witness", None) or {})
        witness["error"] = str(exc)
        return IdentityCheck.from_witness(check_id, label, n_max, witness)


def _tasks(check_ids, n_max: int, seed: int, trials: int) -> list:
    tasks = []
    specs = suite_specs()
    for check_id in check_ids:
        if check_id == "triangle_routes":
            for family in suite_families():
                tasks.append((check_id, family.id.value, check_triangle_routes, family, n_max))
        elif check_id == "quadruple_sums":
            for name in QUADRUPLE_SUMS:
                tasks.append((check_id, name, check_quadruple_sum, name, n_max))
        else:
            fn = SPEC_CHECKS[check_id]
            for spec in specs:
                if check_id == "sheffer_axioms" and not spec.has_pair:
                    continue
                if check_id == "inverse_relations":
                    tasks.append((check_id, spec.label, fn, spec, n_max, trials, seed))
                else:
                    tasks.append((check_id, spec.label, fn, spec, n_max))
    return tasks


def run_suite(checks=None, n_max: int = DEFAULT_N_MAX, seed: int = DEFAULT_SEED,
              jobs: int | None = None, trials: int = DEFAULT_TRIALS) -> dict:
    """Executa as checagens e monta o relatório.

    ``checks`` é um iterável de ids (None = todas). A ordem do relatório não
    depende de ``jobs``.
    """
    if n_max < 0:
        raise ParameterError("n_max deve ser >= 0.")
    check_ids = CHECK_IDS if checks is None else parse_suite(",".join(checks) or "none")
    jobs = jobs or getattr(settings, "CFNUM_VERIFY_JOBS", 1)
    tasks = _tasks(check_ids, n_max, seed, trials)
    logger.info("suíte: %s checagens, n_max=%s, seed=%s, jobs=%s", len(tasks), n_max, seed, jobs)

    def run(task):
        check_id, label, fn, *args = task
        return _guarded(check_id, label, n_max, fn, *args)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(task) for task in tasks]

    return {
        "suite_version": SUITE_VERSION,
        "params": {
            "n_max": n_max,
            "seed": seed,
            "trials": trials,
            **{name: format_rational(value) for name, value in DEFAULT_PARAMS.items()},
        },
        "checks": [result.as_dict() for result in results],
        "all_pass": all(result.passed for result in results),
    }
