"""
Polinômios sobre os racionais e mudanças entre as bases monomial, fatorial
central, descendente e ascendente (e suas versões com λ).

As bases são expandidas a partir dos produtos de fatores lineares que as
definem; nada aqui usa séries, e por isso este módulo serve de oráculo para
os triângulos.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from django.db import models

from .exceptions import ParameterError, SeriesDomainError
from .series import format_rational, parse_rational


@dataclass(frozen=True)
class Polynomial:
    """Coeficientes em ordem crescente de grau, sem zeros à direita."""

    coeffs: tuple = ()

    def __post_init__(self):
        values = [Fraction(c) for c in self.coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def x(cls) -> Polynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, value) -> Polynomial:
        return cls((value,))

    @classmethod
    def monomial(cls, n: int) -> Polynomial:
        return cls((0,) * n + (1,))

    @classmethod
    def from_linear_factors(cls, shifts: Iterable) -> Polynomial:
        """∏ (x + a_i)."""
        result = cls.constant(1)
        for a in shifts:
            result = result * cls((a, 1))
        return result

    @property
    def degree(self) -> int:
        """-1 para o polinômio nulo."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def eval(self, x0) -> Fraction:
        x0 = Fraction(x0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def derivative_taylor(self, x0, l: int) -> Fraction:
        """(1/l!)·(d/dx)^l p em x0, isto é, o l-ésimo coeficiente de Taylor."""
        if l < 0:
            raise ParameterError("A ordem da derivada deve ser >= 0.")
        x0 = Fraction(x0)
        return sum(
            (math.comb(j, l) * self.coeffs[j] * x0 ** (j - l)
             for j in range(l, len(self.coeffs))),
            Fraction(0),
        )

    def scale(self, factor) -> Polynomial:
        factor = Fraction(factor)
        return Polynomial(tuple(c * factor for c in self.coeffs))

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            tuple(self.coefficient(k) + other.coefficient(k) for k in range(size))
        )

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c:
                terms.append(f"{format_rational(c)}*x^{k}" if k else format_rational(c))
        return " + ".join(terms) or "0"


# --- BASES ---

class BasisKind(models.TextChoices):
    MONOMIAL = "monomial", "Monomial x^n"
    CENTRAL = "central", "Fatorial central x^[n]"
    CENTRAL_LAMBDA = "central_lambda", "Fatorial central x^[n,λ]"
    FALLING = "falling", "Fatorial descendente (x)_n"
    FALLING_LAMBDA = "falling_lambda", "Fatorial descendente (x)_{n,λ}"
    RISING = "rising", "Fatorial ascendente <x>_n"
    RISING_LAMBDA = "rising_lambda", "Fatorial ascendente <x>_{n,λ}"


LAMBDA_KINDS = frozenset(
    {BasisKind.CENTRAL_LAMBDA, BasisKind.FALLING_LAMBDA, BasisKind.RISING_LAMBDA}
)


@dataclass(frozen=True)
class BasisId:
    kind: BasisKind
    lam: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", BasisKind(self.kind))
        if self.kind in LAMBDA_KINDS:
            if self.lam is None:
                raise ParameterError(f"A base {self.kind.value} exige λ.")
            lam = parse_rational(self.lam)
            if lam == 0:
                raise ParameterError(f"A base {self.kind.value} exige λ ≠ 0.")
            object.__setattr__(self, "lam", lam)
        else:
            object.__setattr__(self, "lam", None)


MONOMIAL = BasisId(BasisKind.MONOMIAL)
CENTRAL = BasisId(BasisKind.CENTRAL)
FALLING = BasisId(BasisKind.FALLING)


def _shifts(basis: BasisId, n: int) -> list:
    """Raízes (com sinal trocado) do n-ésimo polinômio da base."""
    lam = basis.lam
    kind = basis.kind
    if kind == BasisKind.MONOMIAL:
        return [0] * n
    if kind == BasisKind.FALLING:
        return [-j for j in range(n)]
    if kind == BasisKind.FALLING_LAMBDA:
        return [-j * lam for j in range(n)]
    if kind == BasisKind.RISING:
        return list(range(n))
    if kind == BasisKind.RISING_LAMBDA:
        return [j * lam for j in range(n)]
    if n == 0:
        return []
    step = Fraction(1) if kind == BasisKind.CENTRAL else lam
    # x^[n] = x·∏_{j=1}^{n-1} (x + (n/2 − j)), idem com passo λ
    return [0] + [(Fraction(n, 2) - j) * step for j in range(1, n)]


@lru_cache(maxsize=None)
def basis_poly(basis: BasisId, n: int) -> Polynomial:
    """n-ésimo polinômio da base, expandido na base monomial."""
    if n < 0:
        raise SeriesDomainError("Polinômios de base só existem para n >= 0.")
    return Polynomial.from_linear_factors(_shifts(basis, n))


def solve_triangular(p: Polynomial, polys: Sequence[Polynomial]) -> list:
    """Coeficientes a_k com p = Σ a_k·polys[k], deg polys[k] = k.

    Resolve de cima para baixo dividindo pelo coeficiente líder, então
    sequências não mônicas também funcionam.
    """
    if p.degree >= len(polys):
        raise SeriesDomainError(
            f"Grau {p.degree} exige {p.degree + 1} polinômios, recebidos {len(polys)}."
        )
    remainder = p
    size = max(p.degree + 1, 1)
    out = [Fraction(0)] * size
    for d in range(p.degree, -1, -1):
        target = polys[d]
        if target.degree != d:
            raise SeriesDomainError(f"O polinômio {d} da sequência tem grau {target.degree}.")
        a = remainder.coefficient(d) / target.leading
        out[d] = a
        if a:
            remainder = remainder - target.scale(a)
    return out


def expand(coeffs: Sequence, basis: BasisId) -> Polynomial:
    """Σ c_k·b_k(x) na base monomial."""
    result = Polynomial()
    for k, c in enumerate(coeffs):
        if c:
            result = result + basis_poly(basis, k).scale(c)
    return result


def change_basis(coeffs: Sequence, src: BasisId, dst: BasisId) -> list:
    """Converte coeficientes de ``src`` para ``dst`` (zeros à direita removidos)."""
    values = [parse_rational(c) for c in coeffs]
    if src == dst:
        out = list(values)
    else:
        p = expand(values, src)
        out = solve_triangular(p, [basis_poly(dst, k) for k in range(p.degree + 1)])
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out or [Fraction(0)]
