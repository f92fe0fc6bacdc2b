# aritmetica/heights.py
"""Alturas de Weil e alturas locais em P^N relativas a divisores hipersuperfície.

Logaritmo natural em todo o módulo. Onde uma identidade precisa ser conferida
exatamente, o valor é levado como `HeightValue`: log de um racional positivo
(termo arquimediano) mais expoentes inteiros sobre bases coprimas.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .exceptions import DomainError
from .number_core import Place, coprime_base, exponents_over_base, partial_factor, split_primes
from .polynomials import HomogeneousForm
from .projective import ProjectivePoint

logger = logging.getLogger(__name__)

# acima disto a comparação exata de potências vira comparação em ponto flutuante
_EXACT_COMPARE_BITS = 1 << 18


# =======================
# Valores de altura
# =======================
@dataclass(frozen=True)
class HeightValue:
    arch_argument: Fraction = Fraction(1)
    finite: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.arch_argument <= 0:
            raise DomainError("argumento arquimediano deve ser positivo", code="bad_height")
        bases = [b for b, _ in self.finite]
        if any(b <= 1 for b in bases) or any(math.gcd(a, b) != 1 for i, a in enumerate(bases) for b in bases[i + 1:]):
            raise DomainError("bases finitas devem ser > 1 e coprimas", code="bad_height")

    @classmethod
    def of_int(cls, n: int) -> "HeightValue":
        return cls(Fraction(abs(int(n))))

    @property
    def arch(self) -> float:
        return math.log(self.arch_argument.numerator) - math.log(self.arch_argument.denominator)

    def finite_total(self) -> float:
        return sum(e * math.log(b) for b, e in self.finite)

    def total(self) -> float:
        return self.arch + self.finite_total()

    def exact_value(self) -> Fraction:
        """exp(total()) como racional exato."""
        value = self.arch_argument
        for b, e in self.finite:
            value *= Fraction(b) ** e
        return value

    def same_as(self, other: "HeightValue") -> bool:
        return self.exact_value() == other.exact_value()

    def scaled(self, k: int) -> "HeightValue":
        k = int(k)
        if k < 0:
            raise DomainError("escala negativa de altura", code="bad_height")
        return HeightValue(self.arch_argument ** k, tuple((b, e * k) for b, e in self.finite if e * k))

    def to_json(self) -> dict:
        return {
            "nats": self.total(),
            "exact_finite": [[b, e] for b, e in self.finite],
            "arch": self.arch,
        }


@dataclass(frozen=True)
class PlaceSet:
    """Conjunto finito S de lugares; o arquimediano está sempre presente."""

    primes: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "primes", frozenset(int(p) for p in self.primes))
        for p in self.primes:
            Place.finite(p)

    @classmethod
    def of(cls, places: Iterable[Place | int | str]) -> "PlaceSet":
        primes = set()
        for v in places:
            place = v if isinstance(v, Place) else Place.parse(str(v))
            if not place.is_archimedean:
                primes.add(place.prime)
        return cls(frozenset(primes))

    def with_primes(self, primes: Iterable[int]) -> "PlaceSet":
        return PlaceSet(self.primes | frozenset(primes))

    def __contains__(self, v: Place) -> bool:
        return v.is_archimedean or v.prime in self.primes

    def places(self) -> list[Place]:
        return [Place.archimedean()] + [Place.finite(p) for p in sorted(self.primes)]

    def __str__(self) -> str:
        return "{" + ", ".join(str(v) for v in self.places()) + "}"

    def to_json(self) -> list[str]:
        return [str(v) for v in self.places()]


# =======================
# Divisores
# =======================
@dataclass(frozen=True)
class Divisor:
    """Divisor efetivo (F = 0) com F homogênea, inteira e primitiva."""

    form: HomogeneousForm

    def __post_init__(self):
        if self.form.is_zero:
            raise DomainError("divisor com forma nula", code="zero_form")
        if self.form.degree < 1:
            raise DomainError("divisor precisa de grau ≥ 1", code="bad_divisor")
        if self.form.content() != 1:
            raise DomainError("forma do divisor não é primitiva", code="not_primitive")

    @classmethod
    def of(cls, form: HomogeneousForm) -> "Divisor":
        """Aceita forma não primitiva e divide pelo conteúdo (sinal preservado)."""
        return cls(form.primitive())

    @classmethod
    def coordinate(cls, indices: Iterable[int], N: int) -> "Divisor":
        """Π_{i∈indices} X_i, subdivisor de (X_0⋯X_N = 0)."""
        idx = sorted(set(int(i) for i in indices))
        if not idx or idx[0] < 0 or idx[-1] > N:
            raise DomainError(f"índices de coordenada inválidos: {idx}", code="bad_divisor")
        exps = tuple(1 if i in idx else 0 for i in range(N + 1))
        return cls(HomogeneousForm.monomial(exps))

    @classmethod
    def from_json(cls, data, N: int | None = None) -> "Divisor":
        if isinstance(data, dict) and "coordinates" in data:
            if N is None:
                raise DomainError("divisor por coordenadas exige a dimensão", code="dimension_mismatch")
            return cls.coordinate(data["coordinates"], N)
        return cls.of(HomogeneousForm.from_json(data, None if N is None else N + 1))

    @property
    def dimension(self) -> int:
        return self.form.nvars - 1

    @property
    def degree(self) -> int:
        return self.form.degree

    def coordinate_indices(self) -> tuple[int, ...]:
        """Índices i com (X_i = 0) ⊂ D."""
        return self.form.variables_dividing()

    def is_coordinate_subdivisor(self) -> bool:
        if self.form.n_monomials != 1:
            return False
        exps, coef = self.form.terms[0]
        return coef == 1 and all(e in (0, 1) for e in exps)

    def value_at(self, P: ProjectivePoint) -> int:
        if P.dimension != self.dimension:
            raise DomainError(
                f"divisor em P^{self.dimension}, ponto em P^{P.dimension}", code="dimension_mismatch"
            )
        return self.form.evaluate(P.coords)

    def contains(self, P: ProjectivePoint) -> bool:
        return self.value_at(P) == 0

    def to_json(self) -> dict:
        return self.form.to_json()

    def __str__(self) -> str:
        return f"({self.form} = 0)"


def _value_off_support(D: Divisor, P: ProjectivePoint) -> int:
    value = D.value_at(P)
    if value == 0:
        raise DomainError(f"{P} está no suporte de {D}", code="on_divisor")
    return value


# =======================
# Alturas
# =======================
def weil_height(P: ProjectivePoint) -> HeightValue:
    """Em coordenadas coprimas só sobra o termo arquimediano: log max|a_i|."""
    return HeightValue.of_int(max(abs(a) for a in P.coords))


def divisor_height(D: Divisor, P: ProjectivePoint) -> HeightValue:
    if P.dimension != D.dimension:
        raise DomainError("divisor e ponto em dimensões diferentes", code="dimension_mismatch")
    return weil_height(P).scaled(D.degree)


def local_height_exact(v: Place, D: Divisor, P: ProjectivePoint) -> HeightValue:
    value = _value_off_support(D, P)
    if v.is_archimedean:
        top = max(abs(a) for a in P.coords) ** D.degree
        return HeightValue(Fraction(top, abs(value)))
    k, _ = split_primes(value, [v.prime])
    e = k.get(v.prime, 0)
    return HeightValue(finite=((v.prime, e),) if e else ())


def local_height(v: Place, D: Divisor, P: ProjectivePoint) -> float:
    """λ_v(D, P) = log(max|a_i|_v)^d − log|F(a)|_v."""
    return local_height_exact(v, D, P).total()


def all_places_height(D: Divisor, P: ProjectivePoint) -> HeightValue:
    """Σ sobre todos os lugares de λ_v(D, P), com a parte finita sobre bases coprimas de |F(a)|."""
    return _all_places(D, P, _value_off_support(D, P))


def _all_places(D: Divisor, P: ProjectivePoint, value: int) -> HeightValue:
    top = max(abs(a) for a in P.coords) ** D.degree
    return HeightValue(Fraction(top, abs(value)), partial_factor(value))


@dataclass(frozen=True)
class DecompositionResidue:
    finite: dict[int, int]
    arch: float

    @property
    def exact(self) -> bool:
        return not self.finite


def decomposition_residue(D: Divisor, P: ProjectivePoint) -> DecompositionResidue:
    """Σ_v λ_v(D,P) − deg(D)·h(P): resíduo inteiro da parte finita e resíduo real do arquimediano.

    O termo arquimediano −log|F(a)| é escrito sobre a mesma base das parcelas
    finitas, de modo que a parte finita cancela em expoentes inteiros.
    """
    value = _value_off_support(D, P)
    total = _all_places(D, P, value)
    base = coprime_base([b for b, _ in total.finite] + [value])
    arch_side = exponents_over_base(value, base)
    local_side: dict[int, int] = {}
    for b, e in total.finite:
        for bb, k in exponents_over_base(b, base).items():
            local_side[bb] = local_side.get(bb, 0) + k * e
    residue = {b: local_side.get(b, 0) - arch_side.get(b, 0) for b in set(local_side) | set(arch_side)}
    residue = {b: e for b, e in residue.items() if e}
    arch = abs(total.total() - divisor_height(D, P).total())
    return DecompositionResidue(residue, arch)


def sum_outside_S_exact(D: Divisor, S: PlaceSet, P: ProjectivePoint) -> HeightValue:
    value = _value_off_support(D, P)
    _, cofactor = split_primes(value, S.primes)
    return HeightValue(finite=((cofactor, 1),) if cofactor > 1 else ())


def sum_outside_S(D: Divisor, S: PlaceSet, P: ProjectivePoint) -> float:
    """Σ_{p∉S} v_p(F(a))·log p: o log da parte de |F(a)| sem primos de S."""
    return sum_outside_S_exact(D, S, P).total()


# =======================
# Quase-integralidade
# =======================
def log_less_than(x: Fraction, y: Fraction, ratio: Fraction) -> bool:
    """log x < ratio·log y, exato quando as potências cabem no orçamento de bits."""
    num, den = ratio.numerator, ratio.denominator
    bits = max(x.numerator.bit_length(), x.denominator.bit_length()) * den + \
        max(y.numerator.bit_length(), y.denominator.bit_length()) * abs(num)
    if bits <= _EXACT_COMPARE_BITS:
        return x ** den < y ** num
    lx = math.log(x.numerator) - math.log(x.denominator)
    ly = math.log(y.numerator) - math.log(y.denominator)
    return lx < float(ratio) * ly


@dataclass(frozen=True)
class QuasiIntegrality:
    quasi_integral: bool
    margin: float
    ratio: float
    outside_S: float
    height: float

    def to_json(self) -> dict:
        return {
            "quasi_integral": self.quasi_integral,
            "margin": self.margin,
            "ratio": self.ratio,
            "outside_S": self.outside_S,
            "height": self.height,
        }


def quasi_integral_test(D: Divisor, S: PlaceSet, P: ProjectivePoint, eps) -> QuasiIntegrality:
    """Σ_{v∉S} λ_v(D,P) < ε·h(D,P); margem = soma − ε·h (negativa quando vale)."""
    eps_q = Fraction(str(eps))
    if not 0 <= eps_q < 1:
        raise DomainError(f"ε = {eps} fora de [0, 1)", code="bad_epsilon")
    height = divisor_height(D, P)
    if height.exact_value() == 1:
        raise DomainError(f"{P} tem altura zero", code="height_degenerate")
    outside = sum_outside_S_exact(D, S, P)
    h, s = height.total(), outside.total()
    flag = log_less_than(outside.exact_value(), height.exact_value(), eps_q)
    return QuasiIntegrality(flag, s - float(eps_q) * h, s / h, s, h)
