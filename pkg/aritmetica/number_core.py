# aritmetica/number_core.py
"""Aritmética exata sobre os racionais: fatoração, lugares, valuações e |.|_v.

Os valores são imutáveis; o cache de fatoração é um `lru_cache` (seguro para
chamadas concorrentes e com semântica de valor).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from sympy import factorint, isprime, multiplicity

from . import conf
from .exceptions import BudgetExceeded, DomainError

logger = logging.getLogger(__name__)

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_LOG10_2 = math.log10(2)


def as_rational(value: RationalLike) -> Fraction:
    """Converte int/Fraction/str ('3/2', '-4') para Fraction."""
    if isinstance(value, bool):
        raise DomainError(f"valor não racional: {value!r}", code="not_rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"racional inválido: {value!r}", code="not_rational") from exc
    raise DomainError(f"valor não racional: {value!r}", code="not_rational")


def decimal_digits(n: int) -> int:
    """Número (aproximado por cima) de dígitos decimais de |n|, sem converter para str."""
    bits = abs(int(n)).bit_length()
    return int(bits * _LOG10_2) + 1


def check_digit_budget(n: int, what: str = "inteiro") -> None:
    cap = conf.get("MAX_DIGITS")
    digits = decimal_digits(n)
    if digits > cap:
        raise BudgetExceeded(f"{what} com ~{digits} dígitos excede o teto de {cap}", budget="max_digits")


@lru_cache(maxsize=1024)
def is_prime(p: int) -> bool:
    return p >= 2 and bool(isprime(p))


# =======================
# Lugares
# =======================
@dataclass(frozen=True)
class Place:
    """Lugar de Q: arquimediano (prime=None) ou p-ádico."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not is_prime(self.prime):
            raise DomainError(f"{self.prime} não é primo", code="not_prime")

    @classmethod
    def archimedean(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(int(p))

    @classmethod
    def parse(cls, text: str) -> "Place":
        t = str(text).strip().lower()
        if t in {"inf", "oo", "∞", "infinity", "arch"}:
            return cls.archimedean()
        try:
            return cls.finite(int(t))
        except ValueError as exc:
            raise DomainError(f"lugar inválido: {text!r}", code="bad_place") from exc

    @property
    def is_archimedean(self) -> bool:
        return self.prime is None

    def sort_key(self) -> int:
        return 0 if self.prime is None else self.prime

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)


# =======================
# Fatoração
# =======================
@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("sinal deve ser ±1", code="bad_sign")
        primes = [p for p, _ in self.factors]
        if any(b <= a for a, b in zip(primes, primes[1:])):
            raise DomainError("primos devem ser estritamente crescentes", code="bad_factorization")
        if any(e <= 0 for _, e in self.factors):
            raise DomainError("expoentes devem ser positivos", code="bad_factorization")

    def value(self) -> int:
        return self.sign * math.prod(p ** e for p, e in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def verify(self) -> bool:
        return all(is_prime(p) for p in self.primes)

    def __str__(self) -> str:
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors) or "1"
        return body if self.sign > 0 else f"-1 * {body}"


@lru_cache(maxsize=4096)
def _factor_abs(m: int, trial_bound: int) -> tuple[tuple[int, int], ...]:
    if m == 1:
        return ()
    exps: dict[int, int] = {}
    for base, e in factorint(m, limit=trial_bound).items():
        base = int(base)
        if is_prime(base):
            exps[base] = exps.get(base, 0) + e
            continue
        # cofator composto acima do limite: rho / p-1 do sympy
        logger.debug("cofator de %d dígitos segue para rho", decimal_digits(base))
        for p, k in factorint(base).items():
            exps[int(p)] = exps.get(int(p), 0) + k * e
    return tuple(sorted(exps.items()))


def factor(n: int) -> Factorization:
    """Fatoração completa de n ≠ 0, com primalidade conferida."""
    n = int(n)
    if n == 0:
        raise DomainError("não se fatora zero", code="zero_input")
    check_digit_budget(n, "entrada da fatoração")
    factors = _factor_abs(abs(n), int(conf.get("TRIAL_DIVISION_BOUND")))
    return Factorization(1 if n > 0 else -1, factors)


def partial_factor(n: int) -> tuple[tuple[int, int], ...]:
    """|n| sobre bases dois a dois coprimas: primos até PARTIAL_FACTOR_BOUND + cofator não fatorado.

    Sem rho nem p−1: o cofator fica como base (primo ou não).
    """
    m = abs(int(n))
    if m == 0:
        raise DomainError("não se fatora zero", code="zero_input")
    check_digit_budget(m, "entrada da fatoração parcial")
    if m == 1:
        return ()
    return _partial_factor_abs(m, int(conf.get("PARTIAL_FACTOR_BOUND")))


@lru_cache(maxsize=8192)
def _partial_factor_abs(m: int, bound: int) -> tuple[tuple[int, int], ...]:
    found = factorint(m, limit=bound, use_rho=False, use_pm1=False)
    return tuple(sorted((int(b), int(e)) for b, e in found.items()))


def split_primes(n: int, primes: Iterable[int]) -> tuple[dict[int, int], int]:
    """Tira de |n| as potências dos primos dados: devolve (expoentes, cofator)."""
    m = abs(int(n))
    if m == 0:
        raise DomainError("não se separa zero", code="zero_input")
    found: dict[int, int] = {}
    for p in sorted(set(primes)):
        k = int(multiplicity(p, m)) if m > 1 else 0
        if k:
            found[p] = k
            m //= p ** k
    return found, m


# =======================
# Valuações e valores absolutos normalizados
# =======================
def valuation(p: int, q: RationalLike) -> int:
    """v_p(q) = v_p(numerador) − v_p(denominador)."""
    q = as_rational(q)
    if q == 0:
        raise DomainError("valuação de zero é +∞", code="zero_input")
    Place.finite(p)
    num = abs(q.numerator)
    return int(multiplicity(p, num)) - int(multiplicity(p, q.denominator))


def log_abs(v: Place, q: RationalLike) -> float:
    """log |q|_v com |p|_p = 1/p."""
    q = as_rational(q)
    if q == 0:
        raise DomainError("log|0|_v não está definido", code="zero_input")
    if v.is_archimedean:
        return math.log(abs(q.numerator)) - math.log(q.denominator)
    return -valuation(v.prime, q) * math.log(v.prime)


def exponent_vector(q: RationalLike) -> dict[int, int]:
    """Expoentes primos de q: |q| = Π p^{e_p}."""
    q = as_rational(q)
    if q == 0:
        raise DomainError("zero não tem vetor de expoentes", code="zero_input")
    exps = dict(factor(q.numerator).factors)
    for p, e in factor(q.denominator).factors:
        exps[p] = exps.get(p, 0) - e
    return {p: e for p, e in sorted(exps.items()) if e}


def place_exponents(q: RationalLike) -> dict[Place, dict[int, int]]:
    """log|q|_v para cada lugar do suporte, como vetor exato sobre log p.

    No lugar arquimediano log|q| = Σ v_p(q)·log p; no lugar p, −v_p(q)·log p.
    """
    exps = exponent_vector(q)
    places: dict[Place, dict[int, int]] = {Place.archimedean(): dict(exps)}
    for p, e in exps.items():
        places[Place.finite(p)] = {p: -e}
    return places


def product_formula_residue(q: RationalLike) -> dict[int, int]:
    """Soma exata de log|q|_v sobre todos os lugares; vazio quando a fórmula do produto vale."""
    total: dict[int, int] = {}
    for exps in place_exponents(q).values():
        for p, e in exps.items():
            total[p] = total.get(p, 0) + e
    return {p: e for p, e in total.items() if e}


# =======================
# Base coprima (refinamento por mdc)
# =======================
def coprime_base(values: Iterable[int]) -> tuple[int, ...]:
    """Base de inteiros > 1 dois a dois coprimos sobre a qual todo valor se fatora.

    Não fatora nada: só mdc. Expoentes sobre a base definem as mesmas relações
    multiplicativas que expoentes sobre primos.
    """
    base: list[int] = []
    pending = [abs(int(v)) for v in values]
    while pending:
        x = pending.pop()
        if x <= 1:
            continue
        for i, b in enumerate(base):
            g = math.gcd(x, b)
            if g > 1:
                base.pop(i)
                pending.extend([b // g, g, x // g])
                break
        else:
            base.append(x)
    return tuple(sorted(base))


def exponents_over_base(n: int, base: Iterable[int]) -> dict[int, int]:
    """Expoentes de |n| sobre uma base coprima que o fatora por completo."""
    m = abs(int(n))
    if m == 0:
        raise DomainError("zero não se escreve sobre a base", code="zero_input")
    exps: dict[int, int] = {}
    for b in base:
        if m == 1:
            break
        k = int(multiplicity(b, m))
        if k:
            exps[b] = k
            m //= b ** k
    if m != 1:
        raise DomainError(f"base não fatora o valor (resto {m})", code="bad_base")
    return exps
