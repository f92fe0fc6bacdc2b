# aritmetica/projective.py
"""Pontos racionais de P^N em forma canônica e a estrutura multiplicativa coordenada a coordenada."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exceptions import DomainError
from .number_core import RationalLike, as_rational

_POINT_RE = re.compile(r"^\s*\[(.*)\]\s*$")


def _canonical(coords: Sequence[int]) -> tuple[int, ...]:
    g = math.gcd(*coords)
    if g == 0:
        raise DomainError("todas as coordenadas são nulas", code="zero_input")
    lead = next(c for c in coords if c)
    if lead < 0:
        g = -g
    return tuple(c // g for c in coords)


@dataclass(frozen=True)
class ProjectivePoint:
    """[a_0:...:a_N] com inteiros coprimos e primeira coordenada não nula positiva.

    A igualdade estrutural é a igualdade de pontos.
    """

    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) < 2:
            raise DomainError("ponto projetivo precisa de N+1 ≥ 2 coordenadas", code="dimension_mismatch")
        if _canonical(self.coords) != tuple(self.coords):
            raise DomainError(f"coordenadas fora da forma canônica: {list(self.coords)}", code="not_canonical")

    @property
    def dimension(self) -> int:
        return len(self.coords) - 1

    @property
    def is_zero_free(self) -> bool:
        return all(self.coords)

    def zero_pattern(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coords) if c == 0)

    @classmethod
    def parse(cls, text: str) -> "ProjectivePoint":
        """Lê '[a0:a1:...:aN]'; entradas racionais são normalizadas."""
        m = _POINT_RE.match(str(text))
        if not m:
            raise DomainError(f"ponto inválido: {text!r} (use [a0:a1:...])", code="bad_point")
        parts = [p.strip() for p in m.group(1).split(":")]
        return normalize([as_rational(p) for p in parts])

    def __str__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


def normalize(raw: Iterable[RationalLike]) -> ProjectivePoint:
    """Representante canônico da classe homogênea: limpa denominadores, divide pelo mdc, fixa o sinal."""
    values = [as_rational(x) for x in raw]
    if not any(values):
        raise DomainError("todas as coordenadas são nulas", code="zero_input")
    den = math.lcm(*(v.denominator for v in values))
    ints = [v.numerator * (den // v.denominator) for v in values]
    return ProjectivePoint(_canonical(ints))


def unit_point(N: int) -> ProjectivePoint:
    return ProjectivePoint((1,) * (N + 1))


def _same_dimension(P: ProjectivePoint, Q: ProjectivePoint) -> None:
    if P.dimension != Q.dimension:
        raise DomainError(
            f"dimensões diferentes: P^{P.dimension} e P^{Q.dimension}", code="dimension_mismatch"
        )


def coord_mul(P: ProjectivePoint, Q: ProjectivePoint) -> ProjectivePoint:
    _same_dimension(P, Q)
    prod = [a * b for a, b in zip(P.coords, Q.coords)]
    if not any(prod):
        raise DomainError(f"produto degenerado: {P}·{Q}", code="degenerate_product")
    return ProjectivePoint(_canonical(prod))


def power(P: ProjectivePoint, r: int, torus: bool = False) -> ProjectivePoint:
    """[a_0^r:...:a_N^r]; r ≤ 0 (ou torus=True) só em pontos sem coordenada nula."""
    r = int(r)
    if (r <= 0 or torus) and not P.is_zero_free:
        raise DomainError(f"potência {r} de {P}: coordenada nula", code="zero_coordinate")
    if r >= 0:
        return ProjectivePoint(_canonical([a ** r for a in P.coords]))
    return normalize(Fraction(1, a ** -r) for a in P.coords)


# =======================
# Toro G_m^N ↪ P^N
# =======================
@dataclass(frozen=True)
class TorusPoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coords:
            raise DomainError("ponto do toro sem coordenadas", code="dimension_mismatch")
        object.__setattr__(self, "coords", tuple(as_rational(c) for c in self.coords))
        if not all(self.coords):
            raise DomainError("ponto do toro com coordenada nula", code="zero_coordinate")

    @classmethod
    def of(cls, *values: RationalLike) -> "TorusPoint":
        return cls(tuple(as_rational(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> "TorusPoint":
        """Lê '4', '(−2/3, 5)' ou '2,3'."""
        body = str(text).strip().strip("()")
        return cls(tuple(as_rational(p) for p in body.split(",") if p.strip()))

    @classmethod
    def one(cls, N: int) -> "TorusPoint":
        return cls((Fraction(1),) * N)

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def __mul__(self, other: "TorusPoint") -> "TorusPoint":
        if self.dimension != other.dimension:
            raise DomainError("dimensões diferentes no toro", code="dimension_mismatch")
        return TorusPoint(tuple(a * b for a, b in zip(self.coords, other.coords)))

    def __pow__(self, r: int) -> "TorusPoint":
        return TorusPoint(tuple(a ** int(r) for a in self.coords))

    def vector_pow(self, rvec: Sequence[int]) -> "TorusPoint":
        if len(rvec) != self.dimension:
            raise DomainError("vetor de expoentes com tamanho errado", code="dimension_mismatch")
        return TorusPoint(tuple(a ** int(r) for a, r in zip(self.coords, rvec)))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


def torus_embed(t: TorusPoint) -> ProjectivePoint:
    """(a_1,...,a_N) ↦ [1:a_1:...:a_N]."""
    return normalize([Fraction(1), *t.coords])


def torus_coords(P: ProjectivePoint) -> TorusPoint:
    if not P.is_zero_free:
        raise DomainError(f"{P} não está no toro", code="zero_coordinate")
    a0 = P.coords[0]
    return TorusPoint(tuple(Fraction(a, a0) for a in P.coords[1:]))


def vector_power(P: ProjectivePoint, rvec: Sequence[int]) -> ProjectivePoint:
    """(a_1,...,a_N)^r⃗ = (a_1^{r_1},...,a_N^{r_N}) via a inclusão padrão."""
    if any(int(r) == 0 for r in rvec):
        raise DomainError("expoentes do vetor devem ser não nulos", code="zero_exponent")
    return torus_embed(torus_coords(P).vector_pow(rvec))
