# aritmetica/polynomials.py
"""Formas homogêneas esparsas com coeficientes inteiros.

Base comum de `Divisor` (heights) e `Endomorphism` (dynamics). A leitura de
texto e os produtos passam pelo `sympy.Poly`; a avaliação é feita à mão com
inteiros do Python para manter a exatidão com coordenadas enormes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import sympy as sp
from sympy import ZZ, Poly
from sympy.polys.polyerrors import BasePolynomialError

from .exceptions import DomainError

Monomial = tuple[int, ...]
Term = tuple[Monomial, int]


def variables(nvars: int) -> tuple[sp.Symbol, ...]:
    return sp.symbols(f"X0:{nvars}")


@dataclass(frozen=True)
class HomogeneousForm:
    nvars: int
    degree: int
    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        if self.nvars < 1:
            raise DomainError("forma sem variáveis", code="dimension_mismatch")
        if self.degree < 0:
            raise DomainError("grau negativo", code="not_homogeneous")
        seen = set()
        for exps, coef in self.terms:
            if len(exps) != self.nvars:
                raise DomainError(
                    f"monômio {list(exps)} não tem {self.nvars} expoentes", code="dimension_mismatch"
                )
            if any(e < 0 for e in exps):
                raise DomainError(f"expoente negativo em {list(exps)}", code="not_homogeneous")
            if sum(exps) != self.degree:
                raise DomainError(
                    f"monômio {list(exps)} tem grau {sum(exps)}, esperado {self.degree}",
                    code="not_homogeneous",
                )
            if coef == 0 or exps in seen:
                raise DomainError("termos devem ser únicos e não nulos", code="not_homogeneous")
            seen.add(exps)

    # ---------- construção ----------
    @classmethod
    def from_terms(cls, nvars: int, terms: Iterable[tuple[Sequence[int], int]],
                   degree: int | None = None) -> "HomogeneousForm":
        acc: dict[Monomial, int] = {}
        for exps, coef in terms:
            key = tuple(int(e) for e in exps)
            acc[key] = acc.get(key, 0) + int(coef)
        clean = tuple(sorted(((e, c) for e, c in acc.items() if c), reverse=True))
        if degree is None:
            if not clean:
                raise DomainError("forma nula sem grau informado", code="zero_form")
            degree = sum(clean[0][0])
        return cls(nvars=nvars, degree=int(degree), terms=clean)

    @classmethod
    def from_poly(cls, poly: Poly, degree: int | None = None) -> "HomogeneousForm":
        if poly.is_zero:
            return cls.from_terms(len(poly.gens), [], degree)
        if not poly.is_homogeneous:
            raise DomainError(f"forma não homogênea: {poly.as_expr()}", code="not_homogeneous")
        terms = []
        for exps, coef in poly.terms():
            if not coef.is_Integer:
                raise DomainError(f"coeficiente não inteiro: {coef}", code="not_integral")
            terms.append((exps, int(coef)))
        return cls.from_terms(len(poly.gens), terms, degree)

    @classmethod
    def parse(cls, text: str, nvars: int, degree: int | None = None) -> "HomogeneousForm":
        """Lê 'X0**2 + 3*X0*X1' (aceita também x0, x1, ...)."""
        gens = variables(nvars)
        local = {f"X{i}": g for i, g in enumerate(gens)}
        local.update({f"x{i}": g for i, g in enumerate(gens)})
        try:
            expr = sp.parse_expr(str(text).replace("^", "**"), local_dict=local)
            poly = Poly(expr, *gens, domain=ZZ)
        except (sp.SympifyError, BasePolynomialError, SyntaxError, TypeError, ValueError) as exc:
            raise DomainError(f"forma inválida: {text!r}", code="bad_form") from exc
        return cls.from_poly(poly, degree)

    @classmethod
    def from_json(cls, data: Any, nvars: int | None = None) -> "HomogeneousForm":
        """Aceita {"monomials":[{"exps":[...],"coef":c}]} ou uma string."""
        if isinstance(data, str):
            if nvars is None:
                raise DomainError("forma em texto exige a dimensão", code="dimension_mismatch")
            return cls.parse(data, nvars)
        if not isinstance(data, dict) or not isinstance(data.get("monomials"), list):
            raise DomainError("esperado {'monomials': [...]}", code="bad_form")
        terms = []
        for mono in data["monomials"]:
            try:
                terms.append(([int(e) for e in mono["exps"]], int(mono["coef"])))
            except (KeyError, TypeError, ValueError) as exc:
                raise DomainError(f"monômio inválido: {mono!r}", code="bad_form") from exc
        if nvars is None:
            if not terms:
                raise DomainError("forma vazia sem dimensão", code="zero_form")
            nvars = len(terms[0][0])
        return cls.from_terms(nvars, terms, data.get("degree"))

    @classmethod
    def monomial(cls, exps: Sequence[int], coef: int = 1) -> "HomogeneousForm":
        return cls.from_terms(len(exps), [(exps, coef)])

    @classmethod
    def linear(cls, coefs: Sequence[int]) -> "HomogeneousForm":
        n = len(coefs)
        return cls.from_terms(
            n, [(tuple(1 if j == i else 0 for j in range(n)), c) for i, c in enumerate(coefs)], 1
        )

    @classmethod
    def product(cls, forms: Sequence["HomogeneousForm"]) -> "HomogeneousForm":
        if not forms:
            raise DomainError("produto vazio", code="zero_form")
        poly = forms[0].as_poly()
        for f in forms[1:]:
            poly = poly * f.as_poly()
        return cls.from_poly(poly, sum(f.degree for f in forms))

    # ---------- consultas ----------
    def as_poly(self) -> Poly:
        gens = variables(self.nvars)
        return Poly.from_dict({e: c for e, c in self.terms} or {(0,) * self.nvars: 0}, *gens, domain=ZZ)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "monomials": [{"exps": list(e), "coef": c} for e, c in self.terms],
        }

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def n_monomials(self) -> int:
        return len(self.terms)

    @property
    def max_abs_coef(self) -> int:
        return max((abs(c) for _, c in self.terms), default=0)

    def content(self) -> int:
        return math.gcd(*(c for _, c in self.terms)) if self.terms else 0

    def primitive(self) -> "HomogeneousForm":
        g = self.content()
        if g in (0, 1):
            return self
        return HomogeneousForm(self.nvars, self.degree, tuple((e, c // g) for e, c in self.terms))

    def variables_dividing(self) -> tuple[int, ...]:
        """Índices i com X_i dividindo a forma."""
        if not self.terms:
            return ()
        return tuple(i for i in range(self.nvars) if all(e[i] > 0 for e, _ in self.terms))

    def evaluate(self, values: Sequence[int]) -> int:
        if len(values) != self.nvars:
            raise DomainError(
                f"forma em {self.nvars} variáveis avaliada em {len(values)} coordenadas",
                code="dimension_mismatch",
            )
        powers: dict[tuple[int, int], int] = {}
        total = 0
        for exps, coef in self.terms:
            term = coef
            for i, e in enumerate(exps):
                if not e:
                    continue
                key = (i, e)
                if key not in powers:
                    powers[key] = values[i] ** e
                term *= powers[key]
            total += term
        return total

    def evaluate_mod(self, values: Sequence[int], p: int) -> int:
        total = 0
        for exps, coef in self.terms:
            term = coef % p
            for i, e in enumerate(exps):
                if e:
                    term = term * pow(values[i], e, p) % p
            total = (total + term) % p
        return total

    def __str__(self) -> str:
        return str(self.as_poly().as_expr()) if self.terms else "0"
