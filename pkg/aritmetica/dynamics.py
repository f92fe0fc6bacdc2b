# aritmetica/dynamics.py
"""Endomorfismos de P^N, palavras do semigrupo, órbitas e altura canônica.

Palavras usam índices de geradores a partir de 1 e são lidas como composição:
(i_m, ..., i_1) é φ_{i_m}∘⋯∘φ_{i_1}, aplicada da direita para a esquerda.
Nada é composto simbolicamente; tudo é avaliado ponto a ponto.
"""
from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Iterator, Sequence

import sympy as sp

from . import conf
from .exceptions import BudgetExceeded, DomainError, IndeterminateError
from .heights import Divisor, HeightValue, weil_height
from .number_core import check_digit_budget
from .polynomials import HomogeneousForm
from .projective import ProjectivePoint, normalize

logger = logging.getLogger(__name__)

# estágios extras avaliados depois que a cota de cauda fica abaixo da tolerância
LOOKAHEAD_STAGES = 5
# teto do grau da iterada usada na estimativa empírica de C_5 ao longo de φ_i^∞
C5_MAX_DEGREE = 1024


# =======================
# Endomorfismos
# =======================
@dataclass(frozen=True)
class Endomorphism:
    forms: tuple[HomogeneousForm, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.forms) < 2:
            raise DomainError("endomorfismo precisa de N+1 ≥ 2 formas", code="dimension_mismatch")
        n = len(self.forms)
        if any(f.nvars != n for f in self.forms):
            raise DomainError(f"as {n} formas devem estar em {n} variáveis", code="dimension_mismatch")
        degrees = {f.degree for f in self.forms}
        if len(degrees) != 1:
            raise DomainError(f"graus diferentes entre as formas: {sorted(degrees)}", code="unequal_degrees")
        if self.degree < 2:
            raise DomainError("endomorfismo precisa de grau ≥ 2", code="low_degree")
        if all(f.is_zero for f in self.forms):
            raise DomainError("todas as formas são nulas", code="zero_form")

    @classmethod
    def parse(cls, texts: Sequence[str], label: str = "") -> "Endomorphism":
        n = len(texts)
        return cls(tuple(HomogeneousForm.parse(t, n) for t in texts), label)

    @classmethod
    def from_json(cls, data: Any, label: str = "") -> "Endomorphism":
        if isinstance(data, list):
            data = {"forms": data}
        if not isinstance(data, dict) or not isinstance(data.get("forms"), list):
            raise DomainError("esperado {'forms': [...]}", code="bad_map")
        raw = data["forms"]
        n = len(raw)
        # formas nulas ("0" ou sem monômios) herdam o grau das demais
        parsed = [None if _is_zero_raw(f) else HomogeneousForm.from_json(f, n) for f in raw]
        degree = next((f.degree for f in parsed if f is not None), None)
        if degree is None:
            raise DomainError("todas as formas são nulas", code="zero_form")
        forms = [HomogeneousForm(n, degree, ()) if f is None else f for f in parsed]
        return cls(tuple(forms), str(data.get("label", label)))

    @property
    def dimension(self) -> int:
        return len(self.forms) - 1

    @property
    def degree(self) -> int:
        return self.forms[0].degree

    def growth_constant(self) -> int:
        """max_i #monômios(F_i)·max|coef(F_i)|: |F_i(a)| ≤ isto·max|a_j|^d."""
        return max(f.n_monomials * f.max_abs_coef for f in self.forms)

    def to_json(self) -> dict:
        return {"label": self.label, "forms": [f.to_json() for f in self.forms]}

    def __str__(self) -> str:
        body = "[" + " : ".join(str(f) for f in self.forms) + "]"
        return f"{self.label} = {body}" if self.label else body


def _is_zero_raw(raw: Any) -> bool:
    if isinstance(raw, str):
        return raw.strip() == "0"
    return isinstance(raw, dict) and raw.get("monomials") == []


def evaluate(phi: Endomorphism, P: ProjectivePoint) -> ProjectivePoint:
    if P.dimension != phi.dimension:
        raise DomainError(
            f"mapa em P^{phi.dimension} aplicado a ponto de P^{P.dimension}", code="dimension_mismatch"
        )
    values = [f.evaluate(P.coords) for f in phi.forms]
    if not any(values):
        raise IndeterminateError(f"{phi.label or 'φ'} indeterminado em {P}")
    check_digit_budget(max(abs(v) for v in values), "coordenada da imagem")
    return normalize(values)


@dataclass(frozen=True)
class Word:
    """Palavra no semigrupo; a vazia é a identidade."""

    indices: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if any(i < 1 for i in self.indices):
            raise DomainError("índices de gerador começam em 1", code="bad_word")

    @classmethod
    def parse(cls, text: str) -> "Word":
        body = str(text).strip().strip("()[]")
        if body in ("", "id"):
            return cls()
        return cls(tuple(int(p) for p in body.replace("·", ",").split(",") if p.strip()))

    def __mul__(self, other: "Word") -> "Word":
        """w1·w2 = w1∘w2."""
        return Word(self.indices + other.indices)

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def is_identity(self) -> bool:
        return not self.indices

    def check(self, generators: Sequence[Endomorphism]) -> None:
        if any(i > len(generators) for i in self.indices):
            raise DomainError(f"palavra {self} usa gerador inexistente", code="bad_word")

    def degree(self, generators: Sequence[Endomorphism]) -> int:
        self.check(generators)
        return math.prod(generators[i - 1].degree for i in self.indices)

    def to_json(self) -> list[int]:
        return list(self.indices)

    def __str__(self) -> str:
        return "id" if self.is_identity else "·".join(str(i) for i in self.indices)


def evaluate_word(w: Word, generators: Sequence[Endomorphism], P: ProjectivePoint) -> ProjectivePoint:
    w.check(generators)
    Q = P
    n = len(w)
    for step, idx in enumerate(reversed(w.indices), start=1):
        try:
            Q = evaluate(generators[idx - 1], Q)
        except IndeterminateError as exc:
            prefix = w.indices[n - step:]
            raise IndeterminateError(
                f"palavra {w}: indeterminação no passo {step} (subpalavra {Word(prefix)}): {exc}",
                prefix=prefix,
                stage=step,
            ) from exc
    return Q


# =======================
# Órbitas
# =======================
@dataclass(frozen=True)
class OrbitBudget:
    max_degree: int
    max_points: int
    max_height_nats: float = math.inf
    max_level: int | None = None

    def __post_init__(self):
        if self.max_degree < 1 or self.max_points < 1 or not self.max_height_nats > 0:
            raise DomainError("orçamentos da órbita devem ser positivos", code="bad_budget")
        if self.max_level is not None and self.max_level < 0:
            raise DomainError("nível máximo negativo", code="bad_budget")


@dataclass(frozen=True)
class OrbitRecord:
    index: int
    word: Word
    point: ProjectivePoint
    height: HeightValue
    parent: int | None
    level: int
    degree: int
    first_index: int

    @property
    def is_duplicate(self) -> bool:
        return self.first_index != self.index


@dataclass
class OrbitEnumeration:
    seed: ProjectivePoint
    records: list[OrbitRecord] = field(default_factory=list)
    skipped: list[tuple[Word, str]] = field(default_factory=list)
    exhausted: dict[str, bool] = field(default_factory=lambda: {
        "max_degree": False, "max_points": False, "max_height_nats": False,
        "max_level": False, "max_digits": False,
    })

    def __iter__(self) -> Iterator[OrbitRecord]:
        return iter(self.records)

    @property
    def truncated(self) -> bool:
        """Esgotamento que pode ter escondido pares da varredura."""
        return any(self.exhausted[k] for k in ("max_points", "max_height_nats", "max_digits"))

    def points(self) -> dict[ProjectivePoint, list[Word]]:
        out: dict[ProjectivePoint, list[Word]] = {}
        for rec in self.records:
            out.setdefault(rec.point, []).append(rec.word)
        return out


def orbit_enumerate(generators: Sequence[Endomorphism], seed: ProjectivePoint,
                    budget: OrbitBudget) -> OrbitEnumeration:
    """BFS por comprimento de palavra; dentro do nível, ordem do pai e depois índice do gerador.

    Pontos repetidos são registrados uma vez como ponto (first_index) e todas
    as palavras ficam nos registros.
    """
    if not generators:
        raise DomainError("lista de geradores vazia", code="no_generators")
    if any(g.dimension != seed.dimension for g in generators):
        raise DomainError("geradores e semente em dimensões diferentes", code="dimension_mismatch")

    result = OrbitEnumeration(seed)
    first_seen: dict[ProjectivePoint, int] = {}

    def push(word, point, parent, level, degree) -> OrbitRecord | None:
        height = weil_height(point)
        if height.total() > budget.max_height_nats:
            result.exhausted["max_height_nats"] = True
            return None
        if point not in first_seen:
            if len(first_seen) >= budget.max_points:
                result.exhausted["max_points"] = True
                return None
            first_seen[point] = len(result.records)
        rec = OrbitRecord(len(result.records), word, point, height, parent, level, degree, first_seen[point])
        result.records.append(rec)
        return rec

    frontier = [push(Word(), seed, None, 0, 1)]
    frontier = [r for r in frontier if r is not None]
    level = 0
    while frontier and not result.exhausted["max_points"]:
        if budget.max_level is not None and level >= budget.max_level:
            result.exhausted["max_level"] = True
            break
        level += 1
        nxt: list[OrbitRecord] = []
        for parent in frontier:
            for gi, g in enumerate(generators, start=1):
                degree = parent.degree * g.degree
                if degree > budget.max_degree:
                    result.exhausted["max_degree"] = True
                    continue
                word = Word((gi,)) * parent.word
                try:
                    image = evaluate(g, parent.point)
                except IndeterminateError as exc:
                    logger.warning("registro pulado: palavra %s: %s", word, exc)
                    result.skipped.append((word, str(exc)))
                    continue
                except BudgetExceeded as exc:
                    logger.warning("registro pulado por orçamento: palavra %s: %s", word, exc)
                    result.exhausted["max_digits"] = True
                    result.skipped.append((word, str(exc)))
                    continue
                rec = push(word, image, parent.index, level, degree)
                if rec is not None:
                    nxt.append(rec)
                if result.exhausted["max_points"]:
                    break
            if result.exhausted["max_points"]:
                break
        frontier = nxt
    logger.info(
        "órbita de %s: %d palavras, %d pontos distintos",
        seed, len(result.records), len(first_seen),
    )
    return result


# =======================
# Altura canônica
# =======================
@dataclass(frozen=True)
class InfiniteWord:
    """γ = γ_1, γ_2, ...: pré-período seguido do período repetido."""

    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = (1,)

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(int(i) for i in self.preperiod))
        object.__setattr__(self, "period", tuple(int(i) for i in self.period))
        if not self.period:
            raise DomainError("período vazio", code="bad_word")
        if any(i < 1 for i in self.preperiod + self.period):
            raise DomainError("índices de gerador começam em 1", code="bad_word")

    @classmethod
    def parse(cls, text: str) -> "InfiniteWord":
        """'1,2' (período) ou '3|1,2' (pré-período | período)."""
        pre, _, per = str(text).rpartition("|")

        def as_tuple(s: str) -> tuple[int, ...]:
            return tuple(int(p) for p in s.split(",") if p.strip())

        return cls(as_tuple(pre), as_tuple(per))

    def at(self, k: int) -> int:
        """γ_k, k ≥ 1."""
        if k <= len(self.preperiod):
            return self.preperiod[k - 1]
        return self.period[(k - len(self.preperiod) - 1) % len(self.period)]

    def indices(self) -> set[int]:
        return set(self.preperiod) | set(self.period)

    def to_json(self) -> dict:
        return {"preperiod": list(self.preperiod), "period": list(self.period)}

    def __str__(self) -> str:
        per = ",".join(map(str, self.period))
        return f"{','.join(map(str, self.preperiod))}|({per})^∞" if self.preperiod else f"({per})^∞"


def _trajectory(gamma: InfiniteWord, generators: Sequence[Endomorphism], P: ProjectivePoint) -> Iterator[tuple[int, ProjectivePoint, int]]:
    """(n, γ_n∘⋯∘γ_1(P), deg) para n = 0, 1, 2, ..."""
    Q, deg, n = P, 1, 0
    yield n, Q, deg
    while True:
        n += 1
        g = generators[gamma.at(n) - 1]
        try:
            Q = evaluate(g, Q)
        except IndeterminateError as exc:
            raise IndeterminateError(f"trajetória de {P}: estágio {n}: {exc}", stage=n) from exc
        deg *= g.degree
        yield n, Q, deg


def _check_gamma(gamma: InfiniteWord, generators: Sequence[Endomorphism]) -> None:
    if max(gamma.indices()) > len(generators):
        raise DomainError("palavra infinita usa gerador inexistente", code="bad_word")


def normalized_heights(gamma: InfiniteWord, generators: Sequence[Endomorphism],
                       P: ProjectivePoint, stages: int) -> list[float]:
    """h(γ_n∘⋯∘γ_1(P)) / deg(γ_n∘⋯∘γ_1) para n = 0..stages."""
    _check_gamma(gamma, generators)
    out = []
    for n, Q, deg in _trajectory(gamma, generators, P):
        out.append(weil_height(Q).total() / deg)
        if n >= stages:
            break
    return out


@dataclass(frozen=True)
class CanonicalHeightEstimate:
    value: float
    error_bound: float
    stages: int
    defect: float
    normalized: tuple[float, ...]
    stage_bounds: tuple[float, ...]
    empirical: bool = True

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "error_bound": self.error_bound,
            "stages": self.stages,
            "defect_hat": self.defect,
            "empirical": self.empirical,
        }


def _defect(g: Endomorphism, Q: ProjectivePoint, image: ProjectivePoint) -> float:
    return abs(weil_height(image).total() / g.degree - weil_height(Q).total())


def canonical_height_estimate(gamma: InfiniteWord, generators: Sequence[Endomorphism],
                              P: ProjectivePoint, tolerance: float,
                              sample: Iterable[ProjectivePoint] = (),
                              min_stages: int = 1) -> CanonicalHeightEstimate:
    """ĥ_γ(P) pelo limite das alturas normalizadas.

    Cota de cauda no estágio n: Ĉ/deg_n · d_min/(d_min − 1), com Ĉ o maior
    defeito de um passo observado na amostra e na própria trajetória. A cota
    é condicional a Ĉ (resultado empírico).

    O teto de dígitos aqui é o maior entre MAX_DIGITS e CANONICAL_MAX_DIGITS:
    os estágios pedidos pela tolerância têm coordenadas de ~deg_n·ĥ dígitos.
    """
    cap = max(int(conf.get("MAX_DIGITS")), int(conf.get("CANONICAL_MAX_DIGITS")))
    with conf.override(MAX_DIGITS=cap):
        return _canonical_height_estimate(gamma, generators, P, tolerance, sample, min_stages)


def _canonical_height_estimate(gamma: InfiniteWord, generators: Sequence[Endomorphism],
                               P: ProjectivePoint, tolerance: float,
                               sample: Iterable[ProjectivePoint],
                               min_stages: int) -> CanonicalHeightEstimate:
    if not tolerance > 0:
        raise DomainError("tolerância deve ser positiva", code="bad_tolerance")
    _check_gamma(gamma, generators)
    used = sorted(gamma.indices())
    dmin = min(generators[i - 1].degree for i in used)
    factor = dmin / (dmin - 1)

    c_hat = 0.0
    for Q in sample:
        for i in used:
            g = generators[i - 1]
            try:
                c_hat = max(c_hat, _defect(g, Q, evaluate(g, Q)))
            except IndeterminateError:
                logger.warning("amostra %s indeterminada para %s; ignorada", Q, g.label or i)

    max_stages = int(conf.get("CANONICAL_MAX_STAGES"))
    normalized: list[float] = []
    bounds: list[float] = []
    previous: ProjectivePoint | None = None
    stop_at: int | None = None
    for n, Q, deg in _trajectory(gamma, generators, P):
        if previous is not None:
            c_hat = max(c_hat, _defect(generators[gamma.at(n) - 1], previous, Q))
        previous = Q
        normalized.append(weil_height(Q).total() / deg)
        bounds.append(c_hat / deg * factor)
        if n >= max_stages:
            raise BudgetExceeded(
                f"altura canônica não convergiu em {max_stages} estágios", budget="canonical_stages"
            )
        if n < min_stages:
            continue
        if stop_at is None and bounds[-1] < tolerance:
            stop_at = n
        if stop_at is not None and n >= stop_at + LOOKAHEAD_STAGES:
            # Ĉ pode ter crescido no lookahead: recalcula as cotas
            degs = [1]
            for k in range(1, n + 1):
                degs.append(degs[-1] * generators[gamma.at(k) - 1].degree)
            bounds = [c_hat / d * factor for d in degs]
            if bounds[-1] < tolerance:
                logger.debug("ĥ de %s ao longo de %s: %d estágios, Ĉ=%.3g", P, gamma, n, c_hat)
                return CanonicalHeightEstimate(
                    normalized[-1], bounds[-1], n, c_hat, tuple(normalized), tuple(bounds)
                )
            stop_at = None
    raise AssertionError("trajetória infinita terminou")  # pragma: no cover


# =======================
# Constantes empíricas
# =======================
@dataclass(frozen=True)
class EmpiricalConstants:
    defects: tuple[float, ...]
    c1_hat: float
    c5_hat: float
    sample_size: int
    empirical: bool = True

    def to_json(self) -> dict:
        return {
            "defects": list(self.defects),
            "C1_hat": self.c1_hat,
            "C5_hat": self.c5_hat,
            "sample_size": self.sample_size,
            "label": "cotas inferiores empíricas",
        }


def estimate_constants(generators: Sequence[Endomorphism],
                       sample: Iterable[ProjectivePoint]) -> EmpiricalConstants:
    points = list(sample)
    if not points:
        raise DomainError("amostra vazia", code="empty_sample")
    if not generators:
        raise DomainError("lista de geradores vazia", code="no_generators")
    defects = [0.0] * len(generators)
    c5 = 0.0
    for Q in points:
        hq = weil_height(Q).total()
        for i, g in enumerate(generators):
            try:
                defects[i] = max(defects[i], _defect(g, Q, evaluate(g, Q)))
                n_stages = max(1, int(math.log(C5_MAX_DEGREE) // math.log(g.degree)))
                stages = normalized_heights(InfiniteWord((), (i + 1,)), generators, Q, n_stages)
            except (IndeterminateError, BudgetExceeded) as exc:
                logger.warning("amostra %s ignorada para o gerador %d: %s", Q, i + 1, exc)
                continue
            c5 = max(c5, abs(stages[-1] - hq))
    dmin = min(g.degree for g in generators)
    c1 = max(defects) / (1 - 1 / dmin)
    return EmpiricalConstants(tuple(defects), c1, c5, len(points))


def growth_upper_bound_holds(phi: Endomorphism, Q: ProjectivePoint) -> bool:
    """h(φ(Q)) ≤ d·h(Q) + log(#monômios·max|coef|), conferido em inteiros."""
    image = evaluate(phi, Q)
    top = max(abs(a) for a in Q.coords)
    return max(abs(a) for a in image.coords) <= phi.growth_constant() * top ** phi.degree


# =======================
# Verificação de morfismo por amostragem em F_p
# =======================
@dataclass(frozen=True)
class MorphismCheck:
    status: str  # "likely_morphism" | "likely_non_morphism" | "unchecked"
    common_zeros: dict[int, tuple[tuple[int, ...], ...]]

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "common_zeros": {str(p): [list(z) for z in zs] for p, zs in self.common_zeros.items()},
        }


def _projective_points_mod(N: int, p: int) -> Iterator[tuple[int, ...]]:
    for lead in range(N + 1):
        for tail in itertools.product(range(p), repeat=N - lead):
            yield (0,) * lead + (1,) + tail


def morphism_check(phi: Endomorphism, primes: Sequence[int] | None = None) -> MorphismCheck:
    """Procura zeros comuns das formas sobre F_p (N ≤ 2).

    Zero comum em todo primo testado sinaliza provável não-morfismo; primos de
    má redução sozinhos não reprovam.
    """
    if phi.dimension > 2:
        return MorphismCheck("unchecked", {})
    primes = list(primes or conf.get("MORPHISM_CHECK_PRIMES"))
    zeros: dict[int, tuple[tuple[int, ...], ...]] = {}
    for p in primes:
        found = tuple(
            pt for pt in _projective_points_mod(phi.dimension, p)
            if all(f.evaluate_mod(pt, p) == 0 for f in phi.forms)
        )
        if found:
            zeros[p] = found
    status = "likely_non_morphism" if len(zeros) == len(primes) else "likely_morphism"
    return MorphismCheck(status, zeros)


# =======================
# Mapas de exemplo com formas lineares em posição geral
# =======================
@dataclass(frozen=True)
class ExampleMaps:
    phi1: Endomorphism
    phi2: Endomorphism
    divisor: Divisor
    linear_forms: dict[str, tuple[tuple[int, ...], ...]]
    variant: str
    seed: int
    attempts: int
    morphism: dict[str, str]

    @property
    def generators(self) -> tuple[Endomorphism, Endomorphism]:
        return (self.phi1, self.phi2)

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "seed": self.seed,
            "attempts": self.attempts,
            "generators": [self.phi1.to_json(), self.phi2.to_json()],
            "divisor": self.divisor.to_json(),
            "linear_forms": {k: [list(v) for v in vs] for k, vs in self.linear_forms.items()},
            "morphism": self.morphism,
        }


def in_general_position(linear: Sequence[Sequence[int]]) -> bool:
    """Todo subconjunto de N+1 formas lineares em N+1 variáveis tem determinante não nulo."""
    if not linear:
        return True
    n = len(linear[0])
    if len(linear) < n:
        return sp.Matrix(linear).rank() == len(linear)
    return all(sp.Matrix(sub).det() != 0 for sub in itertools.combinations(linear, n))


def example_hypothesis_margin(N: int, d: int, c) -> float:
    """(d − (N+1))/d − (1+c)/2: positivo quando a primeira construção dispensa a hipótese."""
    return float(Fraction(d - (N + 1), d) - (1 + Fraction(str(c))) / 2)


def _random_linear(rng: random.Random, n: int, span: int = 3) -> tuple[int, ...]:
    while True:
        coefs = tuple(rng.randint(-span, span) for _ in range(n))
        if any(coefs):
            return coefs


def _random_form(rng: random.Random, n: int, d: int, span: int = 2) -> HomogeneousForm:
    monos = [m for m in itertools.product(range(d + 1), repeat=n) if sum(m) == d]
    while True:
        form = HomogeneousForm.from_terms(n, [(m, rng.randint(-span, span)) for m in monos], d)
        if not form.is_zero:
            return form


def _general_linear_family(rng: random.Random, n: int, count: int) -> list[tuple[int, ...]] | None:
    forms: list[tuple[int, ...]] = []
    for _ in range(count * 20):
        cand = _random_linear(rng, n)
        if len(forms) + 1 < n:
            ok = in_general_position(forms + [cand])
        else:
            # só os subconjuntos novos, que contêm o candidato
            ok = all(sp.Matrix([*sub, cand]).det() != 0 for sub in itertools.combinations(forms, n - 1))
        if ok:
            forms.append(cand)
            if len(forms) == count:
                return forms
    return None


def _hyperplane_intersections(groups: Sequence[Sequence[tuple[int, ...]]]) -> Iterator[tuple[int, ...]]:
    """Pontos inteiros ∩ de uma forma linear escolhida em cada grupo (N grupos em N+1 variáveis)."""
    for choice in itertools.product(*groups):
        null = sp.Matrix(choice).nullspace()
        if len(null) != 1:
            continue
        vec = null[0]
        den = sp.ilcm(*[sp.fraction(x)[1] for x in vec])
        yield tuple(int(x * den) for x in vec)


def _factored_morphism(first: HomogeneousForm, groups: Sequence[Sequence[tuple[int, ...]]]) -> bool:
    """Formas 1..N produtos de lineares: zeros comuns são interseções; a primeira não pode anular."""
    return all(first.evaluate(pt) != 0 for pt in _hyperplane_intersections(groups))


def make_example_maps(N: int, d: int, seed: int, variant: str = "linear",
                      e: int | None = None) -> ExampleMaps:
    """Par (φ_1, φ_2) com formas lineares em posição geral, determinístico em `seed`.

    linear:  φ_1 = [F_0:⋯:F_{N−1}:L_1⋯L_d], φ_2 = [G_0:⋯:G_{N−1}:M_1⋯M_d], D = (X_N = 0), d > N+1.
    product: φ_1 = [X_1⋯X_N·F_0:F_1:⋯:F_N], φ_2 = [G_0:⋯:G_N] com F_i, G_i produtos de
             lineares em posição geral, D = (X_0 = 0), d > N.
    """
    N, d = int(N), int(d)
    e = d if e is None else int(e)
    if N < 1:
        raise DomainError("N deve ser ≥ 1", code="dimension_mismatch")
    if variant == "linear" and d <= N + 1:
        raise DomainError(f"construção exige d > N+1 (d={d}, N={N})", code="bad_example")
    if variant == "product" and (d <= N or e < 2):
        raise DomainError(f"construção produto exige d > N e e ≥ 2 (d={d}, e={e})", code="bad_example")
    if variant not in ("linear", "product"):
        raise DomainError(f"variante desconhecida: {variant}", code="bad_example")

    rng = random.Random(seed)
    retries = int(conf.get("EXAMPLE_MAX_RETRIES"))
    for attempt in range(1, retries + 1):
        built = (_build_linear if variant == "linear" else _build_product)(rng, N, d, e)
        if built is None:
            continue
        phi1, phi2, linear, morphism = built
        if "likely_non_morphism" in morphism.values() or "not_morphism" in morphism.values():
            continue
        divisor = Divisor.coordinate([N] if variant == "linear" else [0], N)
        logger.info("mapas de exemplo (%s, N=%d, d=%d) após %d tentativas", variant, N, d, attempt)
        return ExampleMaps(phi1, phi2, divisor, linear, variant, seed, attempt, morphism)
    raise DomainError(
        f"nenhum par em posição geral após {retries} tentativas", code="generation_failed"
    )


def _morphism_status(phi: Endomorphism, exact: bool | None) -> str:
    if exact is not None:
        return "morphism" if exact else "not_morphism"
    return morphism_check(phi).status


def _build_linear(rng, N, d, e):
    n = N + 1
    L = _general_linear_family(rng, n, d)
    M = _general_linear_family(rng, n, d)
    if L is None or M is None:
        return None
    maps = []
    for label, lin in (("phi1", L), ("phi2", M)):
        last = HomogeneousForm.product([HomogeneousForm.linear(c) for c in lin])
        forms = tuple(_random_form(rng, n, d) for _ in range(N)) + (last,)
        maps.append(Endomorphism(forms, label))
    morphism = {}
    for phi, lin in zip(maps, (L, M)):
        # em P^1 os zeros de L_1⋯L_d são os pontos [−b:a]: conferência exata
        exact = _factored_morphism(phi.forms[0], [lin]) if N == 1 else None
        morphism[phi.label] = _morphism_status(phi, exact)
    return maps[0], maps[1], {"L": tuple(L), "M": tuple(M)}, morphism


def _build_product(rng, N, d, e):
    n = N + 1
    F = _general_linear_family(rng, n, N * d)
    G = _general_linear_family(rng, n, N * e)
    G0 = _general_linear_family(rng, n, e)
    if F is None or G is None or G0 is None:
        return None
    f_groups = [F[i * d:(i + 1) * d] for i in range(N)]
    g_groups = [G[i * e:(i + 1) * e] for i in range(N)]
    coord = HomogeneousForm.monomial(tuple(0 if i == 0 else 1 for i in range(n)))
    first = HomogeneousForm.product([coord, _random_form(rng, n, d - N)])
    phi1 = Endomorphism(
        (first,) + tuple(HomogeneousForm.product([HomogeneousForm.linear(c) for c in grp]) for grp in f_groups),
        "phi1",
    )
    phi2 = Endomorphism(
        (HomogeneousForm.product([HomogeneousForm.linear(c) for c in G0]),)
        + tuple(HomogeneousForm.product([HomogeneousForm.linear(c) for c in grp]) for grp in g_groups),
        "phi2",
    )
    morphism = {
        "phi1": _morphism_status(phi1, _factored_morphism(phi1.forms[0], f_groups)),
        "phi2": _morphism_status(phi2, _factored_morphism(phi2.forms[0], g_groups)),
    }
    return phi1, phi2, {"F": tuple(F), "G": tuple(G), "G0": tuple(G0)}, morphism
