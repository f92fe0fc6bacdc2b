# aritmetica/experiments.py
"""Varreduras dirigidas por cenário sobre órbitas de semigrupo.

- `scan_theorem1`: pares (φ, ψ) com φ(P)^r = u·ψ(P)^s e |s/r|·deg ψ ≤ c·deg φ.
- `scan_theorem2`: r, s fixos, ponto externo φ(ψ(P)) contra ψ(P), |s/r| ≤ c·deg φ.
- `hyp_scan`: razão de integralidade Σ_{v∉S} λ_v / h(D, ·) ao longo das órbitas.
- `verify_inequality_chain`: livro-razão numérico das desigualdades da prova.

Nada aqui certifica conjuntos excepcionais; os relatórios descrevem o que
foi observado dentro do orçamento e marcam onde o orçamento cortou.
"""
from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Iterator, Sequence

import sympy as sp

from . import conf
from .dynamics import (
    EmpiricalConstants,
    Endomorphism,
    InfiniteWord,
    OrbitBudget,
    OrbitEnumeration,
    OrbitRecord,
    Word,
    canonical_height_estimate,
    estimate_constants,
    evaluate_word,
    growth_upper_bound_holds,
    orbit_enumerate,
)
from .exceptions import BudgetExceeded, DomainError
from .heights import Divisor, PlaceSet, divisor_height, quasi_integral_test, sum_outside_S, weil_height
from .multdep import (
    DependenceConstraint,
    DependenceRelation,
    DependenceResult,
    DependenceStatus,
    GroupGamma,
    VectorDependenceRelation,
    brute_force_dependence,
    gamma_membership,
    solve_dependence,
    solve_vector_dependence,
    verify_relation,
)
from .polynomials import HomogeneousForm
from .projective import ProjectivePoint, TorusPoint, torus_coords

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
RELATION_MODES = ("scalar", "vector")
ORACLES = ("lattice", "brute")
TOLERANCE = 1e-9
CONSTANTS_SAMPLE = 40
VANISHING_MAX_DEGREE = 2
# pontos a mais que monômios na interpolação; o resto só confere
VANISHING_EXTRA_POINTS = 5

FLAG_KEYS = ("max_degree", "max_points", "max_height_nats", "max_level", "max_digits", "max_pairs")
TRUNCATING_FLAGS = ("max_points", "max_height_nats", "max_digits", "max_pairs")
CANONICAL_UNAVAILABLE = "altura canônica indisponível"


def as_fraction(value: Any, code: str = "not_rational") -> Fraction:
    if isinstance(value, bool):
        raise DomainError(f"valor não racional: {value!r}", code=code)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"valor não racional: {value!r}", code=code) from exc


def epsilon_threshold(c) -> Fraction:
    """(1 + c)/2: os teoremas valem com a hipótese para algum ε acima disto."""
    return (1 + as_fraction(c)) / 2


# =======================
# Enumeração de pontos
# =======================
def max_coordinate_for(height_bound_nats: float) -> int:
    if height_bound_nats < 0:
        raise DomainError("cota de altura negativa", code="bad_bound")
    return int(math.floor(math.exp(height_bound_nats) + 1e-9))


def _coordinate_values(H: int) -> list[int]:
    values = [0]
    for k in range(1, H + 1):
        values += [k, -k]
    return values


def enumerate_rational_points(N: int, height_bound_nats: float | None = None, *,
                              max_coordinate: int | None = None) -> Iterator[ProjectivePoint]:
    """Pontos canônicos de P^N com max|a_i| ≤ H, cada um uma vez.

    Ordem lexicográfica com as coordenadas ordenadas como 0, 1, −1, 2, −2, ...
    """
    if N < 1:
        raise DomainError("N deve ser ≥ 1", code="dimension_mismatch")
    if max_coordinate is None:
        if height_bound_nats is None:
            raise DomainError("informe a cota de altura", code="bad_bound")
        H = max_coordinate_for(height_bound_nats)
    else:
        H = int(max_coordinate)
        if H < 1:
            raise DomainError("coordenada máxima deve ser ≥ 1", code="bad_bound")
    for coords in itertools.product(_coordinate_values(H), repeat=N + 1):
        lead = next((c for c in coords if c), 0)
        if lead <= 0 or math.gcd(*coords) != 1:
            continue
        yield ProjectivePoint(coords)


# =======================
# Cenário
# =======================
@dataclass(frozen=True)
class ScenarioConfig:
    generators: tuple[Endomorphism, ...]
    divisor: Divisor
    places: PlaceSet = PlaceSet()
    gamma: GroupGamma | None = None
    c: Fraction = Fraction(1, 2)
    epsilon: Fraction = Fraction(1, 2)
    r: int | None = None
    s: int | None = None
    seeds: tuple[ProjectivePoint, ...] = ()
    seed_max_coordinate: int | None = None
    max_degree: int = 64
    max_points: int = 200
    max_pairs: int | None = None
    max_digits: int | None = None
    relation: str = "scalar"
    oracle: str = "lattice"
    max_exponent: int = 6
    corollary: bool = False
    canonical_tolerance: float = 1e-2
    random_seed: int = 0
    outputs: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise DomainError("lista de geradores vazia", code="no_generators")
        N = gens[0].dimension
        if any(g.dimension != N for g in gens):
            raise DomainError("geradores em dimensões diferentes", code="dimension_mismatch")
        if self.divisor.dimension != N:
            raise DomainError("divisor e geradores em dimensões diferentes", code="dimension_mismatch")
        if self.gamma is None:
            object.__setattr__(self, "gamma", GroupGamma.trivial(N))
        elif self.gamma.dimension != N:
            raise DomainError("Γ e geradores em dimensões diferentes", code="dimension_mismatch")
        c, eps = as_fraction(self.c), as_fraction(self.epsilon)
        if not 0 <= c < 1:
            raise DomainError(f"c = {c} fora de [0, 1)", code="bad_constant")
        if not 0 <= eps < 1:
            raise DomainError(f"ε = {eps} fora de [0, 1)", code="bad_epsilon")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "epsilon", eps)
        if (self.r is None) != (self.s is None) or 0 in (self.r, self.s):
            raise DomainError("r e s fixos vêm juntos e não nulos", code="bad_rs")
        seeds = tuple(self.seeds)
        object.__setattr__(self, "seeds", seeds)
        if any(P.dimension != N for P in seeds):
            raise DomainError("semente fora de P^N", code="dimension_mismatch")
        if not seeds and self.seed_max_coordinate is None:
            raise DomainError("informe sementes ou a cota de altura", code="no_seeds")
        for name in ("max_degree", "max_points", "max_exponent"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} deve ser positivo", code="bad_budget")
        for name in ("max_pairs", "max_digits", "seed_max_coordinate"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise DomainError(f"{name} deve ser positivo", code="bad_budget")
        if self.relation not in RELATION_MODES:
            raise DomainError(f"relação desconhecida: {self.relation}", code="bad_relation")
        if self.oracle not in ORACLES:
            raise DomainError(f"oráculo desconhecido: {self.oracle}", code="bad_oracle")
        if not self.canonical_tolerance > 0:
            raise DomainError("tolerância deve ser positiva", code="bad_tolerance")

    @property
    def dimension(self) -> int:
        return self.generators[0].dimension

    def effective_places(self) -> tuple[PlaceSet, list[int]]:
        """S acrescido dos primos das coordenadas dos geradores de Γ."""
        extra = sorted(p for p in self.gamma.primes() if p not in self.places.primes)
        return self.places.with_primes(extra), extra

    def seed_points(self) -> list[ProjectivePoint]:
        if self.seeds:
            return list(self.seeds)
        return list(enumerate_rational_points(self.dimension, max_coordinate=self.seed_max_coordinate))

    def require_theorem_divisor(self) -> None:
        if not self.divisor.is_coordinate_subdivisor():
            raise DomainError(
                f"{self.divisor} não é subdivisor de (X_0⋯X_N = 0)", code="bad_divisor"
            )

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "dimension": self.dimension,
            "generators": [g.to_json() for g in self.generators],
            "divisor": self.divisor.to_json(),
            "places": self.places.to_json(),
            "gamma": self.gamma.to_json(),
            "c": str(self.c),
            "epsilon": str(self.epsilon),
            "r": self.r,
            "s": self.s,
            "seeds": [str(P) for P in self.seeds],
            "seed_max_coordinate": self.seed_max_coordinate,
            "max_degree": self.max_degree,
            "max_points": self.max_points,
            "max_pairs": self.max_pairs,
            "max_digits": self.max_digits,
            "relation": self.relation,
            "oracle": self.oracle,
            "max_exponent": self.max_exponent,
            "corollary": self.corollary,
            "canonical_tolerance": self.canonical_tolerance,
            "random_seed": self.random_seed,
        }


# =======================
# Acertos e relatórios
# =======================
@dataclass(frozen=True)
class Hit:
    theorem: int
    seed: ProjectivePoint
    phi: Word
    psi: Word
    deg_phi: int
    deg_psi: int
    point_phi: ProjectivePoint
    point_psi: ProjectivePoint
    relation: DependenceRelation | VectorDependenceRelation
    ratio: Fraction
    height_nats: float
    integrality_ratio: float | None
    extra: dict = field(default_factory=dict, compare=False)
    ledger: tuple = ()

    @property
    def key(self) -> tuple:
        return (self.seed.coords, self.phi.indices, self.psi.indices)

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem,
            "seed": str(self.seed),
            "word_phi": str(self.phi),
            "word_psi": str(self.psi),
            "deg_phi": self.deg_phi,
            "deg_psi": self.deg_psi,
            "point_phi": self.point_phi.to_json(),
            "point_psi": self.point_psi.to_json(),
            "relation": self.relation.to_json(),
            "ratio": str(self.ratio),
            "height_nats": self.height_nats,
            "integrality_ratio": self.integrality_ratio,
        }
        out.update(self.extra)
        if self.ledger:
            out["ledger"] = [step.to_json() for step in self.ledger]
        return out

    def csv_row(self) -> dict:
        rel = self.relation
        if isinstance(rel, VectorDependenceRelation):
            r, s = " ".join(map(str, rel.rvec)), " ".join(map(str, rel.svec))
        else:
            r, s = rel.r, rel.s
        return {
            "seed": str(self.seed),
            "word_phi": str(self.phi),
            "word_psi": str(self.psi),
            "deg_phi": self.deg_phi,
            "deg_psi": self.deg_psi,
            "r": r,
            "s": s,
            "ratio": float(self.ratio),
            "height_nats": self.height_nats,
            "integrality_ratio": self.integrality_ratio,
        }


@dataclass
class ScanReport:
    kind: str
    config: dict
    hits: list[Hit] = field(default_factory=list)
    points: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def budget_exhausted(self) -> bool:
        return bool(self.flags.get("budget_exhausted"))

    def hit_keys(self) -> set[tuple]:
        return {h.key for h in self.hits}

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "kind": self.kind,
            "config": self.config,
            "hits": [h.to_json() for h in self.hits],
            "summary": self.summary,
            "constants": self.constants,
            "flags": self.flags,
            "notes": self.notes,
        }
        if self.points:
            out["points"] = self.points
        return out


@dataclass
class _ScanState:
    max_pairs: int | None
    pairs: int = 0
    flags: dict = field(default_factory=lambda: {k: False for k in FLAG_KEYS})
    statuses: dict = field(default_factory=dict)

    def take_pair(self) -> bool:
        if self.max_pairs is not None and self.pairs >= self.max_pairs:
            self.flags["max_pairs"] = True
            return False
        self.pairs += 1
        return True

    @property
    def stopped(self) -> bool:
        return self.flags["max_pairs"]

    def count(self, status: str) -> None:
        self.statuses[status] = self.statuses.get(status, 0) + 1

    def final_flags(self) -> dict:
        flags = dict(self.flags)
        flags["budget_exhausted"] = any(flags[k] for k in TRUNCATING_FLAGS)
        flags["inconclusive"] = self.statuses.get(str(DependenceStatus.NONE_WITHIN_BOUND), 0)
        return flags


def _scan_orbits(config: ScenarioConfig, report: ScanReport,
                 state: _ScanState) -> Iterator[tuple[ProjectivePoint, OrbitEnumeration]]:
    budget = OrbitBudget(config.max_degree, config.max_points)
    for seed in config.seed_points():
        if state.stopped:
            break
        orbit = orbit_enumerate(config.generators, seed, budget)
        for k, v in orbit.exhausted.items():
            state.flags[k] = state.flags.get(k, False) or v
        for word, reason in orbit.skipped:
            report.notes.append(f"{seed} palavra {word}: {reason}")
        yield seed, orbit


def _usable_records(seed: ProjectivePoint, orbit: OrbitEnumeration, D: Divisor,
                    report: ScanReport) -> dict[int, bool]:
    """Registros no toro e fora de |D|; anota cada ponto descartado uma vez."""
    usable = {}
    for rec in orbit:
        reason = None
        if not rec.point.is_zero_free:
            reason = "coordenada nula"
        elif D.contains(rec.point):
            reason = f"no suporte de {D}"
        usable[rec.index] = reason is None
        if reason and not rec.is_duplicate:
            report.notes.append(f"semente {seed} palavra {rec.word}: {rec.point} descartado ({reason})")
    return usable


def _integrality_ratio(D: Divisor, S: PlaceSet, P: ProjectivePoint) -> float | None:
    height = divisor_height(D, P).total()
    if height <= 0:
        return None
    return sum_outside_S(D, S, P) / height


def _relation_ratio(rel, divisor: Divisor) -> Fraction:
    if isinstance(rel, VectorDependenceRelation):
        idx = [i - 1 for i in divisor.coordinate_indices() if i >= 1] or range(len(rel.rvec))
        return max(Fraction(rel.svec[i], rel.rvec[i]) for i in idx)
    return Fraction(abs(rel.s), abs(rel.r))


def build_hit(config: ScenarioConfig, seed: ProjectivePoint, phi: Word, psi: Word,
              relation: DependenceRelation | VectorDependenceRelation, theorem: int = 1,
              extra: dict | None = None) -> Hit:
    """Monta (e confere) um acerto a partir das palavras; no modo 2 o ponto externo é φ(ψ(P))."""
    gens = config.generators
    point_psi = evaluate_word(psi, gens, seed)
    point_phi = evaluate_word(phi, gens, point_psi if theorem == 2 else seed)
    places, _ = config.effective_places()
    q1, q2 = torus_coords(point_phi), torus_coords(point_psi)
    if not verify_relation(q1, q2, relation, config.gamma):
        raise DomainError(f"relação {relation.to_json()} não vale para {phi}, {psi}", code="bad_hit")
    return Hit(
        theorem=theorem,
        seed=seed,
        phi=phi,
        psi=psi,
        deg_phi=phi.degree(gens),
        deg_psi=psi.degree(gens),
        point_phi=point_phi,
        point_psi=point_psi,
        relation=relation,
        ratio=_relation_ratio(relation, config.divisor),
        height_nats=weil_height(point_phi).total(),
        integrality_ratio=_integrality_ratio(config.divisor, places, point_phi),
        extra=extra or {},
    )


# =======================
# Constantes da cadeia
# =======================
@dataclass(frozen=True)
class ChainConstants:
    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    empirical: EmpiricalConstants | None = None

    def to_json(self) -> dict:
        return {
            "C1_hat": self.c1,
            "C2": self.c2,
            "C3": self.c3,
            "C4": self.c4,
            "C5_hat": self.c5,
            "defects": list(self.empirical.defects) if self.empirical else [],
            "sample_size": self.empirical.sample_size if self.empirical else 0,
            "empirical": ["C1_hat", "C5_hat"],
        }


def divisor_constant(D: Divisor) -> float:
    """log(#monômios · max|coef|): Σ_{v∉S} λ_v(D, Q) ≤ h(D, Q) + isto, para todo Q fora de |D|."""
    return math.log(D.form.n_monomials * D.form.max_abs_coef)


def _constants_sample(config: ScenarioConfig, seeds: Sequence[ProjectivePoint]) -> list[ProjectivePoint]:
    if len(seeds) <= CONSTANTS_SAMPLE:
        return list(seeds)
    rng = random.Random(config.random_seed)
    picked = sorted(rng.sample(range(len(seeds)), CONSTANTS_SAMPLE))
    return [seeds[i] for i in picked]


def chain_constants(config: ScenarioConfig, sample: Sequence[ProjectivePoint]) -> ChainConstants:
    c3 = divisor_constant(config.divisor)
    try:
        emp = estimate_constants(config.generators, sample)
    except DomainError as exc:
        logger.warning("constantes empíricas indisponíveis: %s", exc)
        return ChainConstants(0.0, 0.0, c3, c3, 0.0, None)
    return ChainConstants(emp.c1_hat, 0.0, c3, c3, emp.c5_hat, emp)


# =======================
# Livro-razão das desigualdades
# =======================
@dataclass(frozen=True)
class LedgerStep:
    name: str
    lhs: float
    rhs: float
    holds: bool
    slack: float
    tight: bool
    kind: str
    note: str = ""

    @property
    def empirical(self) -> bool:
        return self.kind == "empirical"

    def to_json(self) -> dict:
        return {
            "step": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "slack": self.slack,
            "tight": self.tight,
            "kind": self.kind,
            "empirical": self.empirical,
            "note": self.note,
        }


def _step(name: str, lhs: float, rhs: float, kind: str, holds: bool | None = None,
          note: str = "", tol: float = TOLERANCE) -> LedgerStep:
    scale = max(1.0, abs(lhs), abs(rhs))
    slack = rhs - lhs
    if holds is None:
        holds = slack >= -tol * scale
    return LedgerStep(name, lhs, rhs, holds, slack, abs(slack) <= tol * scale, kind, note)


def _shared_steps(eps: float, q: float, dD: int, out_outer: float, out_inner: float,
                  hD_outer: float, hD_inner: float, h_outer: float, h_inner: float,
                  c: ChainConstants) -> list[LedgerStep]:
    return [
        _step("divisor_height", eps * (dD * h_outer - c.c2), eps * hD_outer, "exact"),
        _step("hypothesis", eps * hD_outer, out_outer, "hypothesis",
              note="falha quando o ponto externo é quase-integral"),
        _step("unit_relation", out_outer, q * out_inner, "bound",
              note="u ∈ Γ não tem valuação fora de S"),
        _step("outside_S_local", q * out_inner, q * (hD_inner + c.c3), "bound"),
        _step("divisor_constant", q * (hD_inner + c.c3), q * (dD * h_inner + c.c4), "exact"),
    ]


def verify_inequality_chain(config: ScenarioConfig, hit: Hit,
                            constants: ChainConstants | None = None) -> list[LedgerStep]:
    """Avalia cada passo da cadeia para o acerto e marca os passos justos."""
    D = config.divisor
    places, _ = config.effective_places()
    if constants is None:
        constants = chain_constants(config, [hit.seed])
    c = constants
    eps, cc = float(config.epsilon), float(config.c)
    q = float(abs(hit.ratio))
    dD = D.degree
    outer, inner = hit.point_phi, hit.point_psi
    h_outer, h_inner = weil_height(outer).total(), weil_height(inner).total()
    hD_outer, hD_inner = divisor_height(D, outer).total(), divisor_height(D, inner).total()
    out_outer, out_inner = sum_outside_S(D, places, outer), sum_outside_S(D, places, inner)
    threshold = float(epsilon_threshold(config.c))
    shared = _shared_steps(eps, q, dD, out_outer, out_inner, hD_outer, hD_inner, h_outer, h_inner, c)
    threshold_step = _step("epsilon_threshold", threshold, eps, "hypothesis",
                           note="ε ≥ (1+c)/2 exigido pelos teoremas")

    if hit.theorem == 1:
        hP = weil_height(hit.seed).total()
        dphi, dpsi = hit.deg_phi, hit.deg_psi
        lhs_final = dD * (eps * dphi - q * dpsi) * hP
        rhs_final = eps * (dD * dphi * c.c1 + c.c2) + q * (dD * dpsi * c.c1 + c.c4)
        lhs_dich = dD * (1 - cc) / 2 * dphi
        rhs_dich = eps * c.c2 + q * c.c4
        steps = [
            _step("growth_lower", eps * (dD * (dphi * hP - dphi * c.c1) - c.c2),
                  eps * (dD * h_outer - c.c2), "empirical"),
            *shared,
            _step("growth_upper", q * (dD * h_inner + c.c4),
                  q * (dD * (dpsi * hP + dpsi * c.c1) + c.c4), "empirical"),
            _step("final_height", lhs_final, rhs_final, "empirical"),
            _step("dichotomy", lhs_dich, rhs_dich, "empirical",
                  holds=hP <= c.c1 + 1 or lhs_dich < rhs_dich,
                  note="h(P) ≤ C1 + 1 ou deg D·(1−c)/2·deg φ < ε·C2 + |s/r|·C4"),
            threshold_step,
        ]
        return steps

    # r, s fixos: alturas canônicas ao longo de φ∘φ∘⋯
    dphi = hit.deg_phi
    if hit.phi.is_identity:
        return [*shared, threshold_step]
    gamma = InfiniteWord((), tuple(reversed(hit.phi.indices)))
    try:
        est_in = canonical_height_estimate(gamma, config.generators, inner, config.canonical_tolerance)
        est_out = canonical_height_estimate(gamma, config.generators, outer, config.canonical_tolerance)
    except (BudgetExceeded, DomainError) as exc:
        note = f"{CANONICAL_UNAVAILABLE}: {exc}"
        logger.warning("livro-razão de %s: %s", hit.phi, note)
        return [*shared, threshold_step, _step("canonical_scaling", 0.0, 0.0, "empirical", holds=False, note=note)]
    hc_in, hc_out = est_in.value, est_out.value
    scaling_lhs = eps * (dD * (dphi * hc_in - c.c5) - c.c2)
    scaling_rhs = eps * (dD * (hc_out - c.c5) - c.c2)
    scaling_err = eps * dD * (dphi * est_in.error_bound + est_out.error_bound)
    return [
        _step("canonical_scaling", scaling_lhs, scaling_rhs, "empirical",
              holds=abs(scaling_lhs - scaling_rhs) <= scaling_err + TOLERANCE * max(1.0, abs(scaling_rhs)),
              note=f"igualdade a menos de {scaling_err:.3g}"),
        _step("canonical_lower", scaling_rhs, eps * (dD * h_outer - c.c2), "empirical"),
        *shared,
        _step("canonical_upper", q * (dD * h_inner + c.c4), q * (dD * (hc_in + c.c5) + c.c4), "empirical"),
        _step("canonical_final", dD * (eps * dphi - q) * hc_in,
              eps * (dD * c.c5 + c.c2) + q * (dD * c.c5 + c.c4), "empirical"),
        threshold_step,
    ]


# =======================
# Varreduras
# =======================
def _solve(config: ScenarioConfig, q1: TorusPoint, q2: TorusPoint, constraint: DependenceConstraint,
           cache: dict) -> DependenceResult:
    key = (q1, q2, constraint)
    if key not in cache:
        if config.relation == "vector":
            cache[key] = solve_vector_dependence(q1, q2, config.gamma, constraint)
        elif config.oracle == "brute":
            cache[key] = brute_force_dependence(q1, q2, config.gamma, config.max_exponent,
                                                constraint.ratio_bound)
        else:
            cache[key] = solve_dependence(q1, q2, config.gamma, constraint)
    return cache[key]


def _start_report(kind: str, config: ScenarioConfig) -> tuple[ScanReport, PlaceSet, list[ProjectivePoint], ChainConstants]:
    places, added = config.effective_places()
    report = ScanReport(kind, config.to_json())
    if added:
        report.notes.append(f"S estendido com os primos de Γ: {added}")
    seeds = config.seed_points()
    constants = chain_constants(config, _constants_sample(config, seeds))
    report.constants = {
        **constants.to_json(),
        "epsilon_threshold": str(epsilon_threshold(config.c)),
        "epsilon_meets_threshold": config.epsilon >= epsilon_threshold(config.c),
        "places": places.to_json(),
    }
    return report, places, seeds, constants


def _finish(report: ScanReport, state: _ScanState, seeds: int) -> ScanReport:
    report.flags = state.final_flags()
    if not report.hits and any(report.flags.get(name) for name in FLAG_KEYS):
        report.notes.append("nenhum acerto dentro dos orçamentos; vazio não distingue teorema de limite")
    hit_seeds = sorted({h.seed for h in report.hits}, key=lambda P: P.coords)
    report.summary.update({
        "seeds": seeds,
        "pairs_tested": state.pairs,
        "statuses": dict(sorted(state.statuses.items())),
        "hits": len(report.hits),
        "seeds_with_hits": [str(P) for P in hit_seeds],
        "distinct_hit_points": len({h.point_phi for h in report.hits}),
    })
    logger.info(
        "%s: %d sementes, %d pares, %d acertos%s",
        report.kind, seeds, state.pairs, len(report.hits),
        " (orçamento esgotado)" if report.budget_exhausted else "",
    )
    return report


def scan_theorem1(config: ScenarioConfig) -> ScanReport:
    """φ(P)^r = u·ψ(P)^s com φ ≠ id, u ∈ Γ e |s/r|·deg ψ ≤ c·deg φ."""
    config.require_theorem_divisor()
    with conf.override(MAX_DIGITS=config.max_digits):
        report, places, seeds, constants = _start_report("scan-t1", config)
        state = _ScanState(config.max_pairs)
        cache: dict = {}
        divisor_indices = tuple(i for i in config.divisor.coordinate_indices() if i >= 1)
        for seed, orbit in _scan_orbits(config, report, state):
            usable = _usable_records(seed, orbit, config.divisor, report)
            records = [rec for rec in orbit if usable[rec.index]]
            for outer in records:
                if outer.word.is_identity or state.stopped:
                    continue
                for inner in records:
                    if not state.take_pair():
                        break
                    bound = config.c * outer.degree / inner.degree
                    constraint = DependenceConstraint(
                        ratio_bound=bound,
                        divisor_indices=divisor_indices if config.relation == "vector" else (),
                    )
                    q1, q2 = torus_coords(outer.point), torus_coords(inner.point)
                    result = _solve(config, q1, q2, constraint, cache)
                    state.count(str(result.status))
                    if not result.found:
                        continue
                    _record_hit(report, config, seed, outer.word, inner.word, result.relation, 1,
                                bound, constants)
        return _finish(report, state, len(seeds))


def _record_hit(report: ScanReport, config: ScenarioConfig, seed: ProjectivePoint, phi: Word, psi: Word,
                relation, theorem: int, bound: Fraction, constants: ChainConstants,
                extra: dict | None = None) -> None:
    try:
        hit = build_hit(config, seed, phi, psi, relation, theorem, extra)
    except DomainError as exc:
        logger.error("acerto descartado na reverificação: %s", exc)
        report.notes.append(f"acerto descartado: {exc}")
        return
    if hit.ratio > bound:
        logger.error("acerto %s/%s fora da cota de razão %s", phi, psi, bound)
        return
    hit = replace(hit, ledger=tuple(verify_inequality_chain(config, hit, constants)))
    for step in hit.ledger:
        if step.note.startswith(CANONICAL_UNAVAILABLE):
            report.notes.append(f"{seed} {phi}/{psi}: {step.note}")
    report.hits.append(hit)


def _ancestors(orbit: OrbitEnumeration, rec: OrbitRecord) -> Iterator[OrbitRecord]:
    """Registros cujas palavras são sufixos próprios da palavra de `rec` (o pai, o avô, ...)."""
    parent = rec.parent
    while parent is not None:
        anc = orbit.records[parent]
        yield anc
        parent = anc.parent


def scan_theorem2(config: ScenarioConfig) -> ScanReport:
    """(φ(ψ(P)))^r = u·ψ(P)^s com r, s fixos, u ∈ Γ e |s/r| ≤ c·deg φ; só verificação."""
    if config.r is None:
        raise DomainError("varredura com r, s fixos exige r e s", code="bad_rs")
    config.require_theorem_divisor()
    if config.corollary and len(config.generators) != 1:
        raise DomainError("modo de iterados exige um único gerador", code="corollary_single_map")
    r, s = config.r, config.s
    ratio = Fraction(abs(s), abs(r))
    with conf.override(MAX_DIGITS=config.max_digits):
        report, places, seeds, constants = _start_report("scan-t2", config)
        state = _ScanState(config.max_pairs)
        membership: dict[TorusPoint, tuple[int, ...] | None] = {}
        excluded = 0
        for seed, orbit in _scan_orbits(config, report, state):
            usable = _usable_records(seed, orbit, config.divisor, report)
            for outer in orbit:
                if outer.word.is_identity or not usable[outer.index] or state.stopped:
                    continue
                for inner in _ancestors(orbit, outer):
                    if not usable[inner.index]:
                        continue
                    if not state.take_pair():
                        break
                    deg_phi = outer.degree // inner.degree
                    bound = config.c * deg_phi
                    q1, q2 = torus_coords(outer.point), torus_coords(inner.point)
                    t = TorusPoint(tuple(a ** r / b ** s for a, b in zip(q1.coords, q2.coords)))
                    if t not in membership:
                        membership[t] = gamma_membership(t, config.gamma)
                    e = membership[t]
                    if e is None:
                        state.count(str(DependenceStatus.NONE))
                        continue
                    state.count(str(DependenceStatus.FOUND))
                    if ratio > bound:
                        excluded += 1
                        continue
                    phi = Word(outer.word.indices[: len(outer.word) - len(inner.word)])
                    extra = None
                    if config.corollary:
                        n, m = len(outer.word), len(inner.word)
                        d = config.generators[0].degree
                        extra = {
                            "n": n,
                            "m": m,
                            "log_ratio_over_log_d": math.log(ratio) / math.log(d),
                            "iterate_condition": abs(s) <= abs(r) * d ** (n - m),
                        }
                    relation = DependenceRelation(r, s, e, config.gamma.element(e))
                    _record_hit(report, config, seed, phi, inner.word, relation, 2, bound, constants, extra)
        report.summary["ratio_excluded"] = excluded
        return _finish(report, state, len(seeds))


# =======================
# Hipótese de quase-integralidade
# =======================
def _monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    return sorted((m for m in itertools.product(range(degree + 1), repeat=nvars) if sum(m) == degree),
                  reverse=True)


def vanishing_forms(points: Sequence[ProjectivePoint], max_degree: int = VANISHING_MAX_DEGREE) -> dict:
    """Formas de menor grau (≤ max_degree) que se anulam em todos os pontos; descrição candidata."""
    pts = list(dict.fromkeys(points))
    if not pts:
        return {"degree": None, "forms": [], "underdetermined": False, "points": 0}
    nvars = len(pts[0].coords)
    for degree in range(1, max_degree + 1):
        monos = _monomials(nvars, degree)
        rows = [[math.prod(a ** e for a, e in zip(P.coords, m)) for m in monos]
                for P in pts[: len(monos) + VANISHING_EXTRA_POINTS]]
        forms = []
        for vec in sp.Matrix(rows).nullspace():
            den = sp.ilcm(*[sp.fraction(x)[1] for x in vec])
            terms = [(m, int(x * den)) for m, x in zip(monos, vec)]
            form = HomogeneousForm.from_terms(nvars, terms, degree).primitive()
            if all(form.evaluate(P.coords) == 0 for P in pts):
                forms.append(form)
        if forms:
            return {
                "degree": degree,
                "forms": [str(f) for f in forms],
                "underdetermined": len(pts) < len(monos),
                "points": len(pts),
            }
    return {"degree": None, "forms": [], "underdetermined": False, "points": len(pts)}


def hyp_scan(config: ScenarioConfig) -> ScanReport:
    """Razão Σ_{v∉S} λ_v(D, Q)/h(D, Q) nos pontos das órbitas; marca os quase-integrais (razão < ε)."""
    with conf.override(MAX_DIGITS=config.max_digits):
        report, places, seeds, _ = _start_report("hyp-scan", config)
        state = _ScanState(config.max_pairs)
        flagged: list[ProjectivePoint] = []
        ratios: list[float] = []
        for seed, orbit in _scan_orbits(config, report, state):
            for rec in orbit:
                if rec.is_duplicate:
                    continue
                P = rec.point
                if config.divisor.contains(P):
                    report.notes.append(f"semente {seed} palavra {rec.word}: {P} no suporte de D")
                    continue
                try:
                    test = quasi_integral_test(config.divisor, places, P, config.epsilon)
                except DomainError as exc:
                    report.notes.append(f"semente {seed} palavra {rec.word}: {exc}")
                    continue
                ratios.append(test.ratio)
                report.points.append({
                    "seed": str(seed),
                    "word": str(rec.word),
                    "point": P.to_json(),
                    **test.to_json(),
                })
                if test.quasi_integral:
                    flagged.append(P)
        patterns: dict[tuple[int, ...], list[ProjectivePoint]] = {}
        for P in flagged:
            patterns.setdefault(P.zero_pattern(), []).append(P)
        report.summary.update({
            "points": len(report.points),
            "flagged": len(flagged),
            "ratio_min": min(ratios, default=None),
            "ratio_max": max(ratios, default=None),
            "zero_patterns": [
                {"pattern": list(k), "count": len(v), "vanishing": vanishing_forms(v)}
                for k, v in sorted(patterns.items())
            ],
            "vanishing": vanishing_forms(flagged),
            "certified": False,
        })
        return _finish(report, state, len(seeds))


def run_constants(config: ScenarioConfig) -> ScanReport:
    """Constantes empíricas da amostra de sementes e conferência da cota superior de crescimento."""
    with conf.override(MAX_DIGITS=config.max_digits):
        report, places, seeds, constants = _start_report("constants", config)
        sample = _constants_sample(config, seeds)
        violations = []
        for Q in sample:
            for i, g in enumerate(config.generators, start=1):
                try:
                    if not growth_upper_bound_holds(g, Q):
                        violations.append(f"{Q} sob φ_{i}")
                except DomainError as exc:
                    report.notes.append(f"{Q} sob φ_{i}: {exc}")
        report.summary.update({"sample": [str(Q) for Q in sample], "growth_bound_violations": violations})
        report.flags = _ScanState(None).final_flags()
        return report


# =======================
# Reprodução
# =======================
def _relation_from_json(data: dict) -> DependenceRelation | VectorDependenceRelation:
    unit = TorusPoint(tuple(as_fraction(x) for x in data["u"]))
    e = tuple(int(x) for x in data["gamma_exponents"])
    if isinstance(data["r"], list):
        return VectorDependenceRelation(tuple(map(int, data["r"])), tuple(map(int, data["s"])), e, unit)
    return DependenceRelation(int(data["r"]), int(data["s"]), e, unit)


def replay_hits(config: ScenarioConfig, report: dict) -> list[str]:
    """Refaz cada acerto do relatório a partir do cenário; devolve as divergências."""
    problems = []
    with conf.override(MAX_DIGITS=config.max_digits):
        for data in report.get("hits", []):
            label = f"{data['seed']} {data['word_phi']}/{data['word_psi']}"
            try:
                seed = ProjectivePoint.parse(data["seed"])
                phi, psi = Word.parse(data["word_phi"]), Word.parse(data["word_psi"])
                hit = build_hit(config, seed, phi, psi, _relation_from_json(data["relation"]),
                                int(data.get("theorem", 1)))
            except (DomainError, BudgetExceeded, KeyError) as exc:
                problems.append(f"{label}: {exc}")
                continue
            if hit.point_phi.to_json() != data["point_phi"] or hit.point_psi.to_json() != data["point_psi"]:
                problems.append(f"{label}: pontos diferentes")
    return problems
