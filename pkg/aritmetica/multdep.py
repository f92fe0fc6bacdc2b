# aritmetica/multdep.py
"""Dependência multiplicativa φ(P)^r = u·ψ(P)^s módulo um grupo finitamente gerado Γ.

As relações viram equações lineares inteiras nos expoentes: uma linha por
(coordenada, elemento de base) e uma linha de paridade por coordenada com
sinal. O núcleo inteiro sai da forma normal de Smith (sympy), é reduzido por
LLL e projetado no plano (r, s), onde a busca da testemunha mínima é exata.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator, Sequence

from django.db import models
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_decomp
from sympy.polys.matrices import DomainMatrix

from . import conf
from .exceptions import DomainError
from .number_core import as_rational, coprime_base, exponent_vector, exponents_over_base
from .projective import TorusPoint

logger = logging.getLogger(__name__)

IntMatrix = list[list[int]]
# teto de combinações na busca de relações vetoriais
VECTOR_SEARCH_CAP = 200_000


# =======================
# Tipos
# =======================
@dataclass(frozen=True)
class GroupGamma:
    dimension: int
    generators: tuple[TorusPoint, ...] = ()

    def __post_init__(self):
        if self.dimension < 1:
            raise DomainError("dimensão do toro deve ser ≥ 1", code="dimension_mismatch")
        for g in self.generators:
            if g.dimension != self.dimension:
                raise DomainError(
                    f"gerador {g} fora de G_m^{self.dimension}", code="dimension_mismatch"
                )

    @classmethod
    def trivial(cls, N: int) -> "GroupGamma":
        return cls(N, ())

    @classmethod
    def from_json(cls, data: Any, N: int) -> "GroupGamma":
        """Lista de geradores, cada um lista de racionais ('3', '-2/5') ou string '(3, 5)'."""
        if data in (None, []):
            return cls.trivial(N)
        gens = []
        for raw in data:
            if isinstance(raw, str):
                gens.append(TorusPoint.parse(raw))
            else:
                gens.append(TorusPoint(tuple(as_rational(str(x)) for x in raw)))
        return cls(N, tuple(gens))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def element(self, exponents: Sequence[int]) -> TorusPoint:
        if len(exponents) != self.rank:
            raise DomainError("vetor de expoentes de Γ com tamanho errado", code="dimension_mismatch")
        u = TorusPoint.one(self.dimension)
        for g, e in zip(self.generators, exponents):
            if e:
                u = u * g ** e
        return u

    def primes(self) -> set[int]:
        """Primos que aparecem em alguma coordenada de algum gerador."""
        out: set[int] = set()
        for g in self.generators:
            for c in g.coords:
                out.update(exponent_vector(c))
        return out

    def to_json(self) -> list[list[str]]:
        return [g.to_json() for g in self.generators]


@dataclass(frozen=True)
class ExponentVector:
    """Sinais (um bit por coordenada) e expoentes primos por (coordenada, primo), coordenadas a partir de 1."""

    dimension: int
    signs: tuple[int, ...]
    exponents: tuple[tuple[tuple[int, int], int], ...] = ()

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.exponents)

    @property
    def is_zero(self) -> bool:
        return not any(self.signs) and not self.exponents


def encode(t: TorusPoint) -> ExponentVector:
    signs = tuple(1 if c < 0 else 0 for c in t.coords)
    exps = []
    for i, c in enumerate(t.coords, start=1):
        for p, e in exponent_vector(c).items():
            exps.append(((i, p), e))
    return ExponentVector(t.dimension, signs, tuple(sorted(exps)))


def decode(v: ExponentVector) -> TorusPoint:
    coords = [Fraction(-1 if s else 1) for s in v.signs]
    for (i, p), e in v.exponents:
        coords[i - 1] *= Fraction(p) ** e
    return TorusPoint(tuple(coords))


class DependenceStatus(models.TextChoices):
    FOUND = "found", "encontrada"
    NONE = "none", "inexistente (provado)"
    NONE_WITHIN_BOUND = "none_within_bound", "nenhuma dentro da cota"


@dataclass(frozen=True)
class DependenceRelation:
    r: int
    s: int
    gamma_exponents: tuple[int, ...]
    unit: TorusPoint

    def __post_init__(self):
        if self.r == 0 or self.s == 0:
            raise DomainError("r e s devem ser não nulos", code="zero_exponent")

    @property
    def ratio(self) -> Fraction:
        return Fraction(abs(self.s), abs(self.r))

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "s": self.s,
            "gamma_exponents": list(self.gamma_exponents),
            "u": self.unit.to_json(),
        }


@dataclass(frozen=True)
class VectorDependenceRelation:
    rvec: tuple[int, ...]
    svec: tuple[int, ...]
    gamma_exponents: tuple[int, ...]
    unit: TorusPoint

    def __post_init__(self):
        if not all(self.rvec) or not all(self.svec):
            raise DomainError("todos os r_i e s_i devem ser não nulos", code="zero_exponent")

    def to_json(self) -> dict:
        return {
            "r": list(self.rvec),
            "s": list(self.svec),
            "gamma_exponents": list(self.gamma_exponents),
            "u": self.unit.to_json(),
        }


@dataclass(frozen=True)
class DependenceResult:
    status: str
    relation: DependenceRelation | VectorDependenceRelation | None = None
    note: str = ""

    @property
    def found(self) -> bool:
        return self.status == DependenceStatus.FOUND

    def to_json(self) -> dict:
        out: dict[str, Any] = {"status": str(self.status)}
        if self.relation is not None:
            out.update(self.relation.to_json())
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class DependenceConstraint:
    """|s/r| ≤ ratio_bound e faixas inclusivas para r (> 0 após normalização) e s.

    `divisor_indices` (coordenadas do toro, a partir de 1) só vale para relações
    vetoriais: max s_i/r_i sobre esses índices ≤ ratio_bound.
    """

    ratio_bound: Fraction | None = None
    r_range: tuple[int, int] | None = None
    s_range: tuple[int, int] | None = None
    divisor_indices: tuple[int, ...] = ()

    def __post_init__(self):
        if self.ratio_bound is not None:
            rb = as_rational(self.ratio_bound) if not isinstance(self.ratio_bound, float) \
                else Fraction(str(self.ratio_bound))
            if rb < 0:
                raise DomainError("ratio_bound deve ser ≥ 0", code="bad_constraint")
            object.__setattr__(self, "ratio_bound", rb)

    @property
    def complete(self) -> bool:
        """Com r_range finito a busca percorre todos os candidatos."""
        return self.r_range is not None

    def ratio_ok(self, r: int, s: int) -> bool:
        if self.ratio_bound is None:
            return True
        return abs(s) * self.ratio_bound.denominator <= self.ratio_bound.numerator * abs(r)

    def in_ranges(self, r: int, s: int) -> bool:
        if self.r_range and not self.r_range[0] <= r <= self.r_range[1]:
            return False
        if self.s_range and not self.s_range[0] <= s <= self.s_range[1]:
            return False
        return True

    def admits(self, r: int, s: int) -> bool:
        return r != 0 and s != 0 and self.ratio_ok(r, s) and self.in_ranges(r, s)


# =======================
# Forma normal de Smith e núcleo inteiro
# =======================
@dataclass(frozen=True)
class SNFResult:
    U: tuple[tuple[int, ...], ...]
    S: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i][i] for i in range(min(len(self.S), len(self.S[0]))))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def _combine_rows(U: IntMatrix, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    ui, uj = U[i], U[j]
    U[i] = [a * x + b * y for x, y in zip(ui, uj)]
    U[j] = [c * x + d * y for x, y in zip(ui, uj)]


def _combine_cols(V: IntMatrix, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    for row in V:
        x, y = row[i], row[j]
        row[i] = a * x + b * y
        row[j] = c * x + d * y


def _normalize_snf(diag: list[int], U: IntMatrix, V: IntMatrix) -> None:
    """Sinais não negativos, zeros no fim e cadeia d_1 | d_2 | ⋯ (in place)."""
    k = len(diag)
    for i in range(k):
        if diag[i] < 0:
            diag[i] = -diag[i]
            U[i] = [-x for x in U[i]]
    order = sorted(range(k), key=lambda i: diag[i] == 0)
    if order != list(range(k)):
        diag[:] = [diag[i] for i in order]
        U[:k] = [U[i] for i in order]
        for row in V:
            row[:k] = [row[i] for i in order]
    for i in range(k):
        for j in range(i + 1, k):
            a, b = diag[i], diag[j]
            if a == 0 or b == 0 or b % a == 0:
                continue
            x, y, g = (int(v) for v in ZZ.gcdex(ZZ(a), ZZ(b)))
            _combine_rows(U, i, j, x, y, -(b // g), a // g)
            _combine_cols(V, i, j, 1, 1, -(y * b // g), x * a // g)
            diag[i], diag[j] = g, a * b // g


def smith_normal_form(M: Sequence[Sequence[int]]) -> SNFResult:
    """U·M·V = S diagonal com d_1 | d_2 | ⋯, U e V unimodulares."""
    rows = [[int(x) for x in row] for row in M]
    if not rows or not rows[0]:
        raise DomainError("matriz vazia", code="empty_matrix")
    m, n = len(rows), len(rows[0])
    if any(len(r) != n for r in rows):
        raise DomainError("linhas com tamanhos diferentes", code="bad_matrix")
    if not any(any(r) for r in rows):
        return SNFResult(tuple(map(tuple, _identity(m))), tuple(map(tuple, rows)),
                         tuple(map(tuple, _identity(n))))
    _, s, t = smith_normal_decomp(Matrix(rows), domain=ZZ)
    U = [[int(x) for x in row] for row in s.tolist()]
    V = [[int(x) for x in row] for row in t.tolist()]
    S = matmul(matmul(U, rows), V)
    if any(S[i][j] for i in range(m) for j in range(n) if i != j):
        raise RuntimeError("decomposição de Smith não diagonal")
    diag = [S[i][i] for i in range(min(m, n))]
    _normalize_snf(diag, U, V)
    S = matmul(matmul(U, rows), V)
    return SNFResult(tuple(map(tuple, U)), tuple(map(tuple, S)), tuple(map(tuple, V)))


def lll_reduce(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Base LLL do reticulado gerado por vetores linearmente independentes."""
    if not vectors:
        return []
    n = len(vectors[0])
    dm = DomainMatrix([[ZZ(int(x)) for x in v] for v in vectors], (len(vectors), n), ZZ)
    return [[int(x) for x in row] for row in dm.lll().to_Matrix().tolist()]


def integer_kernel(M: Sequence[Sequence[int]], ncols: int | None = None, reduce: bool = True) -> IntMatrix:
    """Base do reticulado saturado {x ∈ Z^n : M·x = 0}; vazia quando o núcleo é trivial."""
    rows = [list(r) for r in M]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    if not rows:
        basis = _identity(n)
    else:
        snf = smith_normal_form(rows)
        r = snf.rank
        basis = [[snf.V[i][j] for i in range(n)] for j in range(r, n)]
    return lll_reduce(basis) if reduce and basis else basis


def solve_integer_system(A: Sequence[Sequence[int]], b: Sequence[int], ncols: int) -> list[int] | None:
    """Alguma solução inteira de A·x = b, ou None."""
    rows = [list(r) for r in A]
    if not rows:
        return [0] * ncols
    snf = smith_normal_form(rows)
    c = [sum(u * bi for u, bi in zip(row, b)) for row in snf.U]
    y = [0] * ncols
    for i, ci in enumerate(c):
        d = snf.S[i][i] if i < min(len(rows), ncols) else 0
        if d == 0:
            if ci != 0:
                return None
            continue
        if ci % d:
            return None
        y[i] = ci // d
    return [sum(snf.V[i][j] * y[j] for j in range(ncols)) for i in range(ncols)]


def babai_reduce(basis: Sequence[Sequence[int]], target: Sequence[int]) -> list[int]:
    """Resíduo de `target` pelo plano mais próximo (Gram-Schmidt exato em Fraction)."""
    if not basis:
        return list(target)
    B = [[Fraction(x) for x in b] for b in basis]
    gs: list[list[Fraction]] = []
    for b in B:
        v = list(b)
        for u in gs:
            uu = sum(x * x for x in u)
            mu = sum(x * y for x, y in zip(b, u)) / uu
            v = [x - mu * y for x, y in zip(v, u)]
        gs.append(v)
    w = [Fraction(x) for x in target]
    for i in reversed(range(len(B))):
        gg = sum(x * x for x in gs[i])
        c = round(sum(x * y for x, y in zip(w, gs[i])) / gg)
        if c:
            w = [x - c * y for x, y in zip(w, B[i])]
    return [int(x) for x in w]


def exponent_key(e: Sequence[int]) -> tuple:
    """max|e_j| e depois a ordem lexicográfica."""
    return (max(map(abs, e), default=0), tuple(e))


def shortest_exponents(relations: Sequence[Sequence[int]], e: Sequence[int]) -> list[int]:
    """Representante de e + ⟨relations⟩ de `exponent_key` mínima.

    `relations` é uma base (linhas independentes). Parte do ponto de Babai, cuja
    norma M limita a busca: os coeficientes c com max|e + c·B| ≤ M cabem na
    caixa dada pela inversa de um menor invertível da base.
    """
    basis = [list(v) for v in relations if any(v)]
    if not basis:
        return list(e)
    basis = lll_reduce(basis)
    start = babai_reduce(basis, e)
    M = max(map(abs, start))
    F = Matrix(basis)
    _, pivots = F.rref()
    inv = F[:, list(pivots)].T.inv()
    p0 = [start[j] for j in pivots]
    ranges = []
    for i in range(len(basis)):
        row = [Fraction(int(x.p), int(x.q)) for x in inv.row(i)]
        center = -sum(a * b for a, b in zip(row, p0))
        radius = M * sum(abs(a) for a in row)
        ranges.append(range(math.ceil(center - radius), math.floor(center + radius) + 1))
    if math.prod(len(rg) for rg in ranges) > VECTOR_SEARCH_CAP:
        logger.warning("fibra de Γ grande demais (M=%d); expoentes de Babai mantidos", M)
        return start
    best = exponent_key(start)
    for c in itertools.product(*ranges):
        cand = [x + sum(ci * b[j] for ci, b in zip(c, basis)) for j, x in enumerate(start)]
        key = exponent_key(cand)
        if key < best:
            best = key
    return list(best[1])


# =======================
# Sistema linear das relações
# =======================
def _exps(q: Fraction, base: Sequence[int]) -> dict[int, int]:
    out = dict(exponents_over_base(q.numerator, base))
    for b, e in exponents_over_base(q.denominator, base).items():
        out[b] = out.get(b, 0) - e
    return out


@dataclass
class _System:
    """Colunas: blocos r | s | e_1..e_k, seguidos das auxiliares de paridade."""

    nvars: int
    rows: IntMatrix = field(default_factory=list)
    aux: int = 0
    forced_zero: set[int] = field(default_factory=set)

    def kernel(self) -> IntMatrix:
        basis = integer_kernel(self.rows, self.nvars + self.aux)
        return [v[: self.nvars] for v in basis]


def _check_points(q1: TorusPoint, q2: TorusPoint, gamma: GroupGamma) -> None:
    if q1.dimension != q2.dimension or q1.dimension != gamma.dimension:
        raise DomainError("Q1, Q2 e Γ em dimensões diferentes", code="dimension_mismatch")


def _build_system(q1: TorusPoint, q2: TorusPoint, gamma: GroupGamma, vector: bool) -> _System:
    N, k = q1.dimension, gamma.rank
    e0 = 2 * N if vector else 2
    system = _System(e0 + k)
    values = [c for t in (q1, q2, *gamma.generators) for c in t.coords]
    base = coprime_base([v.numerator for v in values] + [v.denominator for v in values])

    def col_r(i: int) -> int:
        return i if vector else 0

    def col_s(i: int) -> int:
        return N + i if vector else 1

    signs: list[list[int]] = []
    for i in range(N):
        ex1, ex2 = _exps(q1.coords[i], base), _exps(q2.coords[i], base)
        exg = [_exps(g.coords[i], base) for g in gamma.generators]
        for b in sorted(set(ex1) | set(ex2) | {bb for d in exg for bb in d}):
            row = [0] * system.nvars
            row[col_r(i)] += ex1.get(b, 0)
            row[col_s(i)] -= ex2.get(b, 0)
            for j, d in enumerate(exg):
                row[e0 + j] -= d.get(b, 0)
            if not any(row):
                continue
            support = [c for c, x in enumerate(row) if x]
            # uma única incógnita na linha: ela é zero em toda relação
            if len(support) == 1:
                system.forced_zero.add(support[0])
            system.rows.append(row)
        sig = [int(q1.coords[i] < 0), int(q2.coords[i] < 0), *(int(g.coords[i] < 0) for g in gamma.generators)]
        if any(sig):
            row = [0] * system.nvars
            row[col_r(i)] += sig[0]
            row[col_s(i)] += sig[1]
            for j in range(k):
                row[e0 + j] += sig[2 + j]
            signs.append(row)
    system.aux = len(signs)
    width = system.nvars + system.aux
    system.rows = [row + [0] * system.aux for row in system.rows]
    for t, row in enumerate(signs):
        full = row + [0] * system.aux
        full[system.nvars + t] = -2
        system.rows.append(full)
    for row in system.rows:
        assert len(row) == width
    return system


# =======================
# Relações escalares
# =======================
def witness_key(r: int, s: int, e: Sequence[int]) -> tuple:
    """Ordem das testemunhas: |r|+|s|, |r|, expoentes (`exponent_key`), s positivo antes."""
    return (abs(r) + abs(s), abs(r), *exponent_key(e), -s)


@dataclass
class _PlaneVector:
    r: int
    s: int
    coef: list[int]

    def combine(self, x: int, other: "_PlaneVector", y: int) -> "_PlaneVector":
        return _PlaneVector(
            x * self.r + y * other.r,
            x * self.s + y * other.s,
            [x * a + y * b for a, b in zip(self.coef, other.coef)],
        )

    def negated(self) -> "_PlaneVector":
        return _PlaneVector(-self.r, -self.s, [-c for c in self.coef])


def _gcdex(a: int, b: int) -> tuple[int, int, int]:
    x, y, g = ZZ.gcdex(ZZ(a), ZZ(b))
    return int(x), int(y), int(g)


def _plane_basis(kernel: IntMatrix) -> tuple[_PlaneVector | None, _PlaneVector | None]:
    """Base triangular da projeção do núcleo em (r, s): a = (g_r, s_1) e h = (0, h)."""
    m = len(kernel)
    a: _PlaneVector | None = None
    axis: _PlaneVector | None = None

    def merge_axis(current, w):
        if w.s == 0:
            return current
        if current is None:
            return w if w.s > 0 else w.negated()
        x, y, _ = _gcdex(current.s, w.s)
        return current.combine(x, w, y)

    for idx, v in enumerate(kernel):
        cur = _PlaneVector(v[0], v[1], [1 if j == idx else 0 for j in range(m)])
        if cur.r == 0:
            axis = merge_axis(axis, cur)
            continue
        if a is None:
            a = cur
            continue
        x, y, g = _gcdex(a.r, cur.r)
        elim = a.combine(cur.r // g, cur, -(a.r // g))
        a = a.combine(x, cur, y)
        axis = merge_axis(axis, elim)
    if a is not None and a.r < 0:
        a = a.negated()
    return a, axis


def _s_in_class(residue: int, h: int, limit: int | None) -> Iterator[int]:
    """s ≠ 0 com s ≡ residue (mod h), em ordem de |s| crescente (positivo primeiro)."""
    m = residue % h
    pos = m if m > 0 else h
    neg = m - h
    while True:
        if limit is not None and min(pos, -neg) > limit:
            return
        if pos <= -neg:
            yield pos
            pos += h
        else:
            yield neg
            neg -= h


def _search_plane(a: _PlaneVector, axis: _PlaneVector | None, constraint: DependenceConstraint,
                  bound: int) -> tuple[list[tuple[int, int]], bool]:
    """Pares (r, s) admissíveis de chave (|r|+|s|, |r|) mínima; devolve também se a cota cortou a busca."""
    h = axis.s if axis is not None else 0
    gr, s1 = a.r, a.s
    rho = constraint.ratio_bound
    r_hi = constraint.r_range[1] if constraint.r_range else None
    s_abs = max(abs(x) for x in constraint.s_range) if constraint.s_range else None

    if h == 0:
        if s1 == 0:
            return [], False
        k = 1
        while True:
            r, s = k * gr, k * s1
            if (r_hi is not None and r > r_hi) or (s_abs is not None and abs(s) > s_abs):
                return [], False
            if not constraint.ratio_ok(r, s):
                return [], False
            if constraint.admits(r, s):
                return [(r, s)], False
            if r_hi is None and s_abs is None:
                return [], False
            k += 1

    if rho is not None and rho == 0:
        return [], False
    cap = bound ** 3
    best_n: int | None = None
    best: list[tuple[int, int]] = []
    k = 0
    while True:
        k += 1
        r = k * gr
        if best_n is not None and r + 1 > best_n:
            return best, False
        if r_hi is not None and r > r_hi:
            return best, False
        if k > cap:
            return best, True
        limits = [x for x in (
            None if rho is None else math.floor(rho * r),
            s_abs,
            None if best_n is None else best_n - r,
        ) if x is not None]
        limit = min(limits) if limits else None
        found_abs = None
        for s in _s_in_class(k * s1, h, limit):
            if found_abs is not None and abs(s) > found_abs:
                break
            if constraint.admits(r, s):
                found_abs = abs(s)
                n = r + abs(s)
                if best_n is None or n < best_n:
                    best_n, best = n, [(r, s)]
                elif n == best_n and best and best[0][0] == r:
                    best.append((r, s))
            elif limit is None and s_abs is None and rho is None:
                break


def _lift(a: _PlaneVector, axis: _PlaneVector | None, kernel: IntMatrix, r: int, s: int) -> list[int]:
    k = r // a.r
    coef = [k * c for c in a.coef]
    if axis is not None:
        j = (s - k * a.s) // axis.s
        coef = [c + j * d for c, d in zip(coef, axis.coef)]
    width = len(kernel[0])
    return [sum(coef[i] * kernel[i][col] for i in range(len(kernel))) for col in range(width)]


def _fiber_basis(kernel: IntMatrix) -> IntMatrix:
    """Relações do núcleo com r = s = 0 (para encurtar os expoentes de Γ)."""
    proj = [[v[0] for v in kernel], [v[1] for v in kernel]]
    coefs = integer_kernel(proj, len(kernel), reduce=False)
    vecs = [[sum(c[i] * kernel[i][col] for i in range(len(kernel))) for col in range(len(kernel[0]))]
            for c in coefs]
    vecs = [v for v in vecs if any(v)]
    return lll_reduce(vecs) if vecs else []


def solve_dependence(q1: TorusPoint, q2: TorusPoint, gamma: GroupGamma | None = None,
                     constraint: DependenceConstraint | None = None,
                     bound: int | None = None) -> DependenceResult:
    """Testemunha primitiva mínima de Q1^r = u·Q2^s, u ∈ Γ, ou a razão da ausência."""
    gamma = gamma or GroupGamma.trivial(q1.dimension)
    constraint = constraint or DependenceConstraint()
    _check_points(q1, q2, gamma)
    bound = int(bound or conf.get("KERNEL_ENUMERATION_BOUND"))

    system = _build_system(q1, q2, gamma, vector=False)
    if 0 in system.forced_zero:
        return DependenceResult(DependenceStatus.NONE, note="r = 0 em toda relação")
    if 1 in system.forced_zero:
        return DependenceResult(DependenceStatus.NONE, note="s = 0 em toda relação")
    kernel = system.kernel()
    if not kernel:
        return DependenceResult(DependenceStatus.NONE, note="núcleo trivial")
    a, axis = _plane_basis(kernel)
    if a is None:
        return DependenceResult(DependenceStatus.NONE, note="r = 0 em toda relação")
    pairs, limited = _search_plane(a, axis, constraint, bound)
    logger.debug("plano (r, s): a=(%s, %s) h=%s candidatos=%s", a.r, a.s, axis.s if axis else 0, pairs)
    if not pairs:
        if limited:
            return DependenceResult(DependenceStatus.NONE_WITHIN_BOUND, note=f"cota B={bound} atingida")
        return DependenceResult(DependenceStatus.NONE, note="nenhum (r, s) admissível no reticulado")

    fiber = [v[2:] for v in _fiber_basis(kernel)]
    best = None
    for r, s in pairs:
        e = shortest_exponents(fiber, _lift(a, axis, kernel, r, s)[2:])
        cand = (witness_key(r, s, e), r, s, tuple(e))
        if best is None or cand[0] < best[0]:
            best = cand
    _, r, s, e = best
    rel = DependenceRelation(r, s, e, gamma.element(e))
    if not verify_relation(q1, q2, rel, gamma):
        raise RuntimeError(f"testemunha {rel.to_json()} não verifica")
    return DependenceResult(DependenceStatus.FOUND, rel)


def brute_force_dependence(q1: TorusPoint, q2: TorusPoint, gamma: GroupGamma | None = None,
                           max_exp: int = 6, ratio_bound=None) -> DependenceResult:
    """Busca exaustiva em 0 < r ≤ maxExp, 0 < |s| ≤ maxExp, |e_j| ≤ maxExp, com conferência exata."""
    gamma = gamma or GroupGamma.trivial(q1.dimension)
    _check_points(q1, q2, gamma)
    if max_exp < 1:
        raise DomainError("maxExp deve ser ≥ 1", code="bad_bound")
    constraint = DependenceConstraint(ratio_bound=ratio_bound)
    units: dict[tuple[Fraction, ...], tuple[int, ...]] = {}
    for e in itertools.product(range(-max_exp, max_exp + 1), repeat=gamma.rank):
        coords = gamma.element(e).coords
        if coords not in units or exponent_key(e) < exponent_key(units[coords]):
            units[coords] = e
    pow1 = {r: (q1 ** r).coords for r in range(1, max_exp + 1)}
    pow2 = {s: (q2 ** s).coords for s in range(-max_exp, max_exp + 1) if s}
    for n in range(2, 2 * max_exp + 1):
        for r in range(1, min(max_exp, n - 1) + 1):
            sa = n - r
            if sa > max_exp:
                continue
            found = []
            for s in (sa, -sa):
                if not constraint.ratio_ok(r, s):
                    continue
                target = tuple(a / b for a, b in zip(pow1[r], pow2[s]))
                e = units.get(target)
                if e is not None:
                    found.append((witness_key(r, s, e), r, s, e))
            if found:
                _, r, s, e = min(found)
                rel = DependenceRelation(r, s, e, gamma.element(e))
                return DependenceResult(DependenceStatus.FOUND, rel)
    return DependenceResult(DependenceStatus.NONE_WITHIN_BOUND, note=f"maxExp={max_exp}")


def verify_relation(q1: TorusPoint, q2: TorusPoint,
                    rel: DependenceRelation | VectorDependenceRelation,
                    gamma: GroupGamma | None = None) -> bool:
    """Q1^r = u·Q2^s coordenada a coordenada, em racionais exatos."""
    if q1.dimension != q2.dimension or rel.unit.dimension != q1.dimension:
        return False
    if gamma is not None:
        if len(rel.gamma_exponents) != gamma.rank or gamma.element(rel.gamma_exponents) != rel.unit:
            return False
    if isinstance(rel, VectorDependenceRelation):
        rs = zip(rel.rvec, rel.svec)
    else:
        rs = [(rel.r, rel.s)] * q1.dimension
    return all(a ** r == u * b ** s for (r, s), a, b, u in zip(rs, q1.coords, q2.coords, rel.unit.coords))


def gamma_membership(t: TorusPoint, gamma: GroupGamma) -> tuple[int, ...] | None:
    """Expoentes e com t = Π g_j^{e_j}, ou None quando t ∉ Γ."""
    if t.dimension != gamma.dimension:
        raise DomainError("ponto e Γ em dimensões diferentes", code="dimension_mismatch")
    k = gamma.rank
    if k == 0:
        return () if all(c == 1 for c in t.coords) else None
    values = [c for g in (t, *gamma.generators) for c in g.coords]
    base = coprime_base([v.numerator for v in values] + [v.denominator for v in values])
    rows: IntMatrix = []
    rhs: list[int] = []
    parity: list[tuple[list[int], int]] = []
    for i in range(t.dimension):
        ext = _exps(t.coords[i], base)
        exg = [_exps(g.coords[i], base) for g in gamma.generators]
        for b in base:
            row = [d.get(b, 0) for d in exg]
            target = ext.get(b, 0)
            if any(row) or target:
                rows.append(row)
                rhs.append(target)
        sig = [int(g.coords[i] < 0) for g in gamma.generators]
        if any(sig) or t.coords[i] < 0:
            parity.append((sig, int(t.coords[i] < 0)))
    width = k + len(parity)
    full = [row + [0] * len(parity) for row in rows]
    for j, (sig, target) in enumerate(parity):
        row = sig + [0] * len(parity)
        row[k + j] = -2
        full.append(row)
        rhs.append(target)
    x = solve_integer_system(full, rhs, width)
    if x is None:
        return None
    relations = [v[:k] for v in integer_kernel(full, width)] if full else _identity(k)
    relations = [v for v in relations if any(v)]
    e = shortest_exponents(relations, x[:k])
    if gamma.element(e) != t:
        raise RuntimeError(f"expoentes {e} não reproduzem {t}")
    return tuple(e)


# =======================
# Relações vetoriais
# =======================
def vector_key(rvec: Sequence[int], svec: Sequence[int], e: Sequence[int]) -> tuple:
    """Como witness_key; entre normas iguais, expoentes positivos primeiro."""
    signs = tuple(x < 0 for x in (*rvec, *svec))
    return (sum(map(abs, rvec)) + sum(map(abs, svec)), sum(map(abs, rvec)), signs,
            tuple(map(abs, rvec)), tuple(map(abs, svec)), tuple(e))


def solve_vector_dependence(q1: TorusPoint, q2: TorusPoint, gamma: GroupGamma | None = None,
                            constraint: DependenceConstraint | None = None,
                            bound: int | None = None) -> DependenceResult:
    """Q1^{r⃗} = u·Q2^{s⃗} com todos os r_i, s_i não nulos."""
    gamma = gamma or GroupGamma.trivial(q1.dimension)
    constraint = constraint or DependenceConstraint()
    _check_points(q1, q2, gamma)
    N = q1.dimension
    box = int(bound or conf.get("VECTOR_ENUMERATION_BOUND"))

    system = _build_system(q1, q2, gamma, vector=True)
    blocked = sorted(c for c in system.forced_zero if c < 2 * N)
    if blocked:
        return DependenceResult(DependenceStatus.NONE, note=f"incógnita {blocked[0]} é zero em toda relação")
    kernel = system.kernel()
    if not kernel:
        return DependenceResult(DependenceStatus.NONE, note="núcleo trivial")
    for col in range(2 * N):
        if all(v[col] == 0 for v in kernel):
            return DependenceResult(DependenceStatus.NONE, note=f"incógnita {col} é zero em toda relação")

    m = len(kernel)
    while box > 1 and (2 * box + 1) ** m > VECTOR_SEARCH_CAP:
        box -= 1
    idx = [i - 1 for i in constraint.divisor_indices if 1 <= i <= N]
    best = None
    for c in itertools.product(range(-box, box + 1), repeat=m):
        if not any(c):
            continue
        x = [sum(ci * v[col] for ci, v in zip(c, kernel)) for col in range(len(kernel[0]))]
        rvec, svec = x[:N], x[N:2 * N]
        if not all(rvec) or not all(svec):
            continue
        if rvec[0] < 0:
            x = [-v for v in x]
            rvec, svec = x[:N], x[N:2 * N]
        if constraint.ratio_bound is not None and idx:
            if max(Fraction(svec[i], rvec[i]) for i in idx) > constraint.ratio_bound:
                continue
        key = vector_key(rvec, svec, x[2 * N:])
        if best is None or key < best[0]:
            best = (key, x)
    if best is None:
        return DependenceResult(DependenceStatus.NONE_WITHIN_BOUND, note=f"caixa de coeficientes {box}")
    x = best[1]
    e = tuple(x[2 * N:])
    rel = VectorDependenceRelation(tuple(x[:N]), tuple(x[N:2 * N]), e, gamma.element(e))
    if not verify_relation(q1, q2, rel, gamma):
        raise RuntimeError(f"relação vetorial {rel.to_json()} não verifica")
    return DependenceResult(DependenceStatus.FOUND, rel)
