import itertools
import math
import random
from fractions import Fraction

from django.test import SimpleTestCase
from sympy import ZZ, Matrix

from aritmetica.exceptions import DomainError
from aritmetica.multdep import (
    DependenceConstraint,
    DependenceRelation,
    DependenceStatus,
    GroupGamma,
    brute_force_dependence,
    decode,
    encode,
    gamma_membership,
    integer_kernel,
    matmul,
    smith_normal_form,
    solve_dependence,
    solve_integer_system,
    solve_vector_dependence,
    verify_relation,
    witness_key,
)
from aritmetica.projective import TorusPoint

PRIMES = (2, 3, 5, 7, 11, 13)


def T(*values):
    return TorusPoint.of(*values)


def G(*gens):
    return GroupGamma(gens[0].dimension, tuple(gens))


def random_torus(rng, n):
    coords = []
    for _ in range(n):
        q = Fraction(rng.choice((1, -1)))
        for p in rng.sample(PRIMES, rng.randint(0, 2)):
            q *= Fraction(p) ** rng.randint(-3, 3)
        coords.append(q)
    return TorusPoint(tuple(coords))


def random_instance(rng):
    n = rng.randint(1, 3)
    gens = tuple(random_torus(rng, n) for _ in range(rng.randint(0, 2)))
    gamma = GroupGamma(n, gens)
    q2 = random_torus(rng, n)
    if rng.random() < 0.5:
        # Q1 = u·Q2^s: relação com r = 1
        s = rng.choice((-2, -1, 1, 2))
        e = [rng.randint(-2, 2) for _ in gens]
        q1 = gamma.element(e) * q2 ** s
    else:
        q1 = random_torus(rng, n)
    return q1, q2, gamma


def minors_gcd(M, k):
    dm = Matrix(M).to_DM(ZZ)
    m, n = dm.shape
    g = 0
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(n), k):
            g = math.gcd(g, int(dm.extract(list(rows), list(cols)).det()))
    return g


class EncodeTests(SimpleTestCase):
    def test_exemplos(self):
        v = encode(T(4))
        self.assertEqual(v.signs, (0,))
        self.assertEqual(v.as_dict(), {(1, 2): 2})

        v = encode(T("-2/3", 5))
        self.assertEqual(v.signs, (1, 0))
        self.assertEqual(v.as_dict(), {(1, 2): 1, (1, 3): -1, (2, 5): 1})

        self.assertTrue(encode(T(1, 1)).is_zero)

    def test_decode_reconstroi(self):
        rng = random.Random(11)
        for _ in range(50):
            t = random_torus(rng, rng.randint(1, 3))
            self.assertEqual(decode(encode(t)), t)

    def test_coordenada_nula(self):
        with self.assertRaises(DomainError) as ctx:
            T(0, 2)
        self.assertEqual(ctx.exception.code, "zero_coordinate")


class SmithNormalFormTests(SimpleTestCase):
    def test_exemplos(self):
        self.assertEqual(smith_normal_form([[2, 4], [6, 8]]).diagonal, (2, 4))
        eye = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
        self.assertEqual(smith_normal_form(eye).diagonal, (1, 1, 1, 1))

        zero = smith_normal_form([[0, 0], [0, 0]])
        self.assertEqual(zero.diagonal, (0, 0))
        self.assertEqual(zero.U, ((1, 0), (0, 1)))
        self.assertEqual(zero.V, ((1, 0), (0, 1)))

    def test_erros(self):
        with self.assertRaises(DomainError) as ctx:
            smith_normal_form([])
        self.assertEqual(ctx.exception.code, "empty_matrix")
        with self.assertRaises(DomainError) as ctx:
            smith_normal_form([[1, 2], [3]])
        self.assertEqual(ctx.exception.code, "bad_matrix")

    def test_propriedades_aleatorias(self):
        rng = random.Random(5)
        for _ in range(500):
            m, n = rng.randint(1, 20), rng.randint(1, 20)
            M = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]
            snf = smith_normal_form(M)
            self.assertEqual(matmul(matmul(snf.U, M), snf.V), [list(row) for row in snf.S])
            self.assertIn(Matrix(snf.U).to_DM(ZZ).det(), (1, -1))
            self.assertIn(Matrix(snf.V).to_DM(ZZ).det(), (1, -1))
            diag = snf.diagonal
            for a, b in zip(diag, diag[1:]):
                self.assertTrue(b == 0 or (a != 0 and b % a == 0))
            self.assertTrue(all(d >= 0 for d in diag))

    def test_oraculo_dos_menores(self):
        rng = random.Random(6)
        for _ in range(200):
            m, n = rng.randint(1, 6), rng.randint(1, 6)
            M = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]
            diag = smith_normal_form(M).diagonal
            prod = 1
            for k in range(1, min(m, n) + 1):
                prod *= diag[k - 1]
                self.assertEqual(prod, minors_gcd(M, k))


class IntegerKernelTests(SimpleTestCase):
    def test_exemplos(self):
        self.assertIn(integer_kernel([[1, 2]]), ([[2, -1]], [[-2, 1]]))
        self.assertEqual(integer_kernel([[1, 0], [0, 1]]), [])

        basis = integer_kernel([[1, 1, 1]])
        self.assertEqual(len(basis), 2)
        self.assertEqual(Matrix(basis).rank(), 2)
        for v in basis:
            self.assertEqual(sum(v), 0)

    def test_completude(self):
        rng = random.Random(8)
        for _ in range(10):
            M = [[rng.randint(-3, 3) for _ in range(3)]]
            basis = integer_kernel(M)
            columns = [list(col) for col in zip(*basis)] if basis else []
            for x in itertools.product(range(-4, 5), repeat=3):
                if matmul(M, [[c] for c in x]) != [[0]]:
                    continue
                if not any(x):
                    continue
                self.assertTrue(basis, f"{x} no núcleo de {M}")
                self.assertIsNotNone(solve_integer_system(columns, list(x), len(basis)))

    def test_sistema_sem_solucao(self):
        self.assertIsNone(solve_integer_system([[2, 4]], [3], 2))
        x = solve_integer_system([[2, 4]], [6], 2)
        self.assertEqual(2 * x[0] + 4 * x[1], 6)


class SolveDependenceTests(SimpleTestCase):
    def assertRelation(self, result, r, s, e=()):
        self.assertEqual(result.status, DependenceStatus.FOUND)
        rel = result.relation
        self.assertEqual((rel.r, rel.s, rel.gamma_exponents), (r, s, tuple(e)))

    def test_exemplos(self):
        self.assertRelation(solve_dependence(T(4), T(2)), 1, 2)
        result = solve_dependence(T(12), T(2), G(T(3)))
        self.assertRelation(result, 1, 2, (1,))
        self.assertEqual(result.relation.unit, T(3))
        self.assertRelation(solve_dependence(T(-2), T(2)), 2, 2)

    def test_expoente_negativo(self):
        self.assertRelation(solve_dependence(T(2), T("1/2")), 1, -1)

    def test_gamma_contem_q2(self):
        # (1, 1) e (1, −1) empatam; vence o menor vetor de expoentes
        self.assertRelation(solve_dependence(T(2), T(2), G(T(2))), 1, 1, (0,))

    def test_geradores_dependentes(self):
        # Γ = ⟨2, 4⟩: e_1 + 2·e_2 = 1 tem infinitas soluções; vale max|e_j| e depois a ordem lexicográfica
        gamma = G(T(2), T(4))
        lattice = solve_dependence(T(4), T(2), gamma)
        self.assertRelation(lattice, 1, 1, (-1, 1))
        brute = brute_force_dependence(T(4), T(2), gamma, max_exp=6)
        self.assertEqual(lattice.relation.to_json(), brute.relation.to_json())

    def test_inexistente(self):
        result = solve_dependence(T(2), T(3))
        self.assertEqual(result.status, DependenceStatus.NONE)
        self.assertIsNone(result.relation)
        self.assertEqual(solve_dependence(T(1), T(5)).status, DependenceStatus.NONE)

    def test_cota_da_razao(self):
        self.assertEqual(
            solve_dependence(T(4), T(2), constraint=DependenceConstraint(ratio_bound=1)).status,
            DependenceStatus.NONE,
        )
        self.assertRelation(
            solve_dependence(T(4), T(2), constraint=DependenceConstraint(ratio_bound=Fraction(2))), 1, 2
        )
        with self.assertRaises(DomainError):
            DependenceConstraint(ratio_bound=-1)

    def test_dimensoes(self):
        with self.assertRaises(DomainError) as ctx:
            solve_dependence(T(2), T(2, 3))
        self.assertEqual(ctx.exception.code, "dimension_mismatch")

    def test_json(self):
        data = solve_dependence(T(12), T(2), G(T(3))).to_json()
        self.assertEqual(data, {"status": "found", "r": 1, "s": 2, "gamma_exponents": [1], "u": ["3"]})
        self.assertEqual(GroupGamma.from_json([["3"]], 1), G(T(3)))
        self.assertEqual(GroupGamma.from_json([], 2).rank, 0)


class VectorDependenceTests(SimpleTestCase):
    def test_exemplos(self):
        result = solve_vector_dependence(T(4, 8), T(2, 2))
        self.assertEqual(result.status, DependenceStatus.FOUND)
        self.assertEqual(result.relation.rvec, (1, 1))
        self.assertEqual(result.relation.svec, (2, 3))
        self.assertTrue(verify_relation(T(4, 8), T(2, 2), result.relation))

        self.assertFalse(solve_vector_dependence(T(2, 3), T(3, 2)).found)
        self.assertFalse(solve_vector_dependence(T(1, 1), T(5, 7)).found)

    def test_filtro_do_divisor(self):
        # s_1/r_1 = 2 na coordenada 1
        strict = DependenceConstraint(ratio_bound=1, divisor_indices=(1,))
        self.assertFalse(solve_vector_dependence(T(4, 8), T(2, 2), constraint=strict).found)
        loose = DependenceConstraint(ratio_bound=2, divisor_indices=(1,))
        self.assertTrue(solve_vector_dependence(T(4, 8), T(2, 2), constraint=loose).found)


class BruteForceTests(SimpleTestCase):
    def test_exemplos(self):
        rel = brute_force_dependence(T(4), T(2), max_exp=3).relation
        self.assertEqual((rel.r, rel.s), (1, 2))
        self.assertFalse(brute_force_dependence(T(2), T(3), max_exp=5).found)

        rel = brute_force_dependence(T(9), T(6), G(T(2)), max_exp=4).relation
        self.assertEqual((rel.r, rel.s, rel.gamma_exponents), (1, 2, (-2,)))
        self.assertEqual(rel.unit, T("1/4"))

    def test_concorda_com_o_reticulado(self):
        result = solve_dependence(T(9), T(6), G(T(2)))
        self.assertEqual((result.relation.r, result.relation.s, result.relation.gamma_exponents), (1, 2, (-2,)))

    def test_max_exp_invalido(self):
        with self.assertRaises(DomainError):
            brute_force_dependence(T(4), T(2), max_exp=0)


class VerifyRelationTests(SimpleTestCase):
    def test_exemplos(self):
        one = T(1)
        self.assertTrue(verify_relation(T(4), T(2), DependenceRelation(1, 2, (), one)))
        self.assertFalse(verify_relation(T(4), T(2), DependenceRelation(1, 3, (), one)))
        gamma = G(T(3))
        self.assertTrue(verify_relation(T(12), T(2), DependenceRelation(1, 2, (1,), T(3)), gamma))
        # u que não bate com os expoentes de Γ
        self.assertFalse(verify_relation(T(12), T(2), DependenceRelation(1, 2, (2,), T(3)), gamma))

    def test_r_nulo(self):
        with self.assertRaises(DomainError):
            DependenceRelation(0, 1, (), T(1))


class OracleTests(SimpleTestCase):
    """Reticulado contra busca exaustiva em instâncias aleatórias."""

    def test_equivalencia(self):
        rng = random.Random(2024)
        found = 0
        for _ in range(200):
            q1, q2, gamma = random_instance(rng)
            lattice = solve_dependence(q1, q2, gamma)
            brute = brute_force_dependence(q1, q2, gamma, max_exp=6)
            if brute.found:
                found += 1
                self.assertTrue(lattice.found, f"{q1} {q2} {gamma}")
                b = brute.relation
                self.assertLessEqual(abs(lattice.relation.r) + abs(lattice.relation.s), abs(b.r) + abs(b.s))
            if lattice.found:
                rel = lattice.relation
                self.assertTrue(verify_relation(q1, q2, rel, gamma))
                if max(abs(x) for x in (rel.r, rel.s, *rel.gamma_exponents)) <= 6:
                    self.assertTrue(brute.found)
                    b = brute.relation
                    self.assertEqual(
                        witness_key(rel.r, rel.s, rel.gamma_exponents),
                        witness_key(b.r, b.s, b.gamma_exponents),
                        f"{q1} {q2} {gamma}",
                    )
                    self.assertEqual(rel.to_json(), b.to_json())
        self.assertGreater(found, 50)

    def test_primitividade(self):
        rng = random.Random(77)
        for _ in range(60):
            q1, q2, gamma = random_instance(rng)
            result = solve_dependence(q1, q2, gamma)
            if not result.found:
                continue
            rel = result.relation
            g = math.gcd(rel.r, rel.s, *rel.gamma_exponents)
            for p in PRIMES:
                if g % p:
                    continue
                e = tuple(x // p for x in rel.gamma_exponents)
                smaller = DependenceRelation(rel.r // p, rel.s // p, e, gamma.element(e))
                self.assertFalse(verify_relation(q1, q2, smaller, gamma))

    def test_invariancia_por_quadrado(self):
        rng = random.Random(99)
        for _ in range(40):
            q1, q2, gamma = random_instance(rng)
            self.assertEqual(
                solve_dependence(q1, q2, gamma).found,
                solve_dependence(q1 ** 2, q2 ** 2, gamma).found,
            )


class GammaMembershipTests(SimpleTestCase):
    def test_exemplos(self):
        gamma = G(T(2), T(3))
        self.assertEqual(gamma_membership(T(12), gamma), (2, 1))
        self.assertEqual(gamma_membership(T("2/9"), gamma), (1, -2))
        self.assertIsNone(gamma_membership(T(5), gamma))
        self.assertEqual(gamma_membership(T(1), GroupGamma.trivial(1)), ())
        self.assertIsNone(gamma_membership(T(2), GroupGamma.trivial(1)))

    def test_sinais(self):
        gamma = G(T(-2), T(2))
        e = gamma_membership(T(-1), gamma)
        self.assertEqual(e, (-1, 1))
        self.assertEqual(gamma.element(e), T(-1))
        self.assertIsNone(gamma_membership(T(-1), G(T(2))))

    def test_dimensoes(self):
        with self.assertRaises(DomainError):
            gamma_membership(T(1, 2), G(T(2)))
