import math
import random
from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from aritmetica.exceptions import BudgetExceeded, DomainError
from aritmetica.number_core import (
    Factorization,
    Place,
    coprime_base,
    exponent_vector,
    exponents_over_base,
    factor,
    log_abs,
    product_formula_residue,
    split_primes,
    valuation,
)


class FactorTests(SimpleTestCase):
    def test_exemplos(self):
        self.assertEqual(factor(12), Factorization(1, ((2, 2), (3, 1))))
        self.assertEqual(factor(-45), Factorization(-1, ((3, 2), (5, 1))))
        self.assertEqual(factor(1), Factorization(1, ()))
        self.assertEqual(str(factor(12)), "2^2 * 3")

    def test_zero(self):
        with self.assertRaises(DomainError) as ctx:
            factor(0)
        self.assertEqual(ctx.exception.code, "zero_input")

    def test_reconstrucao_ate_10_18(self):
        rng = random.Random(2024)
        for _ in range(60):
            n = rng.randint(-10**18, 10**18) or 1
            f = factor(n)
            self.assertEqual(f.value(), n)
            self.assertTrue(f.verify())

    @override_settings(ARITMETICA={"MAX_DIGITS": 10})
    def test_teto_de_digitos(self):
        with self.assertRaises(BudgetExceeded) as ctx:
            factor(10**30 + 1)
        self.assertEqual(ctx.exception.budget, "max_digits")


class ValuationTests(SimpleTestCase):
    def test_exemplos(self):
        self.assertEqual(valuation(2, 12), 2)
        self.assertEqual(valuation(3, Fraction(4, 9)), -2)
        self.assertEqual(valuation(5, 7), 0)

    def test_zero_e_nao_primo(self):
        with self.assertRaises(DomainError):
            valuation(2, 0)
        with self.assertRaises(DomainError) as ctx:
            valuation(4, 12)
        self.assertEqual(ctx.exception.code, "not_prime")

    def test_aditiva(self):
        rng = random.Random(7)
        for _ in range(200):
            p = rng.choice([2, 3, 5, 7, 11])
            q1 = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
            q2 = Fraction(-rng.randint(1, 10**6), rng.randint(1, 10**6))
            self.assertEqual(valuation(p, q1 * q2), valuation(p, q1) + valuation(p, q2))


class LogAbsTests(SimpleTestCase):
    def test_exemplos(self):
        self.assertAlmostEqual(log_abs(Place.archimedean(), Fraction(-3, 2)), math.log(1.5), places=12)
        self.assertAlmostEqual(log_abs(Place.finite(2), 12), -2 * math.log(2), places=12)
        self.assertAlmostEqual(log_abs(Place.finite(7), Fraction(1, 7)), math.log(7), places=12)

    def test_zero(self):
        with self.assertRaises(DomainError):
            log_abs(Place.archimedean(), 0)

    def test_place_parse(self):
        self.assertTrue(Place.parse("inf").is_archimedean)
        self.assertEqual(Place.parse(" 13 ").prime, 13)
        with self.assertRaises(DomainError):
            Place.parse("x")
        with self.assertRaises(DomainError):
            Place.finite(9)


class ProductFormulaTests(SimpleTestCase):
    def test_residuo_exato_nulo(self):
        rng = random.Random(11)
        for _ in range(10000):
            q = Fraction(rng.choice([-1, 1]) * rng.randint(1, 10**9), rng.randint(1, 10**9))
            self.assertEqual(product_formula_residue(q), {})

    def test_vetor_de_expoentes(self):
        self.assertEqual(exponent_vector(Fraction(-2, 3)), {2: 1, 3: -1})
        self.assertEqual(exponent_vector(1), {})


class CoprimeBaseTests(SimpleTestCase):
    def test_base_coprima_fatora_tudo(self):
        values = [12, 18, 35, 2**40 * 3, 77]
        base = coprime_base(values)
        for i, a in enumerate(base):
            self.assertGreater(a, 1)
            for b in base[i + 1:]:
                self.assertEqual(math.gcd(a, b), 1)
        for v in values:
            exps = exponents_over_base(v, base)
            self.assertEqual(math.prod(b ** e for b, e in exps.items()), v)

    def test_split_primes(self):
        found, cofactor = split_primes(-360, [2, 5])
        self.assertEqual(found, {2: 3, 5: 1})
        self.assertEqual(cofactor, 9)
