from django.test import SimpleTestCase

from aritmetica.exceptions import DomainError
from aritmetica.polynomials import HomogeneousForm


class HomogeneousFormTests(SimpleTestCase):
    def test_parse_e_avaliacao(self):
        f = HomogeneousForm.parse("X0^2 + 3*X0*X1 - x1**2", 2)
        self.assertEqual(f.degree, 2)
        self.assertEqual(f.n_monomials, 3)
        self.assertEqual(f.evaluate((2, 5)), 4 + 30 - 25)
        self.assertEqual(f.evaluate_mod((2, 5), 7), (4 + 30 - 25) % 7)

    def test_nao_homogenea(self):
        with self.assertRaises(DomainError) as ctx:
            HomogeneousForm.parse("X0**2 + X1", 2)
        self.assertEqual(ctx.exception.code, "not_homogeneous")

    def test_coeficiente_racional(self):
        with self.assertRaises(DomainError):
            HomogeneousForm.parse("X0/2", 2)

    def test_texto_invalido(self):
        with self.assertRaises(DomainError) as ctx:
            HomogeneousForm.parse("X0 +", 2)
        self.assertEqual(ctx.exception.code, "bad_form")

    def test_json_esparso(self):
        data = {"monomials": [{"exps": [1, 1, 0], "coef": 2}, {"exps": [0, 0, 2], "coef": -4}]}
        f = HomogeneousForm.from_json(data)
        self.assertEqual(f.nvars, 3)
        self.assertEqual(f.content(), 2)
        self.assertEqual(f.primitive().evaluate((1, 1, 1)), 1 - 2)
        self.assertEqual(HomogeneousForm.from_json(f.to_json()), f)

    def test_produto_de_lineares(self):
        f = HomogeneousForm.product([HomogeneousForm.linear((1, 1)), HomogeneousForm.linear((1, -1))])
        self.assertEqual(f, HomogeneousForm.parse("X0**2 - X1**2", 2))

    def test_variaveis_que_dividem(self):
        self.assertEqual(HomogeneousForm.parse("X0*X1*X2 + X0**2*X2", 3).variables_dividing(), (0, 2))
        self.assertEqual(HomogeneousForm.monomial((1, 0, 1)).variables_dividing(), (0, 2))
