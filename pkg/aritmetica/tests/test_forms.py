import math
from fractions import Fraction

from django.test import SimpleTestCase

from aritmetica.exceptions import ConfigError
from aritmetica.forms import load_config, parse_config_text
from aritmetica.heights import Divisor

QUADRADO = {
    "schema": 1,
    "generators": [["X0**2", "X1**2"]],
    "divisor": {"coordinates": [0, 1]},
    "c": "9/10",
    "epsilon": "19/20",
    "seeds": ["[1:1]", "[1:2]"],
    "max_degree": 16,
}


class ParseConfigTextTests(SimpleTestCase):
    def test_json_quebrado(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config_text('{\n  "schema": 1,\n')
        self.assertTrue(ctx.exception.diagnostics[0].startswith("json: linha 3"))

    def test_nao_objeto(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config_text("[1, 2]")
        self.assertEqual(ctx.exception.diagnostics, ["json: o cenário deve ser um objeto"])


class LoadConfigTests(SimpleTestCase):
    def diagnostics(self, raw, overrides=None):
        with self.assertRaises(ConfigError) as ctx:
            load_config(raw, overrides)
        return ctx.exception.diagnostics

    def test_cenario_valido(self):
        config = load_config(QUADRADO)
        self.assertEqual(config.dimension, 1)
        self.assertEqual(config.c, Fraction(9, 10))
        self.assertEqual(config.epsilon, Fraction(19, 20))
        self.assertEqual(len(config.seeds), 2)
        self.assertEqual(config.divisor, Divisor.coordinate([0, 1], 1))
        self.assertEqual(config.max_degree, 16)
        self.assertEqual(config.relation, "scalar")
        self.assertEqual(config.generators[0].label, "φ1")

    def test_sobreposicoes(self):
        config = load_config(QUADRADO, {"c": "1/2", "max_points": 5, "random_seed": None})
        self.assertEqual(config.c, Fraction(1, 2))
        self.assertEqual(config.max_points, 5)
        self.assertEqual(config.random_seed, 0)

    def test_campo_desconhecido(self):
        self.assertIn("cor: campo desconhecido", self.diagnostics({**QUADRADO, "cor": "azul"}))

    def test_schema_obrigatorio(self):
        raw = dict(QUADRADO)
        del raw["schema"]
        self.assertTrue(any(d.startswith("schema:") for d in self.diagnostics(raw)))
        self.assertTrue(any(d.startswith("schema:") for d in self.diagnostics({**QUADRADO, "schema": 2})))

    def test_constante_fora_do_intervalo(self):
        diags = self.diagnostics(QUADRADO, {"c": "1"})
        self.assertEqual(len(diags), 1)
        self.assertTrue(diags[0].startswith("c: "))

    def test_semente_invalida(self):
        diags = self.diagnostics({**QUADRADO, "seeds": ["[1:2"]})
        self.assertTrue(diags[0].startswith("seeds: "))

    def test_saidas(self):
        diags = self.diagnostics({**QUADRADO, "output": {"pdf": "x.pdf"}})
        self.assertTrue(diags[0].startswith("output: "))
        config = load_config({**QUADRADO, "output": {"json": "relatorios/q.json"}})
        self.assertEqual(config.outputs, {"json": "relatorios/q.json"})

    def test_sem_geradores(self):
        raw = dict(QUADRADO)
        del raw["generators"]
        self.assertTrue(self.diagnostics(raw)[0].startswith("generators: "))

    def test_dimensao_declarada(self):
        diags = self.diagnostics({**QUADRADO, "dimension": 2})
        self.assertTrue(diags[0].startswith("dimension: "))

    def test_exemplo(self):
        config = load_config({
            "schema": 1,
            "example": {"N": 1, "d": 3, "seed": 5},
            "seed_height_bound": math.log(2),
        })
        self.assertEqual(len(config.generators), 2)
        self.assertEqual(config.divisor, Divisor.coordinate([1], 1))
        self.assertEqual(config.seed_max_coordinate, 2)
        self.assertEqual(len(config.seed_points()), 8)

    def test_exemplo_invalido(self):
        diags = self.diagnostics({"schema": 1, "example": {"N": 2, "d": 3}, "seed_max_coordinate": 1})
        self.assertTrue(diags[0].startswith("generators: "))

    def test_gamma_e_lugares(self):
        config = load_config({**QUADRADO, "gamma": [["3"]], "places": ["inf", 5]})
        self.assertEqual(config.gamma.rank, 1)
        places, added = config.effective_places()
        self.assertEqual(added, [3])
        self.assertEqual(places.to_json(), ["inf", "3", "5"])
