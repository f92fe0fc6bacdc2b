import json
import math
from dataclasses import replace
from fractions import Fraction

from django.conf import settings
from django.test import SimpleTestCase, override_settings

from aritmetica.dynamics import Endomorphism, Word, evaluate, make_example_maps
from aritmetica.exceptions import DomainError
from aritmetica.experiments import (
    CANONICAL_UNAVAILABLE,
    ScenarioConfig,
    enumerate_rational_points,
    epsilon_threshold,
    hyp_scan,
    max_coordinate_for,
    replay_hits,
    run_constants,
    scan_theorem1,
    scan_theorem2,
    verify_inequality_chain,
)
from aritmetica.forms import load_config
from aritmetica.heights import Divisor, PlaceSet
from aritmetica.multdep import GroupGamma, solve_dependence, verify_relation
from aritmetica.projective import ProjectivePoint, TorusPoint, normalize, power, torus_coords
from aritmetica.reports import canonical_json

SQUARE = Endomorphism.parse(["X0**2", "X1**2"], "f")
G1 = Endomorphism.parse(["X0**2 + X1**2", "X1*(X0 + X1)"], "g1")
G2 = Endomorphism.parse(["X0*(X0 + X1)", "X0**2 + X1**2"], "g2")
AXES = Divisor.coordinate([0, 1], 1)


def P(text):
    return ProjectivePoint.parse(text)


def scenario(**kwargs):
    base = {
        "generators": (SQUARE,),
        "divisor": AXES,
        "c": Fraction(1, 2),
        "seeds": (P("[1:1]"), P("[1:2]")),
        "max_degree": 4,
    }
    base.update(kwargs)
    return ScenarioConfig(**base)


class EnumerateTests(SimpleTestCase):
    def test_contagens(self):
        self.assertEqual(len(list(enumerate_rational_points(1, math.log(2)))), 8)
        self.assertEqual(len(list(enumerate_rational_points(1, 0))), 4)
        self.assertEqual(len(list(enumerate_rational_points(2, 0))), 13)

    def test_cada_ponto_uma_vez(self):
        pts = list(enumerate_rational_points(1, max_coordinate=5))
        self.assertEqual(len(pts), len(set(pts)))
        expected = {normalize((a, b)) for a in range(-5, 6) for b in range(-5, 6) if a or b}
        self.assertEqual(set(pts), expected)
        for Q in pts:
            self.assertEqual(math.gcd(*Q.coords), 1)

    def test_erros(self):
        with self.assertRaises(DomainError):
            list(enumerate_rational_points(0, 1.0))
        with self.assertRaises(DomainError):
            max_coordinate_for(-1)
        self.assertEqual(max_coordinate_for(math.log(3)), 3)


class ScenarioConfigTests(SimpleTestCase):
    def assertCode(self, code, **kwargs):
        with self.assertRaises(DomainError) as ctx:
            scenario(**kwargs)
        self.assertEqual(ctx.exception.code, code)

    def test_validacao(self):
        self.assertCode("bad_constant", c=1)
        self.assertCode("bad_epsilon", epsilon=Fraction(3, 2))
        self.assertCode("bad_rs", r=1)
        self.assertCode("bad_rs", r=0, s=1)
        self.assertCode("no_seeds", seeds=())
        self.assertCode("bad_relation", relation="matrix")
        self.assertCode("bad_oracle", oracle="sat")
        self.assertCode("dimension_mismatch", divisor=Divisor.coordinate([0], 2))
        self.assertCode("no_generators", generators=())

    def test_limiar_de_epsilon(self):
        self.assertEqual(epsilon_threshold("1/2"), Fraction(3, 4))
        self.assertEqual(epsilon_threshold(0), Fraction(1, 2))

    def test_s_estendido_com_gamma(self):
        config = scenario(gamma=GroupGamma(1, (TorusPoint.of(6),)), places=PlaceSet.of(["inf", 5]))
        places, added = config.effective_places()
        self.assertEqual(added, [2, 3])
        self.assertEqual(places.to_json(), ["inf", "2", "3", "5"])


class ScanTheorem1Tests(SimpleTestCase):
    def test_quadrado_sem_acertos_para_c_menor_que_1(self):
        report = scan_theorem1(scenario(seeds=(P("[1:2]"),), c=Fraction(9, 10), max_degree=16))
        self.assertEqual(report.hits, [])
        self.assertEqual(set(report.summary["statuses"]), {"none"})
        self.assertTrue(report.flags["max_degree"])
        self.assertFalse(report.budget_exhausted)
        self.assertTrue(any("nenhum acerto dentro dos orçamentos" in note for note in report.notes))

    def test_relacoes_do_quadrado(self):
        levels = [P("[1:2]")]
        for _ in range(6):
            levels.append(evaluate(SQUARE, levels[-1]))
        for n in range(1, 7):
            for m in range(n):
                self.assertEqual(power(levels[m], 2 ** (n - m)), levels[n])
                result = solve_dependence(torus_coords(levels[n]), torus_coords(levels[m]))
                self.assertTrue(result.found)
                rel = result.relation
                self.assertEqual((rel.r, rel.s, rel.gamma_exponents), (1, 2 ** (n - m), ()))
        for c in (Fraction(0), Fraction(1, 2), Fraction(99, 100)):
            report = scan_theorem1(scenario(seeds=(P("[1:2]"),), c=c, max_degree=64))
            self.assertEqual(report.hits, [])

    def test_ponto_fixo(self):
        report = scan_theorem1(scenario(seeds=(P("[1:1]"),)))
        got = {(h.deg_phi, h.deg_psi, h.relation.r, h.relation.s) for h in report.hits}
        self.assertEqual(got, {
            (2, 1, 1, 1), (2, 2, 2, 1), (2, 4, 4, 1),
            (4, 1, 1, 1), (4, 2, 1, 1), (4, 4, 2, 1),
        })
        for h in report.hits:
            self.assertLessEqual(h.ratio * h.deg_psi, Fraction(1, 2) * h.deg_phi)
            self.assertTrue(verify_relation(torus_coords(h.point_phi), torus_coords(h.point_psi), h.relation))
            self.assertIsNone(h.integrality_ratio)

    def test_livro_razao(self):
        report = scan_theorem1(scenario(seeds=(P("[1:1]"),)))
        steps = {s.name: s for s in report.hits[0].ledger}
        self.assertEqual(list(steps), [
            "growth_lower", "divisor_height", "hypothesis", "unit_relation", "outside_S_local",
            "divisor_constant", "growth_upper", "final_height", "dichotomy", "epsilon_threshold",
        ])
        self.assertTrue(steps["divisor_height"].holds)
        self.assertEqual(steps["growth_lower"].kind, "empirical")
        self.assertTrue(steps["growth_lower"].empirical)
        # ε = 1/2 abaixo de (1 + c)/2 = 3/4
        self.assertFalse(steps["epsilon_threshold"].holds)

        again = verify_inequality_chain(scenario(seeds=(P("[1:1]"),)), report.hits[0])
        self.assertEqual([s.name for s in again], list(steps))

    def test_acertos_crescem_com_c(self):
        keys = [scan_theorem1(scenario(c=c)).hit_keys() for c in (Fraction(1, 4), Fraction(1, 2), Fraction(9, 10))]
        self.assertLessEqual(keys[0], keys[1])
        self.assertLessEqual(keys[1], keys[2])

    def test_gamma_absorve_as_potencias(self):
        config = scenario(seeds=(P("[1:2]"),), gamma=GroupGamma(1, (TorusPoint.of(2),)))
        report = scan_theorem1(config)
        self.assertTrue(report.hits)
        self.assertIn("S estendido com os primos de Γ: [2]", report.notes)
        self.assertEqual(report.constants["places"], ["inf", "2"])
        for h in report.hits:
            self.assertTrue(verify_relation(torus_coords(h.point_phi), torus_coords(h.point_psi),
                                            h.relation, config.gamma))

    def test_orcamentos(self):
        report = scan_theorem1(scenario(seeds=(P("[1:2]"),), max_points=2))
        self.assertTrue(report.flags["max_points"])
        self.assertTrue(report.budget_exhausted)

        report = scan_theorem1(scenario(max_pairs=1))
        self.assertEqual(report.summary["pairs_tested"], 1)
        self.assertTrue(report.flags["max_pairs"])
        self.assertTrue(report.budget_exhausted)

    def test_determinismo(self):
        first = canonical_json(scan_theorem1(scenario()).to_json())
        self.assertEqual(first, canonical_json(scan_theorem1(scenario()).to_json()))

    def test_divisor_fora_das_coordenadas(self):
        config = scenario(divisor=Divisor.of(G1.forms[0]))
        with self.assertRaises(DomainError) as ctx:
            scan_theorem1(config)
        self.assertEqual(ctx.exception.code, "bad_divisor")


class OracleScanTests(SimpleTestCase):
    """Mapas de exemplo em escala reduzida: reticulado e força bruta dão os mesmos acertos."""

    def test_reticulado_contra_forca_bruta(self):
        maps = make_example_maps(1, 3, seed=5)
        common = {
            "generators": maps.generators,
            "divisor": maps.divisor,
            "seed_max_coordinate": 2,
            "max_degree": 3,
            "max_exponent": 20,
        }
        lattice = scan_theorem1(ScenarioConfig(**common))
        brute = scan_theorem1(ScenarioConfig(oracle="brute", **common))
        self.assertEqual(lattice.hit_keys(), brute.hit_keys())
        self.assertEqual(lattice.summary["pairs_tested"], brute.summary["pairs_tested"])
        self.assertEqual(replay_hits(ScenarioConfig(**common), lattice.to_json()), [])

    def test_cenario_ex46(self):
        raw = json.loads((settings.BASE_DIR / "scenarios" / "ex46.json").read_text(encoding="utf-8"))
        config = load_config(raw)
        lattice = scan_theorem1(config)
        brute = scan_theorem1(replace(config, oracle="brute"))
        self.assertEqual(lattice.hit_keys(), brute.hit_keys())
        self.assertEqual(lattice.summary["pairs_tested"], brute.summary["pairs_tested"])
        self.assertEqual(replay_hits(config, lattice.to_json()), [])
        self.assertEqual(canonical_json(lattice.to_json()), canonical_json(scan_theorem1(config).to_json()))

    def test_replay_acusa_divergencia(self):
        config = scenario(seeds=(P("[1:1]"),))
        data = scan_theorem1(config).to_json()
        data["hits"][0]["point_phi"] = ["1", "2"]
        problems = replay_hits(config, data)
        self.assertEqual(len(problems), 1)
        self.assertIn("pontos diferentes", problems[0])


class ScanTheorem2Tests(SimpleTestCase):
    def config(self, **kwargs):
        base = {"r": 1, "s": 1, "c": Fraction(3, 5), "max_degree": 8}
        base.update(kwargs)
        return scenario(**base)

    def test_ponto_fixo(self):
        report = scan_theorem2(self.config())
        self.assertEqual(report.summary["pairs_tested"], 12)
        self.assertEqual(report.summary["statuses"], {"found": 6, "none": 6})
        self.assertEqual(len(report.hits), 6)
        self.assertEqual(report.summary["seeds_with_hits"], ["[1:1]"])
        for h in report.hits:
            self.assertEqual(h.theorem, 2)
            self.assertEqual(h.deg_phi, 2 ** len(h.phi))
            self.assertEqual(h.ledger[0].name, "canonical_scaling")

    def test_iterados(self):
        report = scan_theorem2(self.config(corollary=True))
        for h in report.hits:
            self.assertGreater(h.extra["n"], h.extra["m"])
            self.assertTrue(h.extra["iterate_condition"])
            self.assertEqual(h.extra["log_ratio_over_log_d"], 0.0)
        with self.assertRaises(DomainError) as ctx:
            scan_theorem2(self.config(generators=(G1, G2), corollary=True))
        self.assertEqual(ctx.exception.code, "corollary_single_map")

    def test_exige_r_e_s(self):
        with self.assertRaises(DomainError) as ctx:
            scan_theorem2(scenario())
        self.assertEqual(ctx.exception.code, "bad_rs")

    def test_gamma(self):
        config = self.config(seeds=(P("[1:2]"),), gamma=GroupGamma(1, (TorusPoint.of(2),)))
        report = scan_theorem2(config)
        self.assertEqual(len(report.hits), 6)
        by_words = {(len(h.phi), len(h.psi)): h.relation.gamma_exponents for h in report.hits}
        # 4/2 = 2 e 256/16 = 2^4
        self.assertEqual(by_words[(1, 0)], (1,))
        self.assertEqual(by_words[(1, 2)], (4,))

    @override_settings(ARITMETICA={"MAX_DIGITS": 100, "CANONICAL_MAX_DIGITS": 100})
    def test_altura_canonica_indisponivel_vai_para_as_notas(self):
        config = self.config(seeds=(P("[1:2]"),), gamma=GroupGamma(1, (TorusPoint.of(2),)))
        with self.assertLogs("aritmetica.experiments", level="WARNING"):
            report = scan_theorem2(config)
        self.assertEqual(len(report.hits), 6)
        degraded = [h for h in report.hits if any(s.note.startswith(CANONICAL_UNAVAILABLE) for s in h.ledger)]
        self.assertTrue(degraded)
        self.assertIn(8, {h.deg_phi for h in degraded})
        self.assertEqual(sum(CANONICAL_UNAVAILABLE in note for note in report.notes), len(degraded))

    def test_razao_excluida(self):
        # |s/r| = 2 só cabe em c·deg φ com deg φ ≥ 4
        report = scan_theorem2(self.config(r=1, s=2))
        self.assertEqual(len(report.hits), 3)
        self.assertEqual(min(h.deg_phi for h in report.hits), 4)
        self.assertEqual(report.summary["ratio_excluded"], 6)
        self.assertEqual(report.summary["statuses"], {"found": 9, "none": 3})


class HypScanTests(SimpleTestCase):
    def test_razao_de_integralidade(self):
        config = scenario(divisor=Divisor.coordinate([0], 1), seeds=(P("[2:3]"),), max_degree=1)
        report = hyp_scan(config)
        self.assertEqual(len(report.points), 1)
        self.assertAlmostEqual(report.points[0]["ratio"], math.log(2) / math.log(3), places=12)
        self.assertFalse(report.points[0]["quasi_integral"])
        self.assertFalse(report.budget_exhausted)

        flagged = hyp_scan(scenario(divisor=Divisor.coordinate([0], 1), seeds=(P("[2:3]"),),
                                    max_degree=1, epsilon=Fraction(3, 4)))
        self.assertEqual(flagged.summary["flagged"], 1)
        self.assertEqual(flagged.summary["vanishing"]["degree"], 1)
        self.assertFalse(flagged.summary["certified"])

    def test_razao_constante_nos_iterados(self):
        config = scenario(divisor=Divisor.coordinate([0], 1), seeds=(P("[2:3]"),), max_degree=1024)
        report = hyp_scan(config)
        self.assertEqual([p["word"] for p in report.points], [str(Word((1,) * n)) for n in range(11)])
        for point in report.points:
            self.assertAlmostEqual(point["ratio"], math.log(2) / math.log(3), places=12)

    def test_monotono_em_epsilon(self):
        flagged = []
        for eps in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            config = scenario(generators=(G1, G2), seeds=(), seed_max_coordinate=3, epsilon=eps)
            report = hyp_scan(config)
            self.assertTrue(report.points)
            flagged.append({(p["seed"], p["word"]) for p in report.points if p["quasi_integral"]})
            self.assertEqual(report.summary["flagged"], len(flagged[-1]))
        self.assertLessEqual(flagged[0], flagged[1])
        self.assertLessEqual(flagged[1], flagged[2])

    def test_pontos_de_altura_zero_anotados(self):
        report = hyp_scan(scenario(seeds=(P("[1:1]"),), max_degree=1))
        self.assertEqual(report.points, [])
        self.assertTrue(any("altura zero" in note for note in report.notes))


class RunConstantsTests(SimpleTestCase):
    def test_quadrado(self):
        report = run_constants(scenario(seeds=(P("[1:2]"), P("[2:3]"), P("[1:-3]"))))
        self.assertAlmostEqual(report.constants["C1_hat"], 0.0, places=9)
        self.assertEqual(report.summary["growth_bound_violations"], [])
        self.assertEqual(report.constants["C2"], 0.0)
        self.assertAlmostEqual(report.constants["C3"], 0.0)
        self.assertFalse(report.budget_exhausted)
