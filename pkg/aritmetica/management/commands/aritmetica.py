# aritmetica/management/commands/aritmetica.py
"""Linha de comando: alturas, órbitas, dependências e varreduras de cenário.

    python manage.py aritmetica height --point "[3:4:12]"
    python manage.py aritmetica deps --q1 4 --q2 2
    python manage.py aritmetica scan-t1 --config scenarios/ex46.json --json out.json

Saída 0 em sucesso, 2 em cenário inválido, 3 quando o orçamento cortou a
varredura (o relatório parcial já foi gravado).
"""
from __future__ import annotations

from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from aritmetica.dynamics import (
    Endomorphism,
    OrbitBudget,
    example_hypothesis_margin,
    make_example_maps,
    orbit_enumerate,
)
from aritmetica.exceptions import BudgetExceeded, ConfigError, DomainError
from aritmetica.experiments import (
    epsilon_threshold,
    hyp_scan,
    run_constants,
    scan_theorem1,
    scan_theorem2,
)
from aritmetica.forms import load_config, parse_config_text
from aritmetica.heights import (
    Divisor,
    all_places_height,
    decomposition_residue,
    divisor_height,
    local_height_exact,
    weil_height,
)
from aritmetica.models import ScanRun
from aritmetica.multdep import (
    DependenceConstraint,
    GroupGamma,
    brute_force_dependence,
    solve_dependence,
    solve_vector_dependence,
)
from aritmetica.number_core import Place, factor
from aritmetica.polynomials import HomogeneousForm
from aritmetica.projective import ProjectivePoint, TorusPoint
from aritmetica.reports import canonical_json, report_digest, write_report

SCANS = {
    "scan-t1": scan_theorem1,
    "scan-t2": scan_theorem2,
    "hyp-scan": hyp_scan,
    "constants": run_constants,
}

# flag da linha de comando -> campo do cenário
OVERRIDES = {
    "c": "c",
    "epsilon": "epsilon",
    "r": "r",
    "s": "s",
    "seed": "random_seed",
    "max_degree": "max_degree",
    "max_points": "max_points",
    "max_pairs": "max_pairs",
    "max_digits": "max_digits",
    "relation": "relation",
    "oracle": "oracle",
}


def parse_map(text: str, label: str = "") -> Endomorphism:
    """'[X0**2 : X1**2]' -> Endomorphism."""
    body = str(text).strip().strip("[]")
    return Endomorphism.parse([p.strip() for p in body.split(":")], label)


def read_config_file(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError([f"config: não foi possível ler {path} ({exc.strerror})"]) from exc
    return parse_config_text(text)


class Command(BaseCommand):
    help = "Alturas, órbitas de semigrupo, dependência multiplicativa e varreduras de cenário."

    def add_arguments(self, parser):
        sub = parser.add_subparsers(dest="action", required=True)

        p = sub.add_parser("height", help="h(P) exata, com fatoração da maior coordenada")
        p.add_argument("--point", required=True, help='ponto "[a0:...:aN]"')
        p.add_argument("--divisor", help="forma F de D para h(D, P)")

        p = sub.add_parser("local-height", help="λ_v(D, P) em um lugar (ou em todos os do suporte)")
        p.add_argument("--point", required=True)
        p.add_argument("--divisor", required=True, help='forma F, ex.: "X0*X1"')
        p.add_argument("--place", default="inf", help='"inf" ou um primo')
        p.add_argument("--all", action="store_true", help="todos os lugares com λ_v ≠ 0 e o resíduo da soma")

        p = sub.add_parser("orbit", help="enumeração BFS da órbita de uma semente")
        p.add_argument("--map", action="append", dest="maps", default=[],
                       help='gerador "[F0 : ... : FN]" (repetível, na ordem φ1, φ2, ...)')
        p.add_argument("--config", help="cenário JSON de onde tirar os geradores")
        p.add_argument("--seed-point", required=True)
        p.add_argument("--max-degree", type=int, default=64)
        p.add_argument("--max-points", type=int, default=200)
        p.add_argument("--json", action="store_true", help="saída em JSON")

        p = sub.add_parser("deps", help="relação q1^r = u·q2^s com u em Γ")
        p.add_argument("--q1", required=True, help='ponto do toro: "4" ou "(2, 3)"')
        p.add_argument("--q2", required=True)
        p.add_argument("--gamma", action="append", default=[], help="gerador de Γ (repetível)")
        p.add_argument("--ratio-bound", help="cota para |s/r| (racional)")
        p.add_argument("--oracle", choices=["lattice", "brute"], default="lattice")
        p.add_argument("--max-exponent", type=int, default=6, help="faixa do oráculo de força bruta")
        p.add_argument("--vector", action="store_true", help="relação com r, s vetoriais")

        for name, runner in SCANS.items():
            p = sub.add_parser(name, help=(runner.__doc__ or "").strip().splitlines()[0])
            p.add_argument("--config", required=True, help="cenário JSON (schema 1)")
            p.add_argument("--c")
            p.add_argument("--epsilon")
            p.add_argument("--r", type=int)
            p.add_argument("--s", type=int)
            p.add_argument("--seed", type=int, help="semente do gerador pseudoaleatório")
            p.add_argument("--max-degree", type=int)
            p.add_argument("--max-points", type=int)
            p.add_argument("--max-pairs", type=int)
            p.add_argument("--max-digits", type=int)
            p.add_argument("--relation", choices=["scalar", "vector"])
            p.add_argument("--oracle", choices=["lattice", "brute"])
            p.add_argument("--corollary", action="store_true", help="iterados de um único mapa")
            p.add_argument("--json", dest="json_out", help="relatório JSON")
            p.add_argument("--csv", dest="csv_out", help="tabela CSV")
            p.add_argument("--xlsx", dest="xlsx_out", help="planilha XLSX (openpyxl)")
            p.add_argument("--save", action="store_true", help="guarda a execução no banco")

        p = sub.add_parser("make-example", help="par de mapas com formas lineares em posição geral")
        p.add_argument("--N", type=int, required=True)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--e", type=int)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--variant", choices=["linear", "product"], default="linear")
        p.add_argument("--c", default="1/2")
        p.add_argument("--out", help="grava o JSON dos mapas neste arquivo")

    def handle(self, *args, **opts):
        action = opts["action"]
        try:
            if action in SCANS:
                self.do_scan(action, opts)
            else:
                getattr(self, "do_" + action.replace("-", "_"))(opts)
        except ConfigError as exc:
            raise CommandError("\n".join(exc.diagnostics), returncode=2) from exc
        except DomainError as exc:
            code = exc.error_list[0].code if exc.error_list else "domain"
            raise CommandError(f"{code}: {exc}", returncode=2) from exc
        except BudgetExceeded as exc:
            raise CommandError(f"orçamento esgotado ({exc.budget}): {exc}", returncode=3) from exc

    # ---------------------------
    # Alturas
    # ---------------------------
    def do_height(self, opts):
        P = ProjectivePoint.parse(opts["point"])
        h = weil_height(P)
        top = max(abs(a) for a in P.coords)
        self.stdout.write(f"h({P}) = log {top} = {h.total():.12f} nats")
        if top > 1:
            self.stdout.write(f"{top} = {factor(top)}")
        if opts.get("divisor"):
            D = Divisor.of(HomogeneousForm.parse(opts["divisor"], P.dimension + 1))
            self.stdout.write(f"h(D, {P}) = {divisor_height(D, P).total():.12f} nats  (D = {D})")

    def do_local_height(self, opts):
        P = ProjectivePoint.parse(opts["point"])
        D = Divisor.of(HomogeneousForm.parse(opts["divisor"], P.dimension + 1))
        if not opts["all"]:
            v = Place.parse(opts["place"])
            value = local_height_exact(v, D, P)
            self.stdout.write(f"λ_{v}({D}, {P}) = {value.total():.12f}")
            return
        F = D.value_at(P)
        places = [Place.archimedean()] + [Place.finite(p) for p in factor(F).primes] if F else []
        if not places:
            raise DomainError(f"{P} está no suporte de {D}", code="on_divisor")
        for v in places:
            self.stdout.write(f"λ_{v} = {local_height_exact(v, D, P).total():.12f}")
        total = all_places_height(D, P).total()
        residue = decomposition_residue(D, P)
        self.stdout.write(f"Σ_v λ_v = {total:.12f}; deg(D)·h(P) = {D.degree * weil_height(P).total():.12f}")
        msg = f"resíduo finito exato: {residue.finite or 0}; arquimediano: {residue.arch:.3e}"
        self.stdout.write(self.style.SUCCESS(msg) if residue.exact else self.style.WARNING(msg))

    # ---------------------------
    # Órbitas
    # ---------------------------
    def do_orbit(self, opts):
        if opts.get("config"):
            config = load_config(read_config_file(opts["config"]), {"seeds": [opts["seed_point"]]})
            generators = config.generators
        elif opts["maps"]:
            generators = tuple(parse_map(t, f"φ{i}") for i, t in enumerate(opts["maps"], start=1))
        else:
            raise ConfigError(["map: informe --map ou --config"])
        seed = ProjectivePoint.parse(opts["seed_point"])
        orbit = orbit_enumerate(generators, seed, OrbitBudget(opts["max_degree"], opts["max_points"]))
        if opts["json"]:
            rows = [{
                "index": rec.index,
                "word": str(rec.word),
                "degree": rec.degree,
                "point": rec.point.to_json(),
                "height": rec.height.total(),
                "first_index": rec.first_index,
            } for rec in orbit]
            self.stdout.write(canonical_json({"records": rows, "exhausted": orbit.exhausted}), ending="")
        else:
            for rec in orbit:
                dup = f"  (= #{rec.first_index})" if rec.is_duplicate else ""
                self.stdout.write(f"#{rec.index:<4} {str(rec.word):<12} deg {rec.degree:<5} "
                                  f"h = {rec.height.total():.6f}  {rec.point}{dup}")
        for word, reason in orbit.skipped:
            self.stderr.write(self.style.WARNING(f"palavra {word} pulada: {reason}"))
        cut = [k for k, v in orbit.exhausted.items() if v]
        if cut:
            self.stderr.write(self.style.WARNING(f"orçamentos atingidos: {', '.join(cut)}"))

    # ---------------------------
    # Dependência
    # ---------------------------
    def do_deps(self, opts):
        q1, q2 = TorusPoint.parse(opts["q1"]), TorusPoint.parse(opts["q2"])
        gamma = GroupGamma(q1.dimension, tuple(TorusPoint.parse(g) for g in opts["gamma"]))
        constraint = DependenceConstraint(ratio_bound=opts["ratio_bound"])
        if opts["vector"]:
            result = solve_vector_dependence(q1, q2, gamma, constraint)
        elif opts["oracle"] == "brute":
            result = brute_force_dependence(q1, q2, gamma, opts["max_exponent"], constraint.ratio_bound)
        else:
            result = solve_dependence(q1, q2, gamma, constraint)
        if result.found:
            rel = result.relation.to_json()
            self.stdout.write(self.style.SUCCESS(
                f"relação: r={rel['r']}, s={rel['s']}, e={rel['gamma_exponents']}, u={result.relation.unit}"
            ))
        else:
            self.stdout.write(self.style.WARNING(f"sem relação ({result.status}) {result.note}".rstrip()))
        self.stdout.write(canonical_json(result.to_json()), ending="")

    # ---------------------------
    # Varreduras
    # ---------------------------
    def _overrides(self, opts) -> dict:
        out = {field: opts.get(flag) for flag, field in OVERRIDES.items() if opts.get(flag) is not None}
        if opts.get("corollary"):
            out["corollary"] = True
        return out

    def do_scan(self, action, opts):
        raw = read_config_file(opts["config"])
        config = load_config(raw, self._overrides(opts))
        report = SCANS[action](config)

        outputs = dict(config.outputs)
        for key in ("json", "csv", "xlsx"):
            if opts.get(f"{key}_out"):
                outputs[key] = opts[f"{key}_out"]
        try:
            written = write_report(report, outputs)
        except RuntimeError as exc:
            raise CommandError(str(exc), returncode=2) from exc
        if not outputs.get("json"):
            self.stdout.write(canonical_json(report.to_json()), ending="")
        for path in written:
            self.stderr.write(f"gravado: {path}")

        if opts["save"]:
            run = ScanRun.objects.create(
                kind=action,
                random_seed=config.random_seed,
                config_json=report.config,
                report_json=report.to_json(),
                hits=len(report.hits),
                budget_exhausted=report.budget_exhausted,
                digest=report_digest(report),
            )
            self.stderr.write(self.style.SUCCESS(f"execução #{run.pk} guardada"))

        summary = f"{action}: {len(report.hits)} acertos"
        if "pairs_tested" in report.summary:
            summary += f" em {report.summary['pairs_tested']} pares"
        if report.flags.get("inconclusive"):
            summary += f", {report.flags['inconclusive']} inconclusivos"
        if report.budget_exhausted:
            cut = [k for k, v in report.flags.items() if v is True and k.startswith("max_")]
            self.stderr.write(self.style.WARNING(summary))
            raise CommandError(f"orçamento esgotado ({', '.join(cut)}); relatório parcial gravado",
                               returncode=3)
        self.stderr.write(self.style.SUCCESS(summary))

    # ---------------------------
    # Exemplos
    # ---------------------------
    def do_make_example(self, opts):
        maps = make_example_maps(opts["N"], opts["d"], opts["seed"], opts["variant"], opts["e"])
        data = maps.to_json()
        data["c"] = str(opts["c"])
        data["epsilon_threshold"] = str(epsilon_threshold(opts["c"]))
        if opts["variant"] == "linear":
            data["hypothesis_margin"] = example_hypothesis_margin(opts["N"], opts["d"], opts["c"])
        text = canonical_json(data)
        if opts.get("out"):
            Path(opts["out"]).write_text(text, encoding="utf-8")
            self.stderr.write(f"gravado: {opts['out']}")
        else:
            self.stdout.write(text, ending="")
        for phi in maps.generators:
            self.stderr.write(f"{phi.label}: {maps.morphism.get(phi.label, '?')}, grau {phi.degree}")
        margin = data.get("hypothesis_margin")
        if margin is not None:
            style = self.style.SUCCESS if margin > 0 else self.style.WARNING
            self.stderr.write(style(f"margem da hipótese para c = {opts['c']}: {margin:.6f}"))
