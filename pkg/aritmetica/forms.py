# aritmetica/forms.py
from __future__ import annotations

import json
from typing import Any

from django import forms

from .dynamics import Endomorphism, make_example_maps
from .exceptions import ConfigError, DomainError
from .experiments import ORACLES, RELATION_MODES, SCHEMA_VERSION, ScenarioConfig, max_coordinate_for
from .heights import Divisor, PlaceSet
from .multdep import GroupGamma
from .projective import ProjectivePoint

JSON_FIELDS = ("generators", "example", "divisor", "places", "gamma", "seeds", "output")

# código do DomainError -> campo que recebe a mensagem
CODE_FIELDS = {
    "bad_constant": "c",
    "bad_epsilon": "epsilon",
    "bad_rs": "r",
    "no_seeds": "seeds",
    "bad_relation": "relation",
    "bad_oracle": "oracle",
    "bad_tolerance": "canonical_tolerance",
    "no_generators": "generators",
}


def parse_config_text(text: str) -> dict:
    """JSON do cenário; erro de sintaxe vira diagnóstico com linha e coluna."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"json: linha {exc.lineno}, coluna {exc.colno}: {exc.msg}"]) from exc
    if not isinstance(data, dict):
        raise ConfigError(["json: o cenário deve ser um objeto"])
    return data


# ---------------------------
# Cenário
# ---------------------------
class ScenarioConfigForm(forms.Form):
    schema = forms.IntegerField(min_value=SCHEMA_VERSION, max_value=SCHEMA_VERSION)
    dimension = forms.IntegerField(min_value=1, required=False)
    generators = forms.JSONField(required=False)
    example = forms.JSONField(required=False)
    divisor = forms.JSONField(required=False)
    places = forms.JSONField(required=False)
    gamma = forms.JSONField(required=False)
    c = forms.CharField(required=False)
    epsilon = forms.CharField(required=False)
    r = forms.IntegerField(required=False)
    s = forms.IntegerField(required=False)
    seeds = forms.JSONField(required=False)
    seed_height_bound = forms.FloatField(min_value=0, required=False)
    seed_max_coordinate = forms.IntegerField(min_value=1, required=False)
    max_degree = forms.IntegerField(min_value=1, required=False)
    max_points = forms.IntegerField(min_value=1, required=False)
    max_pairs = forms.IntegerField(min_value=1, required=False)
    max_digits = forms.IntegerField(min_value=1, required=False)
    relation = forms.ChoiceField(choices=[(m, m) for m in RELATION_MODES], required=False)
    oracle = forms.ChoiceField(choices=[(o, o) for o in ORACLES], required=False)
    max_exponent = forms.IntegerField(min_value=1, required=False)
    corollary = forms.BooleanField(required=False)
    canonical_tolerance = forms.FloatField(required=False)
    random_seed = forms.IntegerField(required=False)
    output = forms.JSONField(required=False)

    def __init__(self, raw: dict[str, Any], *args, **kwargs):
        # campos JSON chegam já decodificados; o JSONField espera texto
        data = {k: (json.dumps(v) if k in JSON_FIELDS and v is not None else v) for k, v in raw.items()}
        super().__init__(data, *args, **kwargs)
        self.unknown = sorted(set(raw) - set(self.fields))
        self.config: ScenarioConfig | None = None

    def _build(self, field: str, builder, *args):
        try:
            return builder(*args)
        except DomainError as exc:
            self.add_error(field, str(exc))
        except (TypeError, ValueError, KeyError) as exc:
            self.add_error(field, f"valor inválido ({exc})")
        return None

    def _generators(self, cd):
        if cd.get("example"):
            exemplo = cd["example"]
            if not isinstance(exemplo, dict) or "N" not in exemplo or "d" not in exemplo:
                raise DomainError("esperado {'N': ..., 'd': ..., 'seed': ...}", code="bad_example")
            maps = make_example_maps(int(exemplo["N"]), int(exemplo["d"]), int(exemplo.get("seed", 0)),
                                     exemplo.get("variant", "linear"), exemplo.get("e"))
            return maps.generators, maps.divisor
        raw = cd.get("generators")
        if not isinstance(raw, list) or not raw:
            raise DomainError("informe 'generators' (lista de mapas) ou 'example'", code="no_generators")
        return tuple(Endomorphism.from_json(g, label=f"φ{i}") for i, g in enumerate(raw, start=1)), None

    def clean(self):
        cd = super().clean()
        for name in self.unknown:
            self.add_error(None, f"{name}: campo desconhecido")
        if self.errors:
            return cd

        built = self._build("generators", self._generators, cd)
        if built is None:
            return cd
        generators, example_divisor = built
        N = generators[0].dimension
        if cd.get("dimension") and cd["dimension"] != N:
            self.add_error("dimension", f"os geradores vivem em P^{N}")
            return cd

        if cd.get("divisor") is not None:
            divisor = self._build("divisor", Divisor.from_json, cd["divisor"], N)
        else:
            divisor = example_divisor or Divisor.coordinate(range(N + 1), N)
        places = self._build("places", PlaceSet.of, cd.get("places") or [])
        gamma = self._build("gamma", GroupGamma.from_json, cd.get("gamma"), N)
        seeds = self._build("seeds", lambda raw: tuple(ProjectivePoint.parse(str(p)) for p in raw),
                            cd.get("seeds") or [])
        output = cd.get("output") or {}
        if not isinstance(output, dict) or set(output) - {"json", "csv", "xlsx"}:
            self.add_error("output", "esperado {'json': ..., 'csv': ..., 'xlsx': ...}")
        if self.errors:
            return cd

        max_coordinate = cd.get("seed_max_coordinate")
        if max_coordinate is None and cd.get("seed_height_bound") is not None:
            max_coordinate = max_coordinate_for(cd["seed_height_bound"])

        kwargs: dict[str, Any] = {
            "generators": generators,
            "divisor": divisor,
            "places": places,
            "gamma": gamma,
            "seeds": seeds,
            "seed_max_coordinate": max_coordinate,
            "corollary": bool(cd.get("corollary")),
            "outputs": output,
        }
        for name in ("c", "epsilon", "relation", "oracle"):
            if cd.get(name):
                kwargs[name] = cd[name]
        for name in ("r", "s", "max_degree", "max_points", "max_pairs", "max_digits",
                     "max_exponent", "canonical_tolerance", "random_seed"):
            if cd.get(name) is not None:
                kwargs[name] = cd[name]
        try:
            self.config = ScenarioConfig(**kwargs)
        except DomainError as exc:
            self.add_error(CODE_FIELDS.get(exc.code), str(exc))
        return cd

    def diagnostics(self) -> list[str]:
        out = []
        for field, errors in self.errors.items():
            for msg in errors:
                out.append(msg if field == "__all__" else f"{field}: {msg}")
        return out


def load_config(raw: dict[str, Any], overrides: dict[str, Any] | None = None) -> ScenarioConfig:
    """Valida o cenário (com as sobreposições da linha de comando) ou levanta ConfigError."""
    data = dict(raw)
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    form = ScenarioConfigForm(data)
    if not form.is_valid() or form.config is None:
        raise ConfigError(form.diagnostics() or ["config: cenário inválido"])
    return form.config
