# aritmetica/conf.py
from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from typing import Any, Iterator

from django.conf import settings

# Espelha os defaults de alturas/settings.py para quando o dict vier incompleto
DEFAULTS: dict[str, Any] = {
    "TRIAL_DIVISION_BOUND": 10**6,
    "MAX_DIGITS": 5000,
    "KERNEL_ENUMERATION_BOUND": 25,
    "VECTOR_ENUMERATION_BOUND": 4,
    "MORPHISM_CHECK_PRIMES": [2, 3, 5, 7, 11, 13, 17],
    "EXAMPLE_MAX_RETRIES": 200,
    "CANONICAL_MAX_STAGES": 200,
    "CANONICAL_MAX_DIGITS": 100_000,
    "PARTIAL_FACTOR_BOUND": 2**15,
}

_overrides: ContextVar[dict[str, Any]] = ContextVar("aritmetica_overrides", default={})


def get(name: str) -> Any:
    """Lê settings.ARITMETICA[name] na hora da chamada (override_settings funciona)."""
    local = _overrides.get()
    if name in local:
        return local[name]
    return getattr(settings, "ARITMETICA", {}).get(name, DEFAULTS[name])


@contextmanager
def override(**values: Any) -> Iterator[None]:
    """Valores de um cenário (ex.: max_digits) valendo só durante a varredura."""
    unknown = set(values) - set(DEFAULTS)
    if unknown:
        raise KeyError(f"chaves desconhecidas: {sorted(unknown)}")
    token = _overrides.set({**_overrides.get(), **{k: v for k, v in values.items() if v is not None}})
    try:
        yield
    finally:
        _overrides.reset(token)
