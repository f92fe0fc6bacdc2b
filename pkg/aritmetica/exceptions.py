# aritmetica/exceptions.py
from __future__ import annotations

from django.core.exceptions import ValidationError


class DomainError(ValidationError):
    """Entrada fora do domínio de uma operação (zero, ponto no divisor, ...).

    Segue o padrão do projeto: erro de validação com `code` estável, que a CLI
    converte em diagnóstico e os testes comparam por código.
    """

    def __init__(self, message: str, code: str = "domain"):
        super().__init__(message, code=code)

    def __str__(self) -> str:
        return "; ".join(self.messages)


class IndeterminateError(DomainError):
    """Todas as formas se anulam no ponto; guarda o prefixo/estágio que falhou."""

    def __init__(self, message: str, prefix: tuple[int, ...] = (), stage: int | None = None):
        super().__init__(message, code="indeterminate")
        self.prefix = prefix
        self.stage = stage


class BudgetExceeded(RuntimeError):
    """Orçamento esgotado (dígitos, estágios, pontos)."""

    def __init__(self, message: str, budget: str = "budget"):
        super().__init__(message)
        self.budget = budget


class ConfigError(ValueError):
    """Cenário inválido; `diagnostics` traz linhas no formato 'campo: mensagem'."""

    def __init__(self, diagnostics: list[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = list(diagnostics)
