# aritmetica/cli.py
from __future__ import annotations

import sys
from typing import Sequence, TextIO

from django.core.management import call_command
from django.core.management.base import CommandError


def cli(args: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    """Roda `manage.py aritmetica <args>` e devolve o código de saída.

    Erro de argumentos conta como cenário inválido (2).
    """
    err = stderr or sys.stderr
    try:
        call_command("aritmetica", *args, stdout=stdout or sys.stdout, stderr=err)
    except CommandError as exc:
        err.write(f"{exc}\n")
        return 2 if exc.returncode == 1 else exc.returncode
    return 0
