# aritmetica/reports.py
"""Saída dos relatórios: JSON canônico (máquina), CSV e XLSX (tabela de acertos)."""
from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path
from typing import Any

import pandas as pd

from .experiments import ScanReport

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "seed", "word_phi", "word_psi", "deg_phi", "deg_psi",
    "r", "s", "ratio", "height_nats", "integrality_ratio",
]


def canonical_json(data: Any) -> str:
    """Chaves ordenadas e separadores fixos: mesma entrada, mesmos bytes."""
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def report_digest(report: ScanReport | dict) -> str:
    data = report.to_json() if isinstance(report, ScanReport) else report
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


def hits_frame(report: ScanReport) -> pd.DataFrame:
    return pd.DataFrame([h.csv_row() for h in report.hits], columns=CSV_COLUMNS)


def points_frame(report: ScanReport) -> pd.DataFrame:
    """Tabela dos pontos da varredura da hipótese (sem as coordenadas, que podem ser enormes)."""
    cols = ["seed", "word", "ratio", "quasi_integral", "margin", "height", "outside_S"]
    return pd.DataFrame([{k: p.get(k) for k in cols} for p in report.points], columns=cols)


def write_json(report: ScanReport, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(report.to_json()), encoding="utf-8")
    return path


def write_csv(report: ScanReport, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = points_frame(report) if report.kind == "hyp-scan" else hits_frame(report)
    frame.to_csv(path, index=False)
    return path


def write_xlsx(report: ScanReport, path: str | Path) -> Path:
    try:
        import openpyxl  # noqa
    except ImportError as exc:
        raise RuntimeError("Falta 'openpyxl' para .xlsx. Instale: pip install openpyxl (ou use CSV).") from exc
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with pd.ExcelWriter(path, engine="openpyxl") as writer:
        hits_frame(report).to_excel(writer, sheet_name="acertos", index=False)
        if report.points:
            points_frame(report).to_excel(writer, sheet_name="pontos", index=False)
        flags = pd.DataFrame(sorted(report.flags.items()), columns=["flag", "valor"])
        flags.to_excel(writer, sheet_name="flags", index=False)
    return path


def write_report(report: ScanReport, outputs: dict[str, str | None]) -> list[Path]:
    """Grava nos destinos pedidos (chaves json/csv/xlsx); devolve os caminhos escritos."""
    writers = {"json": write_json, "csv": write_csv, "xlsx": write_xlsx}
    written = []
    for key, writer in writers.items():
        target = outputs.get(key)
        if target:
            written.append(writer(report, target))
            logger.info("relatório %s gravado em %s", key, target)
    return written
