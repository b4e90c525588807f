"""
Relatório de execução da CLI: JSON, CSV ou texto
"""

import io
import json
from dataclasses import asdict, dataclass

import numpy as np
import pandas as pd

from ghz_ising.errors import ValidationError

FORMATS = ("json", "csv", "text")


def to_native(value):
    """Converte tipos numpy e tuplas em tipos JSON nativos (listas, float, int)."""
    if isinstance(value, dict):
        return {str(k): to_native(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_native(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_native(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


@dataclass
class Report:
    """
    Relatório de um comando.

    payload["rows"] contém a tabela principal do comando (lista de registros),
    usada pelas saídas CSV e texto.
    """

    version: str
    command: str
    config: dict
    payload: dict
    started_at: str
    duration_s: float

    def __post_init__(self):
        self.config = to_native(self.config)
        self.payload = to_native(self.payload)

    @property
    def ok(self):
        return bool(self.payload.get("ok", True))

    def to_json(self, indent=2):
        # repr de float do Python é a menor representação exata (<= 17 dígitos)
        return json.dumps(asdict(self), indent=indent, ensure_ascii=False)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        missing = {"version", "command", "config", "payload", "started_at", "duration_s"} - set(data)
        if missing:
            raise ValidationError(f"Relatório sem os campos: {sorted(missing)}")
        return cls(**data)

    def rows_frame(self):
        rows = self.payload.get("rows") or []
        return pd.json_normalize(rows) if rows else pd.DataFrame()

    def to_csv(self):
        frame = self.rows_frame()
        frame.insert(0, "command", self.command)
        frame.insert(1, "version", self.version)
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, float_format="%.17g")
        return buffer.getvalue()

    def to_text(self):
        lines = [
            f"=== GHZ-ISING {self.version}: {self.command.upper()} ===",
            f"Início: {self.started_at}  |  Duração: {self.duration_s:.3f} s",
            "",
            "Configuração:",
        ]
        for key, value in self.config.items():
            lines.append(f"   {key}: {value}")
        lines.append("")
        lines.append("Resultado:")
        for key, value in self.payload.items():
            if key == "rows" or isinstance(value, (list, dict)):
                continue
            lines.append(f"   {key}: {value}")
        frame = self.rows_frame()
        if not frame.empty:
            lines.append("")
            lines.append(frame.to_string(index=False))
        return "\n".join(lines) + "\n"

    def render(self, fmt):
        if fmt == "json":
            return self.to_json() + "\n"
        if fmt == "csv":
            return self.to_csv()
        if fmt == "text":
            return self.to_text()
        raise ValidationError(f"Formato deve ser um de {FORMATS}, recebido: '{fmt}'")
