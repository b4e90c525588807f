"""
Configurações padrão e leitura de variáveis de ambiente (.env)
"""

import os
from dataclasses import dataclass, fields, replace

from dotenv import load_dotenv

from ghz_ising.errors import ValidationError

ENV_PREFIX = "GHZ_ISING_"

# Limites de tamanho
PAULI_DENSE_CAP = 10         # to_matrix de uma string de Pauli
HAMILTONIAN_DENSE_CAP = 14   # diagonalização densa (2^14 = 16384)
SCAN_CAP = 8                 # varredura 4^n de estabilizadores
BRUTE_FORCE_CAP = 24         # variáveis na enumeração exaustiva
STATE_VECTOR_CAP = 24        # vetores de estado com 2^n amplitudes

# Tolerâncias
TOL_EIGEN = 1e-10            # equações de autovalor para estados de forma fechada
TOL_EIGEN_NUMERIC = 1e-8     # estados vindos do diagonalizador
TOL_DEGENERACY = 1e-8
TOL_STABILIZER = 1e-8

# Experimentos
DEFAULT_SHOTS = 10_000
DEFAULT_SEED = 0
GENERATOR_NAME = "PCG64"

MAX_WORKERS = 4


@dataclass(frozen=True)
class Settings:
    """Valores efetivos após aplicar o .env e as variáveis de ambiente."""

    dense_cap: int = HAMILTONIAN_DENSE_CAP
    scan_cap: int = SCAN_CAP
    brute_force_cap: int = BRUTE_FORCE_CAP
    state_vector_cap: int = STATE_VECTOR_CAP
    tol_eigen: float = TOL_EIGEN
    tol_eigen_numeric: float = TOL_EIGEN_NUMERIC
    tol_degeneracy: float = TOL_DEGENERACY
    tol_stabilizer: float = TOL_STABILIZER
    shots: int = DEFAULT_SHOTS
    seed: int = DEFAULT_SEED
    max_workers: int = MAX_WORKERS

    def with_overrides(self, **overrides):
        """Retorna cópia com os valores não-nulos de `overrides`."""
        valid = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **valid)


def _convert(name, raw, target_type):
    try:
        value = target_type(raw)
    except ValueError:
        raise ValidationError(
            f"Variável {ENV_PREFIX}{name.upper()} inválida: '{raw}' (esperado {target_type.__name__})"
        )
    if name == "seed":
        if value < 0:
            raise ValidationError(f"Variável {ENV_PREFIX}{name.upper()} não pode ser negativa: {value}")
    elif target_type is float:
        if not value > 0:
            raise ValidationError(f"Variável {ENV_PREFIX}{name.upper()} deve ser positiva: {value}")
    elif value < 1:
        raise ValidationError(f"Variável {ENV_PREFIX}{name.upper()} deve ser >= 1: {value}")
    return value


def load_settings(dotenv_path=None, environ=None):
    """
    Carrega configurações a partir do .env e do ambiente.

    Args:
        dotenv_path (str): Caminho do arquivo .env (default: busca automática)
        environ (dict): Ambiente a usar no lugar de os.environ (testes)

    Returns:
        Settings: Configuração efetiva

    Raises:
        ValidationError: Se alguma variável não puder ser convertida
    """
    if environ is None:
        load_dotenv(dotenv_path, override=False)
        environ = os.environ

    values = {}
    for f in fields(Settings):
        raw = environ.get(f"{ENV_PREFIX}{f.name.upper()}")
        if raw is None or raw.strip() == "":
            continue
        target_type = int if f.type is int or f.type == "int" else float
        values[f.name] = _convert(f.name, raw.strip(), target_type)

    return Settings(**values)
