"""
Busca exaustiva de estabilizadores de Pauli e de subconjuntos que admitem prova AVN

A família varrida é a das 4^n strings Hermitianas com coeficiente +1; o
autovalor é lido por string. Resultados negativos valem apenas para essa família.
"""

import itertools
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from ghz_ising import config
from ghz_ising.avn import Constraint, ConstraintSet, build_lhv_system, is_classically_satisfiable
from ghz_ising.errors import CapExceededError, ValidationError
from ghz_ising.model import exact_diagonalize, ground_state
from ghz_ising.pauli import LETTERS, PauliString, apply, format_pauli

SEARCH_FAMILY = "todas as 4^n strings de Pauli Hermitianas com coeficiente +1 (letras I, X, Y, Z por sítio)"


@dataclass(frozen=True)
class StabilizerEntry:
    pauli: PauliString
    eigenvalue: int
    residual: float


@dataclass(frozen=True, eq=False)
class StabilizerInventory:
    """Estabilizadores de um estado, em ordem canônica de letras."""

    state: object = field(repr=False)
    entries: tuple
    tol: float
    scope: str = LETTERS

    def __len__(self):
        return len(self.entries)

    def strings(self):
        return [format_pauli(e.pauli) for e in self.entries]

    def find(self, letters):
        for entry in self.entries:
            if entry.pauli.letters == letters:
                return entry
        return None

    def constraints(self, include_identity=False):
        return [
            Constraint(e.pauli, e.eigenvalue)
            for e in self.entries
            if include_identity or not e.pauli.is_identity
        ]

    def to_frame(self):
        return pd.DataFrame(
            [{"observable": format_pauli(e.pauli), "eigenvalue": e.eigenvalue, "residual": e.residual}
             for e in self.entries],
            columns=["observable", "eigenvalue", "residual"],
        )


def _scan_chunk(codes, n, amplitudes, tol):
    found = []
    for code in codes:
        letters = []
        for _ in range(n):
            letters.append(LETTERS[code % 4])
            code //= 4
        pauli = PauliString.from_letters("".join(reversed(letters)))
        image = apply(pauli, amplitudes)
        expectation = float(np.vdot(amplitudes, image).real)
        eigenvalue = 1 if expectation >= 0 else -1
        residual = float(np.linalg.norm(image - eigenvalue * amplitudes))
        if residual <= tol:
            found.append(StabilizerEntry(pauli, eigenvalue, residual))
    return found


def enumerate_stabilizers(state, tol=None, max_workers=None, chunk_size=4096, scan_cap=None, verbose=False):
    """
    Lista todas as strings P (coeficiente +1) com ‖Pψ - λψ‖ <= tol, λ = ±1.

    As 4^n candidatas são divididas em blocos processados em paralelo; o
    resultado final é ordenado canonicamente e não depende do escalonamento.

    Raises:
        CapExceededError: Se n > scan_cap (default 8)
    """
    tol = config.TOL_STABILIZER if tol is None else tol
    cap = config.SCAN_CAP if scan_cap is None else scan_cap
    workers = config.MAX_WORKERS if max_workers is None else max_workers
    n = state.n
    if n > cap:
        raise CapExceededError(f"Varredura de estabilizadores limitada a n <= {cap}, recebido n = {n}")

    total = 4 ** n
    chunks = [range(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]
    if verbose:
        print(f"=== VARREDURA DE ESTABILIZADORES: n = {n} ===")
        print(f"Candidatas: {total:,} em {len(chunks)} blocos, tol = {tol:g}")

    entries = []
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(_scan_chunk, chunk, n, state.amplitudes, tol): chunk for chunk in chunks}
        for future in as_completed(futures):
            entries.extend(future.result())

    entries.sort(key=lambda e: e.pauli.sort_key())
    if verbose:
        print(f"Estabilizadores encontrados: {len(entries):,}")
    return StabilizerInventory(state, tuple(entries), tol)


def _row_key(system, row):
    """Linha do sistema como inteiro: bits de ocorrência deslocados + bit do lado direito."""
    occurrence = sum(1 << (k + 1) for k in np.flatnonzero(system.matrix[row]))
    return occurrence | int(system.rhs[row])


def find_avn_subsets(inventory, max_size=4, max_results=None, verbose=False):
    """
    Subconjuntos do inventário (tamanho <= max_size) cujo sistema clássico é insatisfatível.

    Primeiro a eliminação GF(2) no inventário inteiro decide se existe alguma
    dependência de paridade ímpar; se existir, as dependências mínimas de soma
    (0 | 1) são listadas por encontro no meio (metades de tamanho ⌊k/2⌋ e
    ⌈k/2⌉ indexadas pela soma).

    Returns:
        list: ConstraintSets, ordenados por tamanho e índices no inventário
    """
    if max_size < 1:
        raise ValidationError(f"max_size deve ser >= 1, recebido: {max_size}")
    constraints = inventory.constraints()
    if not constraints:
        return []
    n = inventory.state.n
    full = ConstraintSet(n, constraints)
    system = build_lhv_system(full)
    if is_classically_satisfiable(system).satisfiable:
        if verbose:
            print("Sistema clássico do inventário é satisfatível: nenhuma prova AVN possível")
        return []

    keys = [_row_key(system, row) for row in range(len(constraints))]
    found = []
    for size in range(1, max_size + 1):
        left_size = size // 2
        right_size = size - left_size
        table = {}
        for combo in itertools.combinations(range(len(keys)), left_size):
            value = 0
            for i in combo:
                value ^= keys[i]
            table.setdefault(value, []).append(combo)
        for right in itertools.combinations(range(len(keys)), right_size):
            value = 1
            for i in right:
                value ^= keys[i]
            for left in table.get(value, ()):
                if left and left[-1] >= right[0]:
                    continue
                found.append(left + right)
        if max_results is not None and len(found) >= max_results:
            found = found[:max_results]
            break

    found.sort(key=lambda combo: (len(combo), combo))
    if max_results is not None:
        found = found[:max_results]
    if verbose:
        print(f"Subconjuntos AVN (tamanho <= {max_size}): {len(found):,}")
    # comutação verificada de novo na construção do ConstraintSet
    return [full.subset(combo) for combo in found]


@dataclass(frozen=True, eq=False)
class ScanReport:
    """Resultado da varredura no fundamental de um ponto (n, 𝔅)."""

    params: object
    parity: str
    ground_energy: float
    ground_dimension: int
    inventory: StabilizerInventory
    avn_sets: list
    max_size: int
    family: str = SEARCH_FAMILY

    def to_dict(self):
        return {
            "n": self.params.n,
            "field_b": self.params.field_b,
            "parity": self.parity,
            "ground_energy": self.ground_energy,
            "ground_dimension": self.ground_dimension,
            "tol_stabilizer": self.inventory.tol,
            "searched_family": self.family,
            "max_size": self.max_size,
            "inventory_size": len(self.inventory),
            "inventory": [
                {"observable": format_pauli(e.pauli), "eigenvalue": e.eigenvalue, "residual": e.residual}
                for e in self.inventory.entries
            ],
            "avn_set_count": len(self.avn_sets),
            "avn_sets": [s.as_text() for s in self.avn_sets],
        }


def scan_ground_state(params, parity=None, tol=None, max_size=4, max_results=None, degeneracy_tol=None,
                      max_workers=None, dense_cap=None, scan_cap=None, verbose=False):
    """
    Diagonaliza, toma o fundamental e procura provas AVN nele.

    Raises:
        CapExceededError: n > 8
        DegenerateGroundStateError: fundamental degenerado sem `parity`
    """
    cap = config.SCAN_CAP if scan_cap is None else scan_cap
    if params.n > cap:
        raise CapExceededError(f"Varredura limitada a n <= {cap}, recebido n = {params.n}")
    spectrum = exact_diagonalize(params, k=1, degeneracy_tol=degeneracy_tol, dense_cap=dense_cap, verbose=verbose)
    state = ground_state(params, parity=parity, spectrum=spectrum)
    inventory = enumerate_stabilizers(state, tol=tol, max_workers=max_workers, scan_cap=cap, verbose=verbose)
    avn_sets = find_avn_subsets(inventory, max_size=max_size, max_results=max_results, verbose=verbose)
    return ScanReport(
        params, parity, spectrum.ground_energy, spectrum.ground_dimension, inventory, avn_sets, max_size
    )


def negative_result_scan(params, tol=None, max_size=4, degeneracy_tol=None, max_workers=None, verbose=False):
    """
    Varredura no fundamental único em 𝔅 > 0 (resultado negativo esperado).

    Recusa escolher arbitrariamente quando o fundamental é degenerado.
    """
    return scan_ground_state(
        params, parity=None, tol=tol, max_size=max_size,
        degeneracy_tol=degeneracy_tol, max_workers=max_workers, verbose=verbose,
    )
