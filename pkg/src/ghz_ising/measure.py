"""
Simulação de medições projetivas locais em uma única rodada

Cada observador mede a letra do seu sítio; o produto dos resultados locais é
comparado com o autovalor previsto. Para um autoestado o produto coincide em
todas as rodadas, embora cada resultado individual seja aleatório.
"""

import hashlib
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from ghz_ising import config
from ghz_ising.errors import NumericalFaultError, SizeMismatchError, ValidationError
from ghz_ising.model import StateVector
from ghz_ising.pauli import PauliString, apply, format_pauli

ZERO_PROBABILITY = 1e-15


def make_generator(seed):
    """Gerador PCG64 com semente de 64 bits."""
    if seed < 0 or seed >= 2 ** 64:
        raise ValidationError(f"Semente deve estar em [0, 2^64), recebida: {seed}")
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class ShotRecord:
    """Uma rodada: resultados (sítio, letra, ±1) e o produto."""

    constraint_index: int
    outcomes: tuple
    product: int
    expected: int

    @property
    def matched(self):
        return self.product == self.expected


def _measurement_order(observable, order):
    support = observable.support()
    if order == "ascending":
        return support
    if order == "descending":
        return list(reversed(support))
    raise ValidationError(f"Ordem deve ser 'ascending' ou 'descending', recebido: '{order}'")


def measure_observable(state, constraint, rng=None, order="ascending", uniforms=None, constraint_index=0):
    """
    Mede sequencialmente cada fator de um sítio com os projetores (1 ± P_j)/2.

    Args:
        state (StateVector): Estado inicial
        constraint (Constraint): Restrição cujo observável é medido
        rng (np.random.Generator): Fonte de aleatoriedade
        order (str): "ascending" ou "descending" nos sítios
        uniforms (array): Uniformes pré-sorteadas (uma por sítio medido), no lugar de `rng`
        constraint_index (int): Índice gravado no registro

    Returns:
        tuple: (ShotRecord, StateVector pós-medição)

    Raises:
        NumericalFaultError: Projeção com probabilidade nula
    """
    observable = constraint.observable
    if observable.n != state.n:
        raise SizeMismatchError(f"Observável com {observable.n} sítios e estado com {state.n}")
    sites = _measurement_order(observable, order)
    if uniforms is not None and len(uniforms) < len(sites):
        raise ValidationError(f"São necessárias {len(sites)} uniformes, recebidas {len(uniforms)}")

    psi = np.array(state.amplitudes, dtype=complex)
    outcomes = []
    product = 1
    for k, (site, letter) in enumerate(sites):
        local = PauliString.single(state.n, site, letter)
        image = apply(local, psi)
        p_plus = min(max((1 + float(np.vdot(psi, image).real)) / 2, 0.0), 1.0)
        u = uniforms[k] if uniforms is not None else rng.random()
        outcome = 1 if u < p_plus else -1
        probability = p_plus if outcome == 1 else 1 - p_plus
        if probability < ZERO_PROBABILITY:
            raise NumericalFaultError(
                f"Projeção com probabilidade nula no sítio {site} ({letter}, resultado {outcome:+d})"
            )
        psi = (psi + outcome * image) / (2 * np.sqrt(probability))
        outcomes.append((site, letter, outcome))
        product *= outcome

    # sinal global do observável entra no produto previsto, não nos resultados locais
    record = ShotRecord(constraint_index, tuple(sorted(outcomes)), product, constraint.expected_product)
    return record, StateVector(state.n, psi)


def sample_constraint(state, constraint, seed, order="ascending", uniforms=None, constraint_index=0):
    """Uma rodada com gerador próprio criado a partir de `seed`."""
    rng = None if uniforms is not None else make_generator(seed)
    record, _ = measure_observable(state, constraint, rng, order, uniforms, constraint_index)
    return record


@dataclass(frozen=True, eq=False)
class ExperimentResult:
    """
    Estatísticas de um experimento.

    summary: uma linha por restrição (fração de rodadas com produto correto)
    marginals: frequência de +1 por (restrição, sítio, letra)
    transcripts: por restrição, matriz shots x sítios com os resultados ±1
    """

    seed: int
    generator: str
    shots: int
    order: str
    summary: pd.DataFrame
    marginals: pd.DataFrame
    transcripts: list = field(repr=False)

    def transcript_digest(self):
        digest = hashlib.sha256()
        for outcomes in self.transcripts:
            digest.update(np.ascontiguousarray(outcomes, dtype=np.int8).tobytes())
        return digest.hexdigest()

    def to_dict(self):
        return {
            "seed": self.seed,
            "generator": self.generator,
            "shots": self.shots,
            "order": self.order,
            "constraints": self.summary.to_dict(orient="records"),
            "marginals": self.marginals.to_dict(orient="records"),
            "transcript_sha256": self.transcript_digest(),
        }


def run_experiment(state, constraint_set, shots=None, seed=None, order="ascending", verbose=False):
    """
    Repete `shots` rodadas para cada restrição com um único gerador semeado.

    Returns:
        ExperimentResult reprodutível a partir de `seed`
    """
    shots = config.DEFAULT_SHOTS if shots is None else shots
    seed = config.DEFAULT_SEED if seed is None else seed
    if shots < 1:
        raise ValidationError(f"shots deve ser >= 1, recebido: {shots}")
    if constraint_set.n != state.n:
        raise SizeMismatchError(f"Conjunto com {constraint_set.n} sítios e estado com {state.n}")

    rng = make_generator(seed)
    if verbose:
        print(f"=== EXPERIMENTO: {shots:,} rodadas x {len(constraint_set)} restrições (seed {seed}) ===")

    summary_rows = []
    marginal_rows = []
    transcripts = []
    for index, constraint in enumerate(constraint_set, start=1):
        sites = constraint.observable.support()
        outcomes = np.zeros((shots, len(sites)), dtype=np.int8)
        matched = 0
        for shot in range(shots):
            record, _ = measure_observable(state, constraint, rng, order, constraint_index=index)
            outcomes[shot] = [value for _, _, value in record.outcomes]
            matched += record.matched
        transcripts.append(outcomes)

        summary_rows.append({
            "index": index,
            "observable": format_pauli(constraint.observable),
            "eigenvalue": constraint.eigenvalue,
            "matched_fraction": matched / shots,
        })
        for k, (site, letter) in enumerate(sites):
            marginal_rows.append({
                "index": index,
                "site": site,
                "letter": letter,
                "freq_plus": float(np.mean(outcomes[:, k] == 1)),
            })
        if verbose:
            print(f"   {format_pauli(constraint.observable)}: fração com produto correto = {matched / shots:.4f}")

    return ExperimentResult(
        seed, config.GENERATOR_NAME, shots, order,
        pd.DataFrame(summary_rows), pd.DataFrame(marginal_rows), transcripts,
    )
