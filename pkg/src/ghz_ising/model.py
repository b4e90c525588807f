"""
Modelo de Ising 1D com campo transverso e condições periódicas
H = -Σ_j (σˣ_j σˣ_{j+1} + 𝔅 σᶻ_j), acoplamento J = 1.

Base computacional |b_1 b_2 ... b_N>, b = 0 significa σᶻ = +1 e o sítio 1 é o
bit mais significativo; com essa ordem a matriz para N = 3 coincide linha a
linha com a forma matricial de referência.
"""

from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy import linalg

from ghz_ising import config
from ghz_ising.errors import CapExceededError, DegenerateGroundStateError, ValidationError
from ghz_ising.pauli import PauliString, apply

NORM_TOL = 1e-12


def _parity_bits(n):
    """Paridade (0 par, 1 ímpar) de cada índice da base."""
    return (np.bitwise_count(np.arange(1 << n, dtype=np.int64)) & 1).astype(np.int8)


def basis_index(bits):
    """Índice da base para uma string de bits com o sítio 1 à esquerda ("011" -> 3)."""
    return int(bits, 2)


@dataclass(frozen=True)
class IsingParams:
    """
    Parâmetros do modelo.

    Args:
        n (int): Número de sítios (>= 2)
        field_b (float): Campo transverso 𝔅 (>= 0)
    """

    n: int
    field_b: float = 0.0
    boundary: str = "periodic"

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ValidationError(f"n deve ser inteiro >= 2, recebido: {self.n}")
        if not np.isfinite(self.field_b) or self.field_b < 0:
            raise ValidationError(f"Campo transverso deve ser finito e >= 0, recebido: {self.field_b}")
        if self.boundary != "periodic":
            raise ValidationError(f"Somente contorno periódico é suportado, recebido: '{self.boundary}'")


@dataclass(frozen=True, eq=False)
class StateVector:
    """
    Vetor de estado normalizado com 2^n amplitudes complexas.

    Args:
        n (int): Número de sítios
        amplitudes (array): Amplitudes na base computacional
        normalize (bool): Se True, normaliza; se False, exige norma 1
    """

    n: int
    amplitudes: np.ndarray = field(repr=False)
    normalize: bool = field(default=True, repr=False)

    def __post_init__(self):
        vector = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if vector.shape[0] != 1 << self.n:
            raise ValidationError(f"Esperadas {1 << self.n} amplitudes para n = {self.n}, recebidas {vector.shape[0]}")
        norm = np.linalg.norm(vector)
        if norm == 0:
            raise ValidationError("Vetor nulo não representa um estado")
        if self.normalize:
            vector = vector / norm
        elif abs(norm - 1) > NORM_TOL:
            raise ValidationError(f"Vetor não normalizado: norma = {norm!r}")
        vector.setflags(write=False)
        object.__setattr__(self, "amplitudes", vector)

    @classmethod
    def from_basis(cls, n, coefficients, state_cap=None):
        """
        Constrói um estado a partir de {bits: coeficiente}.

        Exemplo:
            StateVector.from_basis(3, {"000": 1, "111": 1})
        """
        check_state_vector_cap(n, state_cap)
        vector = np.zeros(1 << n, dtype=complex)
        for bits, coefficient in coefficients.items():
            if len(bits) != n:
                raise ValidationError(f"Ket '{bits}' não tem {n} sítios")
            vector[basis_index(bits)] += coefficient
        return cls(n, vector)

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other):
        """<self|other>"""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def overlap(self, other):
        """|<self|other>|"""
        return abs(self.inner(other))

    def amplitude(self, bits):
        return complex(self.amplitudes[basis_index(bits)])

    def canonical_phase(self):
        """Fixa a fase global: maior amplitude (primeira, em caso de empate) real e positiva."""
        k = int(np.argmax(np.round(np.abs(self.amplitudes), 12)))
        phase = self.amplitudes[k] / abs(self.amplitudes[k])
        return StateVector(self.n, self.amplitudes / phase)

    def to_frame(self, threshold=1e-12):
        """Amplitudes não nulas como DataFrame (ket, real, imag, prob)."""
        rows = []
        for index, value in enumerate(self.amplitudes):
            if abs(value) > threshold:
                rows.append({
                    "ket": format(index, f"0{self.n}b"),
                    "real": float(value.real),
                    "imag": float(value.imag),
                    "prob": float(abs(value) ** 2),
                })
        return pd.DataFrame(rows, columns=["ket", "real", "imag", "prob"])


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    """
    Resultado da diagonalização exata.

    eigenvalues: todos os autovalores em ordem crescente
    levels: grupos de índices (níveis degenerados)
    eigenvectors: para cada nível pedido, a lista de autovetores ortonormais
    residuals: ‖H v - λ v‖ para cada autovetor devolvido
    """

    params: IsingParams
    eigenvalues: np.ndarray
    levels: list
    eigenvectors: list
    residuals: list
    degeneracy_tol: float

    @property
    def ground_energy(self):
        return float(self.eigenvalues[0])

    @property
    def ground_dimension(self):
        return len(self.levels[0])

    def level_energies(self):
        return [float(np.mean(self.eigenvalues[group])) for group in self.levels]

    def to_frame(self, max_levels=None):
        """Tabela de níveis: energia, degenerescência e maior resíduo."""
        rows = []
        for k, group in enumerate(self.levels[:max_levels]):
            rows.append({
                "level": k,
                "energy": float(np.mean(self.eigenvalues[group])),
                "degeneracy": len(group),
                "max_residual": max(self.residuals[k]) if k < len(self.residuals) else None,
            })
        return pd.DataFrame(rows)


@dataclass(frozen=True)
class ClosedFormCoefficients:
    """Coeficientes das formas fechadas para N = 3 e N = 4 em um dado 𝔅."""

    field_b: float
    xi1: float
    norm1: float
    xi2: float
    xi3: float
    norm2: float

    @classmethod
    def at(cls, field_b):
        if field_b < 0:
            raise ValidationError(f"Campo transverso deve ser >= 0, recebido: {field_b}")
        return cls(field_b, xi1(field_b), norm1(field_b), xi2(field_b), xi3(field_b), norm2(field_b))


def xi1(field_b):
    return -1 + 2 * field_b + 2 * np.sqrt(1 - field_b + field_b ** 2)


def norm1(field_b):
    return 3 + xi1(field_b) ** 2


def xi2(field_b):
    return -1 + 2 * field_b ** 2 + 2 * np.sqrt(1 + field_b ** 4)


def xi3(field_b):
    return np.sqrt(1 + field_b ** 2 + np.sqrt(1 + field_b ** 4))


def norm2(field_b):
    """𝒩₂ na forma de referência (tratado como dado a conferir)."""
    b, x2, x3 = field_b, xi2(field_b), xi3(field_b)
    s2 = np.sqrt(2)
    return (
        1
        + 3 * (b + x3 / s2) ** 2
        + 0.25 * (2 * b + s2 * x3) ** 2
        + (4 * b + 2 * s2 * x3) ** 2 / (4 * x3 ** 2)
        + (x2 - 2 * s2 * b / x3 + 2 * s2 * b * x3) ** 2
    )


# =================
# HAMILTONIANO
# =================

def hamiltonian_terms(params):
    """
    Termos de Pauli do Hamiltoniano.

    Returns:
        list: 2N pares (coeficiente, PauliString): N ligações -XX (com j = N
        ligado a j = 1) seguidas de N campos -𝔅 Z
    """
    n = params.n
    terms = []
    for j in range(1, n + 1):
        k = j % n + 1
        letters = ["I"] * n
        letters[j - 1] = "X"
        letters[k - 1] = "X"
        terms.append((-1.0, PauliString.from_letters("".join(letters))))
    for j in range(1, n + 1):
        terms.append((-float(params.field_b), PauliString.single(n, j, "Z")))
    return terms


def _check_dense_cap(n, dense_cap):
    cap = config.HAMILTONIAN_DENSE_CAP if dense_cap is None else dense_cap
    if n > cap:
        raise CapExceededError(f"Diagonalização densa limitada a n <= {cap}, recebido n = {n}")


def check_state_vector_cap(n, state_cap=None):
    cap = config.STATE_VECTOR_CAP if state_cap is None else state_cap
    if n > cap:
        raise CapExceededError(f"Vetores de estado limitados a n <= {cap} (2^n amplitudes), recebido n = {n}")


def hamiltonian_matrix(params, dense_cap=None):
    """
    Matriz densa (real simétrica) do Hamiltoniano.

    Cada termo é somado pelo mesmo caminho de máscaras de `pauli.apply`, sem
    produtos de Kronecker; os termos do modelo são reais.

    Raises:
        CapExceededError: Se n > dense_cap
    """
    _check_dense_cap(params.n, dense_cap)
    dim = 1 << params.n
    index = np.arange(dim, dtype=np.int64)
    matrix = np.zeros((dim, dim), dtype=float)
    for coefficient, term in hamiltonian_terms(params):
        signs = 1 - 2 * (np.bitwise_count(index & term.z_mask) & 1).astype(np.int8)
        # termos X e Z têm fase +1
        matrix[index ^ term.x_mask, index] += coefficient * signs
    return matrix


def apply_hamiltonian(params, state):
    """H|ψ> pela soma dos termos de Pauli (sem matriz); devolve np.ndarray."""
    vector = getattr(state, "amplitudes", state)
    out = np.zeros(1 << params.n, dtype=complex)
    for coefficient, term in hamiltonian_terms(params):
        out += coefficient * apply(term, vector)
    return out


def energy(params, state):
    """<ψ|H|ψ>"""
    return float(np.vdot(state.amplitudes, apply_hamiltonian(params, state)).real)


def group_levels(eigenvalues, degeneracy_tol):
    """Agrupa autovalores ordenados cujo intervalo para o anterior é menor que a tolerância."""
    levels = []
    current = [0]
    for i in range(1, len(eigenvalues)):
        if eigenvalues[i] - eigenvalues[i - 1] < degeneracy_tol:
            current.append(i)
        else:
            levels.append(current)
            current = [i]
    levels.append(current)
    return levels


def exact_diagonalize(params, k=2, degeneracy_tol=None, dense_cap=None, verbose=False):
    """
    Diagonaliza H exatamente (scipy.linalg.eigh).

    Args:
        params (IsingParams): Parâmetros do modelo
        k (int): Número de níveis (não de autovalores) com autovetores devolvidos
        degeneracy_tol (float): Limiar absoluto para agrupar níveis (default 1e-8)
        dense_cap (int): Limite de n para a matriz densa
        verbose (bool): Imprime progresso

    Returns:
        SpectrumResult

    Raises:
        CapExceededError: n acima do limite
        ValidationError: k fora de 1..2^n
    """
    tol = config.TOL_DEGENERACY if degeneracy_tol is None else degeneracy_tol
    dim = 1 << params.n
    if not 1 <= k <= dim:
        raise ValidationError(f"k deve estar entre 1 e {dim}, recebido: {k}")
    if tol <= 0:
        raise ValidationError(f"Tolerância de degenerescência deve ser positiva, recebida: {tol}")

    matrix = hamiltonian_matrix(params, dense_cap=dense_cap)
    if verbose:
        print(f"=== DIAGONALIZAÇÃO EXATA: n = {params.n}, 𝔅 = {params.field_b} ===")
        print(f"Dimensão do espaço de Hilbert: {dim:,}")

    eigenvalues, vectors = linalg.eigh(matrix)
    levels = group_levels(eigenvalues, tol)

    eigenvectors = []
    residuals = []
    for group in levels[:k]:
        level_vectors = []
        level_residuals = []
        for i in group:
            v = vectors[:, i]
            level_vectors.append(StateVector(params.n, v))
            level_residuals.append(float(np.linalg.norm(matrix @ v - eigenvalues[i] * v)))
        eigenvectors.append(level_vectors)
        residuals.append(level_residuals)

    if verbose:
        print(f"Energia fundamental: {eigenvalues[0]:.12f} (degenerescência {len(levels[0])})")
        print(f"Níveis distintos: {len(levels):,}")

    return SpectrumResult(params, eigenvalues, levels, eigenvectors, residuals, tol)


# =================
# ESTADOS DE REFERÊNCIA
# =================

def parity_state(n, parity, state_cap=None):
    """Superposição uniforme sobre as strings de bits com a paridade dada ("even"/"odd")."""
    if n < 2:
        raise ValidationError(f"n deve ser >= 2, recebido: {n}")
    check_state_vector_cap(n, state_cap)
    if parity not in ("even", "odd"):
        raise ValidationError(f"Paridade deve ser 'even' ou 'odd', recebido: '{parity}'")
    target = 0 if parity == "even" else 1
    vector = (_parity_bits(n) == target).astype(complex)
    return StateVector(n, vector)


def even_parity_uniform_state(n):
    """Amplitude 2^{-(n-1)/2} em todas as strings de paridade par; fundamental par em 𝔅 = 0."""
    return parity_state(n, "even")


def odd_parity_uniform_state(n):
    """Parceiro degenerado de paridade ímpar em 𝔅 = 0."""
    return parity_state(n, "odd")


def first_excited_state_4():
    """(-|0000> + |1111>)/√2, autovetor de H₄(𝔅 = 0) com energia 0."""
    return StateVector.from_basis(4, {"0000": -1, "1111": 1})


def ghz_state(n, sign=1):
    """(|0...0> + sign|1...1>)/√2"""
    if sign not in (1, -1):
        raise ValidationError(f"sign deve ser +1 ou -1, recebido: {sign}")
    return StateVector.from_basis(n, {"0" * n: 1, "1" * n: sign})


def hadamard_all(state):
    """Aplica H ⊗ ... ⊗ H em O(n·2^n)."""
    n = state.n
    tensor = state.amplitudes.reshape([2] * n)
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    for axis in range(n):
        tensor = np.moveaxis(np.tensordot(h, tensor, axes=([1], [axis])), 0, axis)
    return StateVector(n, tensor.reshape(-1))


def local_ghz_equivalence(n):
    """
    Equivalência local com o estado GHZ: H^{⊗n} leva |Ψ>_N (sinal +) ao
    fundamental par e (sinal -) ao ímpar.

    Returns:
        dict: overlaps {"even": ..., "odd": ...}, ambos iguais a 1
    """
    return {
        "even": hadamard_all(ghz_state(n, 1)).overlap(even_parity_uniform_state(n)),
        "odd": hadamard_all(ghz_state(n, -1)).overlap(odd_parity_uniform_state(n)),
    }


def parity_expectation(state):
    """<ψ| Z...Z |ψ>"""
    signs = 1 - 2 * _parity_bits(state.n)
    return float(np.sum(signs * np.abs(state.amplitudes) ** 2))


def project_parity(state_amplitudes, n, parity):
    """Projeção (sem normalizar) no setor de paridade dado."""
    target = 0 if parity == "even" else 1
    mask = _parity_bits(n) == target
    return np.where(mask, state_amplitudes, 0)


def ground_state(params, parity=None, degeneracy_tol=None, spectrum=None, dense_cap=None):
    """
    Estado fundamental numérico com fase canônica.

    Com fundamental degenerado, exige `parity` e devolve a projeção do espaço
    fundamental no setor de paridade escolhido.

    Raises:
        DegenerateGroundStateError: Fundamental degenerado e `parity` ausente
        ValidationError: Paridade pedida incompatível com o fundamental único
    """
    if spectrum is None:
        spectrum = exact_diagonalize(params, k=1, degeneracy_tol=degeneracy_tol, dense_cap=dense_cap)
    ground = spectrum.eigenvectors[0]

    if len(ground) == 1:
        state = ground[0].canonical_phase()
        if parity is not None:
            expected = 1 if parity == "even" else -1
            if abs(parity_expectation(state) - expected) > 1e-8:
                raise ValidationError(
                    f"Fundamental único em n = {params.n}, 𝔅 = {params.field_b} não tem paridade '{parity}'"
                )
        return state

    if parity is None:
        raise DegenerateGroundStateError(
            f"Espaço fundamental degenerado (dimensão {len(ground)}) em n = {params.n}, "
            f"𝔅 = {params.field_b}; escolha a paridade (even | odd)",
            dimension=len(ground),
        )
    if parity not in ("even", "odd"):
        raise ValidationError(f"Paridade deve ser 'even' ou 'odd', recebido: '{parity}'")

    projections = [project_parity(v.amplitudes, params.n, parity) for v in ground]
    best = max(projections, key=np.linalg.norm)
    if np.linalg.norm(best) < 1e-6:
        raise ValidationError(f"Espaço fundamental sem componente de paridade '{parity}'")
    return StateVector(params.n, best).canonical_phase()


def ground_space_projection(spectrum, state):
    """Norma da projeção de `state` no espaço fundamental (1 se pertence a ele)."""
    return float(np.sqrt(sum(abs(v.inner(state)) ** 2 for v in spectrum.eigenvectors[0])))


# =================
# FORMAS FECHADAS
# =================

def closed_form_ground_state_3(field_b):
    """(ξ₁|000> + |011> + |101> + |110>)/√𝒩₁"""
    c = ClosedFormCoefficients.at(field_b)
    vector = np.zeros(8, dtype=complex)
    vector[basis_index("000")] = c.xi1
    for bits in ("011", "101", "110"):
        vector[basis_index(bits)] = 1
    return StateVector(3, vector / np.sqrt(c.norm1))


def _raw_amplitudes_4(field_b):
    c = ClosedFormCoefficients.at(field_b)
    b, x2, x3 = field_b, c.xi2, c.xi3
    s2 = np.sqrt(2)
    adjacent = b + x3 / s2
    alternating = (4 * b + 2 * s2 * x3) / (2 * s2 * x3)
    return {
        "0000": x2 - 2 * s2 * b * (1 - x3 ** 2) / x3,
        "0011": adjacent,
        "0101": alternating,
        "0110": adjacent,
        "1001": adjacent,
        "1010": alternating,
        "1100": adjacent,
        "1111": 1.0,
    }


def closed_form_ground_state_4(field_b):
    """
    Fundamental de N = 4 a partir da expressão de referência, renormalizado
    numericamente independentemente de 𝒩₂.
    """
    raw = _raw_amplitudes_4(field_b)
    vector = np.zeros(16, dtype=complex)
    for bits, value in raw.items():
        vector[basis_index(bits)] = value
    return StateVector(4, vector)


def closed_form_norm_check_4(field_b):
    """
    Compara 𝒩₂ de referência com a norma ao quadrado das amplitudes.

    Returns:
        dict: reference_norm2, computed_norm2, ratio
    """
    raw = _raw_amplitudes_4(field_b)
    computed = float(sum(value ** 2 for value in raw.values()))
    reference = float(norm2(field_b))
    return {"reference_norm2": reference, "computed_norm2": computed, "ratio": reference / computed}


def resolve_b0_reading_4(degeneracy_tol=None):
    """
    Decide se o termo |1111> pertence ao fundamental de N = 4 em 𝔅 = 0.

    Compara a leitura com oito kets (incluindo |1111>) e a lista curta de
    sete kets contra o fundamental par obtido por diagonalização.

    Returns:
        dict: overlaps de cada leitura e a leitura escolhida
    """
    params = IsingParams(4, 0.0)
    spectrum = exact_diagonalize(params, k=1, degeneracy_tol=degeneracy_tol)
    numeric = ground_state(params, parity="even", spectrum=spectrum)
    seven = StateVector.from_basis(4, {bits: 1 for bits in ("0000", "0011", "0101", "0110", "1001", "1010", "1100")})
    eight = even_parity_uniform_state(4)
    overlaps = {
        "with_1111": numeric.overlap(eight),
        "without_1111": numeric.overlap(seven),
    }
    chosen = max(overlaps, key=overlaps.get)
    return {
        "overlaps": overlaps,
        "ground_space_projection": {
            "with_1111": ground_space_projection(spectrum, eight),
            "without_1111": ground_space_projection(spectrum, seven),
        },
        "reading": chosen,
        "includes_1111": chosen == "with_1111",
        "amplitude_1111": float(numeric.amplitude("1111").real),
    }
