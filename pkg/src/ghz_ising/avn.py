"""
Provas all-versus-nothing (AVN) do tipo GHZ

Lado quântico: equações de autovalor O_j|ψ> = λ_j|ψ> para observáveis de Pauli
que comutam. Lado clássico: um modelo de variáveis ocultas locais atribui um
valor ±1 a cada par (sítio, eixo); as relações de produto viram um sistema
linear sobre GF(2) com m = (-1)^v.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from ghz_ising import config, gf2
from ghz_ising.errors import CapExceededError, CertificationError, SizeMismatchError, ValidationError
from ghz_ising.pauli import PauliString, apply, commutes, format_pauli, multiply, parse_pauli

AXES = ("x", "y", "z")


@dataclass(frozen=True)
class Constraint:
    """Equação O|ψ> = λ|ψ> com O Hermitiano de coeficiente ±1 e λ = ±1."""

    observable: PauliString
    eigenvalue: int

    def __post_init__(self):
        if not self.observable.is_hermitian:
            raise ValidationError(f"Observável não Hermitiano: {format_pauli(self.observable)}")
        if self.eigenvalue not in (1, -1):
            raise ValidationError(f"Autovalor deve ser +1 ou -1, recebido: {self.eigenvalue}")

    @property
    def expected_product(self):
        """Produto dos resultados locais previsto: λ vezes o sinal do observável."""
        return self.eigenvalue * self.observable.sign

    def __str__(self):
        return f"{format_pauli(self.observable)} = {self.eigenvalue:+d}"


@dataclass(frozen=True)
class ConstraintSet:
    """Lista ordenada de restrições que comutam duas a duas."""

    n: int
    constraints: tuple

    def __post_init__(self):
        constraints = tuple(self.constraints)
        object.__setattr__(self, "constraints", constraints)
        for c in constraints:
            if c.observable.n != self.n:
                raise SizeMismatchError(
                    f"Restrição {format_pauli(c.observable)} tem {c.observable.n} sítios, conjunto tem {self.n}"
                )
        for (i, a), (j, b) in itertools.combinations(enumerate(constraints, start=1), 2):
            if not commutes(a.observable, b.observable):
                raise ValidationError(
                    f"Observáveis {i} ({format_pauli(a.observable)}) e {j} ({format_pauli(b.observable)}) não comutam"
                )

    @classmethod
    def from_text(cls, items):
        """ConstraintSet.from_text([("+YYZ", -1), ("+ZZZ", 1)])"""
        constraints = [Constraint(parse_pauli(text), int(eigenvalue)) for text, eigenvalue in items]
        if not constraints:
            raise ValidationError("Conjunto de restrições vazio")
        return cls(constraints[0].observable.n, constraints)

    def __len__(self):
        return len(self.constraints)

    def __iter__(self):
        return iter(self.constraints)

    def __getitem__(self, index):
        return self.constraints[index]

    @property
    def observables(self):
        return [c.observable for c in self.constraints]

    @property
    def eigenvalues(self):
        return [c.eigenvalue for c in self.constraints]

    def subset(self, indices):
        return ConstraintSet(self.n, [self.constraints[i] for i in indices])

    def without(self, index):
        """Cópia sem a restrição `index` (0-based)."""
        return ConstraintSet(self.n, [c for i, c in enumerate(self.constraints) if i != index])

    def as_text(self):
        return [[format_pauli(c.observable), c.eigenvalue] for c in self.constraints]

    def to_frame(self):
        return pd.DataFrame(
            [{"index": i, "observable": format_pauli(c.observable), "eigenvalue": c.eigenvalue}
             for i, c in enumerate(self.constraints, start=1)]
        )


@dataclass(frozen=True)
class LhvSystem:
    """
    Sistema linear sobre GF(2) do modelo local realista.

    variables: pares (sítio, eixo) presentes em alguma restrição
    matrix: uma linha por restrição, 1 onde a letra do eixo ocorre no sítio
    rhs: 1 se (λ × sinal do observável) = -1
    """

    variables: tuple
    matrix: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)

    @property
    def n_variables(self):
        return len(self.variables)

    @property
    def n_rows(self):
        return self.matrix.shape[0]

    def decode(self, bits):
        """Solução sobre GF(2) -> valores locais m = (-1)^v."""
        return {var: 1 - 2 * int(b) for var, b in zip(self.variables, bits)}

    def is_satisfied_by(self, bits):
        bits = np.asarray(bits, dtype=np.uint8)
        return bool(np.all((self.matrix.astype(np.int64) @ bits) % 2 == self.rhs))

    def to_frame(self):
        columns = [f"m{axis}_{site}" for site, axis in self.variables]
        frame = pd.DataFrame(self.matrix, columns=columns)
        frame["rhs"] = self.rhs
        return frame


@dataclass(frozen=True)
class ClassicalVerdict:
    """
    Veredito do lado clássico.

    assignment: valores ±1 por (sítio, eixo) quando satisfatível
    certificate: linhas (0-based) cuja soma é (0 | 1) quando insatisfatível
    """

    satisfiable: bool
    assignment: dict = None
    certificate: tuple = None
    method: str = "gf2"
    scanned: int = None

    @property
    def certificate_labels(self):
        """Índices 1-based, como na numeração D¹…D⁴."""
        return None if self.certificate is None else [i + 1 for i in self.certificate]

    def to_dict(self):
        payload = {
            "verdict": "SATISFIABLE" if self.satisfiable else "UNSATISFIABLE",
            "method": self.method,
            "certificate": self.certificate_labels,
            "assignment": None,
        }
        if self.assignment is not None:
            payload["assignment"] = {f"m{axis}_{site}": value for (site, axis), value in self.assignment.items()}
        if self.scanned is not None:
            payload["scanned"] = self.scanned
        return payload


@dataclass(frozen=True)
class EigenReport:
    """Resíduos ‖O_j ψ - λ_j ψ‖ por restrição."""

    residuals: tuple
    tol: float

    @property
    def passed(self):
        return all(r <= self.tol for r in self.residuals)

    @property
    def failed(self):
        """Índices 1-based das restrições reprovadas."""
        return [i for i, r in enumerate(self.residuals, start=1) if r > self.tol]


@dataclass(frozen=True)
class AvnCertificate:
    """Prova AVN completa: lado quântico + lado clássico."""

    set: ConstraintSet
    quantum: EigenReport
    classical: ClassicalVerdict

    @property
    def holds(self):
        return self.quantum.passed and not self.classical.satisfiable

    @property
    def quantum_residuals(self):
        return list(self.quantum.residuals)

    def to_dict(self):
        return {
            "n": self.set.n,
            "constraints": [
                {"observable": format_pauli(c.observable), "eigenvalue": c.eigenvalue, "residual": float(r)}
                for c, r in zip(self.set, self.quantum.residuals)
            ],
            "tol": self.quantum.tol,
            "quantum_passed": self.quantum.passed,
            "failed_constraints": self.quantum.failed,
            "classical": self.classical.to_dict(),
            "avn_certified": self.holds,
        }


# =================
# CONJUNTOS DE OPERADORES
# =================

def standard_ghz_set(n, parity="even"):
    """
    Conjunto {D¹_N, D²_N, D³_N, D⁴_N} para o fundamental em 𝔅 = 0.

    Para n = 3 mantém a ordem canônica (YYZ, YZY, ZYY, ZZZ); para n >= 4,
    ZYYZ…Z, YZYZ…Z, YYZZ…Z, Z…Z. Autovalores (-1, -1, -1, +1) no setor par;
    no setor ímpar todos trocam de sinal.

    Raises:
        ValidationError: n < 3 ou paridade inválida
    """
    if n < 3:
        raise ValidationError(f"O conjunto GHZ padrão exige n >= 3, recebido: {n}")
    if parity not in ("even", "odd"):
        raise ValidationError(f"Paridade deve ser 'even' ou 'odd', recebido: '{parity}'")

    tail = "Z" * (n - 3)
    if n == 3:
        heads = ("YYZ", "YZY", "ZYY")
    else:
        heads = ("ZYY", "YZY", "YYZ")
    letters = [head + tail for head in heads] + ["Z" * n]
    eigenvalues = [-1, -1, -1, 1]
    if parity == "odd":
        eigenvalues = [-value for value in eigenvalues]
    return ConstraintSet(n, [Constraint(PauliString.from_letters(s), e) for s, e in zip(letters, eigenvalues)])


def derive_constraint_set(observables, state, tol=None):
    """
    Obtém os autovalores pelo oráculo de `apply` em vez de assumi-los.

    Args:
        observables (list): PauliStrings Hermitianas (ou textos)
        state (StateVector): Estado comum
        tol (float): Resíduo máximo aceito

    Returns:
        ConstraintSet com λ_j = sinal de <ψ|O_j|ψ>

    Raises:
        CertificationError: Se `state` não for autovetor de algum observável
    """
    tol = config.TOL_EIGEN if tol is None else tol
    constraints = []
    for i, observable in enumerate(observables, start=1):
        if isinstance(observable, str):
            observable = parse_pauli(observable, state.n)
        image = apply(observable, state.amplitudes)
        expectation = float(np.vdot(state.amplitudes, image).real)
        eigenvalue = 1 if expectation >= 0 else -1
        residual = float(np.linalg.norm(image - eigenvalue * state.amplitudes))
        if residual > tol:
            raise CertificationError(
                f"Estado não é autovetor de {format_pauli(observable)} (restrição {i}): resíduo {residual:.3e}"
            )
        constraints.append(Constraint(observable, eigenvalue))
    return ConstraintSet(state.n, constraints)


EXCITED_OBSERVABLES_4 = ("XXYY", "XYXY", "XYYX", "XXXX")


def excited_ghz_set_4(state=None, tol=None):
    """
    {XXYY, XYXY, XYYX, XXXX} com autovalores lidos em (-|0000> + |1111>)/√2.
    """
    from ghz_ising.model import first_excited_state_4

    if state is None:
        state = first_excited_state_4()
    return derive_constraint_set(EXCITED_OBSERVABLES_4, state, tol)


def operator_parity(constraint_set, indices=None):
    """
    Produto ordenado dos observáveis e produto dos autovalores.

    Returns:
        tuple: (PauliString produto, produto dos λ)
    """
    if indices is None:
        indices = range(len(constraint_set))
    product = PauliString.identity(constraint_set.n)
    eigen_product = 1
    for i in indices:
        product = multiply(product, constraint_set[i].observable)
        eigen_product *= constraint_set[i].eigenvalue
    return product, eigen_product


# =================
# LADO QUÂNTICO
# =================

def verify_eigenequations(constraint_set, state, tol=None):
    """
    Resíduos ‖O_j ψ - λ_j ψ‖ para cada restrição.

    Raises:
        SizeMismatchError: Se o estado tiver outro número de sítios
    """
    tol = config.TOL_EIGEN if tol is None else tol
    if constraint_set.n != state.n:
        raise SizeMismatchError(f"Conjunto com {constraint_set.n} sítios e estado com {state.n}")
    residuals = []
    for c in constraint_set:
        image = apply(c.observable, state.amplitudes)
        residuals.append(float(np.linalg.norm(image - c.eigenvalue * state.amplitudes)))
    return EigenReport(tuple(residuals), tol)


# =================
# LADO CLÁSSICO
# =================

def build_lhv_system(constraint_set):
    """
    Monta o sistema GF(2): uma variável por (sítio, eixo) efetivamente usado.
    """
    used = set()
    for c in constraint_set:
        for site, letter in c.observable.support():
            used.add((site, letter.lower()))
    variables = tuple(sorted(used, key=lambda v: (v[0], AXES.index(v[1]))))
    column = {var: k for k, var in enumerate(variables)}

    matrix = np.zeros((len(constraint_set), len(variables)), dtype=np.uint8)
    rhs = np.zeros(len(constraint_set), dtype=np.uint8)
    for row, c in enumerate(constraint_set):
        for site, letter in c.observable.support():
            matrix[row, column[(site, letter.lower())]] = 1
        rhs[row] = 1 if c.expected_product == -1 else 0
    return LhvSystem(variables, matrix, rhs)


def is_classically_satisfiable(system):
    """
    Eliminação gaussiana sobre GF(2).

    Returns:
        ClassicalVerdict: SATISFIABLE com uma atribuição concreta, ou
        UNSATISFIABLE com o subconjunto de linhas de menor cardinalidade cuja
        soma é (0 | 1)
    """
    if system.n_rows == 0:
        return ClassicalVerdict(True, assignment={})
    solution, null_basis = gf2.solve(system.matrix, system.rhs)
    if solution is not None:
        return ClassicalVerdict(True, assignment=system.decode(solution))
    certificate = gf2.minimal_odd_dependency(null_basis)
    return ClassicalVerdict(False, certificate=certificate)


def check_certificate(system, certificate):
    """Re-soma as linhas do certificado: True se o resultado for (0 | 1)."""
    rows = list(certificate)
    occurrence = np.bitwise_xor.reduce(system.matrix[rows], axis=0)
    parity = int(np.bitwise_xor.reduce(system.rhs[rows]))
    return bool(not occurrence.any() and parity == 1)


def brute_force_satisfiable(constraint_set, cap=None, chunk_bits=16):
    """
    Enumera todas as atribuições ±1 (oráculo independente do solver GF(2)).

    Raises:
        CapExceededError: Mais variáveis que o limite (default 24)
    """
    cap = config.BRUTE_FORCE_CAP if cap is None else cap
    system = build_lhv_system(constraint_set)
    n_vars = system.n_variables
    if n_vars > cap:
        raise CapExceededError(f"Força bruta limitada a {cap} variáveis, recebido {n_vars}")

    # bit k da atribuição corresponde à variável k
    row_masks = [sum(1 << k for k in np.flatnonzero(row)) for row in system.matrix]
    total = 1 << n_vars
    chunk = 1 << min(chunk_bits, n_vars)
    for start in range(0, total, chunk):
        candidates = np.arange(start, min(start + chunk, total), dtype=np.int64)
        ok = np.ones(candidates.shape, dtype=bool)
        for mask, bit in zip(row_masks, system.rhs):
            ok &= (np.bitwise_count(candidates & mask) & 1) == bit
        hits = np.flatnonzero(ok)
        if hits.size:
            winner = int(candidates[hits[0]])
            bits = [(winner >> k) & 1 for k in range(n_vars)]
            return ClassicalVerdict(
                True, assignment=system.decode(bits), method="brute_force", scanned=start + int(hits[0]) + 1
            )
    return ClassicalVerdict(False, method="brute_force", scanned=total)


def certify_avn(constraint_set, state, tol=None):
    """
    Combina o lado quântico e o clássico.

    AVN vale sse todas as equações de autovalor passam e o sistema clássico é
    insatisfatível.
    """
    quantum = verify_eigenequations(constraint_set, state, tol)
    classical = is_classically_satisfiable(build_lhv_system(constraint_set))
    return AvnCertificate(constraint_set, quantum, classical)
