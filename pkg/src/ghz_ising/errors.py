"""
Exceções do pacote ghz_ising
"""


class GhzIsingError(ValueError):
    """Erro base do pacote."""

    exit_code = 1


class ValidationError(GhzIsingError):
    """Parâmetros ou configuração inválidos."""

    exit_code = 2


class PauliParseError(ValidationError):
    """Texto que não segue a gramática de strings de Pauli."""


class SizeMismatchError(GhzIsingError):
    """Operandos com número de sítios diferente."""

    exit_code = 2


class CapExceededError(GhzIsingError):
    """Tamanho acima do limite configurado (matriz densa, varredura, força bruta)."""

    exit_code = 3


class CertificationError(GhzIsingError):
    """A prova AVN não pôde ser certificada."""

    exit_code = 4


class DegenerateGroundStateError(GhzIsingError):
    """Estado fundamental degenerado sem escolha explícita de paridade."""

    exit_code = 5

    def __init__(self, message, dimension):
        super().__init__(message)
        self.dimension = dimension


class NoClosedFormError(GhzIsingError):
    """Não existe forma fechada para o n pedido."""

    exit_code = 6


class NumericalFaultError(GhzIsingError):
    """Falha numérica interna (ex.: projeção com probabilidade zero)."""
