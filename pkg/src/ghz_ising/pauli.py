"""
Álgebra exata de strings de Pauli em N sítios
Representação por par de máscaras de bits (x, z) mais expoente de fase i^k.

Convenções:
- sítio 1 é o bit mais significativo do índice da base (sítio j -> bit n - j)
- (x, z) = (0,0) I, (1,0) X, (0,1) Z, (1,1) XZ; Y = i·XZ
"""

import re
from dataclasses import dataclass

import numpy as np

from ghz_ising import config
from ghz_ising.errors import CapExceededError, PauliParseError, SizeMismatchError, ValidationError

LETTERS = "IXYZ"

_SINGLE_SITE = {
    "I": np.array([[1, 0], [0, 1]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
# Matriz do par (1,1) é XZ = -iY, não Y
_SINGLE_SITE["XZ"] = _SINGLE_SITE["X"] @ _SINGLE_SITE["Z"]

_PHASES = (1, 1j, -1, -1j)

_COMPACT_RE = re.compile(r"^([IXYZ]+)$")
_TOKEN_RE = re.compile(r"^([IXYZ])(\d+)$")


def _popcount(value):
    return int(value).bit_count()


@dataclass(frozen=True)
class PauliString:
    """
    Operador i^phase_exp · W_1 ⊗ ... ⊗ W_n.

    Args:
        n (int): Número de sítios (>= 1)
        x_mask (int): Bits com componente X
        z_mask (int): Bits com componente Z
        phase_exp (int): Expoente da fase i, reduzido módulo 4
    """

    n: int
    x_mask: int = 0
    z_mask: int = 0
    phase_exp: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"Número de sítios deve ser >= 1, recebido: {self.n}")
        limit = 1 << self.n
        if not (0 <= self.x_mask < limit and 0 <= self.z_mask < limit):
            raise ValidationError(
                f"Máscaras fora dos {self.n} bits baixos: x={self.x_mask:#x}, z={self.z_mask:#x}"
            )
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # ---- construtores ----

    @classmethod
    def identity(cls, n):
        return cls(n)

    @classmethod
    def from_letters(cls, letters, sign=1):
        """
        Constrói a string a partir das letras por sítio (sítio 1 primeiro).

        Args:
            letters (str): Ex.: "YYZ"
            sign (int): +1 ou -1

        Returns:
            PauliString Hermitiana com coeficiente `sign`
        """
        if sign not in (1, -1):
            raise PauliParseError(f"Coeficiente deve ser +1 ou -1, recebido: {sign}")
        n = len(letters)
        if n == 0:
            raise PauliParseError("String de Pauli vazia")
        x_mask = z_mask = 0
        phase = 0 if sign == 1 else 2
        for site, letter in enumerate(letters, start=1):
            bit = 1 << (n - site)
            if letter == "X":
                x_mask |= bit
            elif letter == "Z":
                z_mask |= bit
            elif letter == "Y":
                x_mask |= bit
                z_mask |= bit
                phase += 1
            elif letter != "I":
                raise PauliParseError(f"Letra inválida '{letter}' no sítio {site}")
        return cls(n, x_mask, z_mask, phase)

    @classmethod
    def single(cls, n, site, letter):
        """Operador de um sítio (site 1-based) completado com identidades."""
        if not 1 <= site <= n:
            raise PauliParseError(f"Sítio {site} fora do intervalo 1..{n}")
        letters = ["I"] * n
        letters[site - 1] = letter
        return cls.from_letters("".join(letters))

    # ---- propriedades ----

    def bit(self, site):
        return 1 << (self.n - site)

    def letter_at(self, site):
        b = self.bit(site)
        x = bool(self.x_mask & b)
        z = bool(self.z_mask & b)
        return "IZXY"[2 * x + z]

    @property
    def letters(self):
        return "".join(self.letter_at(site) for site in range(1, self.n + 1))

    @property
    def y_count(self):
        return _popcount(self.x_mask & self.z_mask)

    @property
    def is_hermitian(self):
        return (self.phase_exp - self.y_count) % 2 == 0

    @property
    def coefficient(self):
        """Coeficiente escalar em relação ao produto de letras I/X/Y/Z."""
        return _PHASES[(self.phase_exp - self.y_count) % 4]

    @property
    def sign(self):
        """+1 ou -1 para observáveis Hermitianos."""
        if not self.is_hermitian:
            raise ValidationError(f"String não Hermitiana não tem sinal real: {format_pauli(self)}")
        return 1 if (self.phase_exp - self.y_count) % 4 == 0 else -1

    @property
    def is_identity(self):
        return self.x_mask == 0 and self.z_mask == 0

    @property
    def weight(self):
        return _popcount(self.x_mask | self.z_mask)

    def support(self):
        """Lista de (sítio, letra) nas posições não-identidade, em ordem crescente."""
        return [(site, self.letter_at(site)) for site in range(1, self.n + 1) if self.letter_at(site) != "I"]

    def sort_key(self):
        return tuple(LETTERS.index(letter) for letter in self.letters)

    def positive(self):
        """Mesma string com coeficiente +1 (somente Hermitianas)."""
        return self if self.sign == 1 else self.negated()

    def negated(self):
        return PauliString(self.n, self.x_mask, self.z_mask, self.phase_exp + 2)

    def __mul__(self, other):
        return multiply(self, other)

    def __str__(self):
        return format_pauli(self)


def _check_sizes(a, b):
    if a.n != b.n:
        raise SizeMismatchError(f"Número de sítios diferente: {a.n} vs {b.n}")


def multiply(a, b):
    """
    Produto exato a·b, com a fase acumulada.

    Z^{za} X^{xb} = (-1)^{|za & xb|} X^{xb} Z^{za}, daí a correção 2·popcount(za & xb).
    """
    _check_sizes(a, b)
    phase = a.phase_exp + b.phase_exp + 2 * _popcount(a.z_mask & b.x_mask)
    return PauliString(a.n, a.x_mask ^ b.x_mask, a.z_mask ^ b.z_mask, phase)


def commutes(a, b):
    """True se a forma simplética entre a e b se anula (mod 2)."""
    _check_sizes(a, b)
    return (_popcount(a.x_mask & b.z_mask) + _popcount(a.z_mask & b.x_mask)) % 2 == 0


def apply(p, amplitudes):
    """
    Aplica p ao vetor de amplitudes em O(2^n), sem montar matriz.

    Args:
        p (PauliString): Operador
        amplitudes (np.ndarray | StateVector): Vetor de 2^n componentes

    Returns:
        Mesmo tipo da entrada (StateVector ou np.ndarray)
    """
    vector = getattr(amplitudes, "amplitudes", amplitudes)
    vector = np.asarray(vector, dtype=complex)
    if vector.shape != (1 << p.n,):
        raise SizeMismatchError(
            f"Vetor com {vector.shape[0] if vector.ndim else 0} componentes para operador de {p.n} sítios"
        )
    index = np.arange(1 << p.n, dtype=np.int64)
    parity = np.bitwise_count(index & p.z_mask) & 1
    signs = 1 - 2 * parity.astype(np.int8)
    out = np.empty_like(vector)
    out[index ^ p.x_mask] = _PHASES[p.phase_exp] * signs * vector

    if hasattr(amplitudes, "amplitudes"):
        return type(amplitudes)(p.n, out, normalize=False)
    return out


def to_matrix(p, dense_cap=None):
    """
    Matriz densa 2^n x 2^n (oráculo para testes).

    Raises:
        CapExceededError: Se n passar do limite denso
    """
    cap = config.PAULI_DENSE_CAP if dense_cap is None else dense_cap
    if p.n > cap:
        raise CapExceededError(f"to_matrix limitado a n <= {cap}, recebido n = {p.n}")
    matrix = np.array([[1]], dtype=complex)
    for site in range(1, p.n + 1):
        b = p.bit(site)
        key = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "XZ"}[
            (int(bool(p.x_mask & b)), int(bool(p.z_mask & b)))
        ]
        matrix = np.kron(matrix, _SINGLE_SITE[key])
    return _PHASES[p.phase_exp] * matrix


def parse_pauli(text, n=None):
    """
    Lê uma string de Pauli.

    Formatos aceitos: compacto ("-YYZ") ou com índices 1-based ("Z1 Y2 Y3 Z4").

    Args:
        text (str): Texto a interpretar
        n (int): Número de sítios; obrigatório só se o formato indexado omitir sítios finais

    Returns:
        PauliString Hermitiana com coeficiente ±1

    Raises:
        PauliParseError: Letra inválida, sítio repetido ou fora do intervalo
    """
    if not isinstance(text, str) or text.strip() == "":
        raise PauliParseError("Texto vazio não é uma string de Pauli")
    body = text.strip()

    sign = 1
    if body[0] in "+-":
        sign = -1 if body[0] == "-" else 1
        body = body[1:].strip()
    if body == "":
        raise PauliParseError(f"Sinal sem operador: '{text}'")
    if body.startswith(("i", "j")):
        raise PauliParseError(f"Fase diferente de ±1 não é aceita: '{text}'")

    compact = _COMPACT_RE.match(body)
    if compact:
        letters = compact.group(1)
        if n is not None and len(letters) != n:
            raise PauliParseError(f"'{text}' tem {len(letters)} letras, esperado n = {n}")
        return PauliString.from_letters(letters, sign)

    sites = {}
    for token in body.split():
        match = _TOKEN_RE.match(token)
        if not match:
            raise PauliParseError(f"Token inválido '{token}' em '{text}'")
        letter, site = match.group(1), int(match.group(2))
        if site < 1 or (n is not None and site > n):
            raise PauliParseError(f"Sítio {site} fora do intervalo em '{text}'")
        if site in sites:
            raise PauliParseError(f"Sítio {site} repetido em '{text}'")
        sites[site] = letter

    size = n if n is not None else max(sites)
    letters = "".join(sites.get(site, "I") for site in range(1, size + 1))
    return PauliString.from_letters(letters, sign)


def format_pauli(p):
    """Forma canônica: sinal + letras compactas, ex.: "-YYZ"; fases ±i como "+i"/"-i"."""
    prefix = {1: "+", -1: "-", 1j: "+i", -1j: "-i"}[p.coefficient]
    return prefix + p.letters


def all_strings(n):
    """Gera as 4^n strings com coeficiente +1, em ordem canônica de letras (I < X < Y < Z)."""
    for code in range(4 ** n):
        letters = []
        for _ in range(n):
            letters.append(LETTERS[code % 4])
            code //= 4
        yield PauliString.from_letters("".join(reversed(letters)))
