"""
Álgebra linear sobre GF(2) com matrizes numpy uint8
"""

import itertools

import numpy as np

# Acima disso o espaço nulo não é enumerado por inteiro
NULL_SPACE_ENUMERATION_CAP = 16


def as_gf2(matrix):
    return (np.asarray(matrix) & 1).astype(np.uint8)


def row_reduce(matrix, rhs):
    """
    Eliminação de Gauss-Jordan em [M | rhs | I].

    A identidade anexada registra quais linhas originais compõem cada linha
    reduzida, o que permite extrair certificados de dependência.

    Args:
        matrix (np.ndarray): m x v sobre GF(2)
        rhs (np.ndarray): m

    Returns:
        tuple: (matriz aumentada reduzida, lista de colunas pivô)
    """
    m_rows, n_vars = matrix.shape
    aug = np.concatenate(
        [as_gf2(matrix), as_gf2(rhs).reshape(-1, 1), np.eye(m_rows, dtype=np.uint8)],
        axis=1,
    )
    pivots = []
    r = 0
    for c in range(n_vars):
        if r >= m_rows:
            break
        rows = np.where(aug[r:, c] == 1)[0]
        if rows.size == 0:
            continue
        p = r + int(rows[0])
        if p != r:
            aug[[r, p], :] = aug[[p, r], :]
        ones = np.where(aug[:, c] == 1)[0]
        ones = ones[ones != r]
        if ones.size:
            aug[ones, :] ^= aug[r, :]
        pivots.append(c)
        r += 1
    return aug, pivots


def solve(matrix, rhs):
    """
    Resolve M·v = rhs sobre GF(2).

    Returns:
        tuple: (solução ou None, base do espaço nulo à esquerda)
        A solução fixa as variáveis livres em 0.
    """
    matrix = as_gf2(matrix)
    m_rows, n_vars = matrix.shape
    aug, pivots = row_reduce(matrix, rhs)
    null_basis = [(aug[r, n_vars + 1:].copy(), int(aug[r, n_vars])) for r in range(len(pivots), m_rows)]

    if any(parity == 1 for _, parity in null_basis):
        return None, null_basis

    solution = np.zeros(n_vars, dtype=np.uint8)
    for r, c in enumerate(pivots):
        solution[c] = aug[r, n_vars]
    return solution, null_basis


def minimal_odd_dependency(null_basis):
    """
    Subconjunto de linhas de menor cardinalidade com soma nula e paridade ímpar.

    Enumera o espaço nulo inteiro quando a dimensão cabe no limite; empates
    resolvidos pela ordem lexicográfica dos índices. Acima do limite, devolve
    o primeiro vetor ímpar da eliminação.

    Returns:
        tuple: índices (0-based) das linhas, ou None se não houver dependência ímpar
    """
    if not any(parity == 1 for _, parity in null_basis):
        return None

    if len(null_basis) > NULL_SPACE_ENUMERATION_CAP:
        vector = next(v for v, parity in null_basis if parity == 1)
        return tuple(int(i) for i in np.flatnonzero(vector))

    vectors = np.array([v for v, _ in null_basis], dtype=np.uint8)
    parities = np.array([p for _, p in null_basis], dtype=np.uint8)
    best = None
    for coefficients in itertools.product((0, 1), repeat=len(null_basis)):
        coefficients = np.array(coefficients, dtype=np.uint8)
        if int(coefficients @ parities) % 2 == 0:
            continue
        combined = (coefficients @ vectors) % 2
        candidate = tuple(int(i) for i in np.flatnonzero(combined))
        key = (len(candidate), candidate)
        if best is None or key < best:
            best = key
    return best[1]
