"""Dense complex linear algebra: permanents, determinants, unitarity, Haar sampling.

All matrices are plain ``numpy.ndarray`` objects with dtype ``complex128``.
Inputs are validated for finiteness once, on entry; NaN/Inf never propagate
into the kernels.
"""

from __future__ import annotations

from itertools import permutations
from math import factorial

import numpy as np

NAIVE_MAX = 10
RYSER_MAX = 30

#: Default tolerance for structural checks (unitarity, symmetry residuals).
STRUCT_TOL = 1e-12
#: Default tolerance for probability comparisons.
PROB_TOL = 1e-10


def as_complex_matrix(matrix) -> np.ndarray:
    """Coerce to a 2-D complex128 array, rejecting non-finite entries."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def _as_square(matrix) -> np.ndarray:
    m = as_complex_matrix(matrix)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


_PERM_TABLES: dict[int, np.ndarray] = {}
_SIGN_TABLES: dict[int, np.ndarray] = {}


def permutation_table(n: int) -> np.ndarray:
    """All permutations of range(n) as an (n!, n) int array, lexicographic."""
    if n not in _PERM_TABLES:
        _PERM_TABLES[n] = np.array(list(permutations(range(n))), dtype=np.intp).reshape(
            factorial(n), n
        )
    return _PERM_TABLES[n]


def permutation_signs(n: int) -> np.ndarray:
    """Signatures (+1/-1) aligned with :func:`permutation_table`."""
    if n not in _SIGN_TABLES:
        table = permutation_table(n)
        signs = np.empty(len(table), dtype=np.float64)
        for i, row in enumerate(table):
            seen = [False] * n
            transpositions = 0
            for start in range(n):
                if seen[start]:
                    continue
                j = start
                length = 0
                while not seen[j]:
                    seen[j] = True
                    j = row[j]
                    length += 1
                transpositions += length - 1
            signs[i] = -1.0 if transpositions % 2 else 1.0
        _SIGN_TABLES[n] = signs
    return _SIGN_TABLES[n]


def permanent_naive(matrix, signed: bool = False) -> complex:
    """Permanent by explicit enumeration of all n! permutations.

    With ``signed=True`` each term carries the permutation signature, which
    turns the sum into the Leibniz determinant; that variant exists purely as
    an oracle for the elimination-based determinant.

    Only sensible for n <= 10.
    """
    m = _as_square(matrix)
    n = m.shape[0]
    if n > NAIVE_MAX:
        raise ValueError(f"naive permanent limited to n <= {NAIVE_MAX}, got {n}")
    if n == 0:
        return 1.0 + 0.0j
    table = permutation_table(n)
    terms = np.prod(m[np.arange(n)[None, :], table], axis=1)
    if signed:
        terms = terms * permutation_signs(n)
    return complex(terms.sum())


def permanent_ryser(matrix) -> complex:
    """Permanent via Ryser's inclusion-exclusion with Gray-code subset order.

    One column add/subtract updates the running row sums per subset step,
    giving O(2^n * n) scalar work. Agrees with :func:`permanent_naive`.
    """
    m = _as_square(matrix)
    n = m.shape[0]
    if n > RYSER_MAX:
        raise ValueError(f"Ryser permanent limited to n <= {RYSER_MAX}, got {n}")
    if n == 0:
        return 1.0 + 0.0j
    rowsums = np.zeros(n, dtype=complex)
    total = 0.0 + 0.0j
    subset_sign = 1.0
    gray = 0
    for k in range(1, 1 << n):
        bit = k & -k
        j = bit.bit_length() - 1
        gray ^= bit
        if gray & bit:
            rowsums += m[:, j]
        else:
            rowsums -= m[:, j]
        subset_sign = -subset_sign
        total += subset_sign * rowsums.prod()
    if n % 2:
        total = -total
    return complex(total)


def determinant(matrix) -> complex:
    """Determinant by LU elimination with partial pivoting.

    Row swaps flip the sign; a zero pivot column short-circuits to 0.
    """
    m = _as_square(matrix).copy()
    n = m.shape[0]
    det = 1.0 + 0.0j
    for col in range(n):
        pivot = col + int(np.argmax(np.abs(m[col:, col])))
        if m[pivot, col] == 0:
            return 0.0 + 0.0j
        if pivot != col:
            m[[col, pivot]] = m[[pivot, col]]
            det = -det
        det *= m[col, col]
        if col + 1 < n:
            factors = m[col + 1 :, col] / m[col, col]
            m[col + 1 :, col:] -= np.outer(factors, m[col, col:])
    return complex(det)


def is_unitary(matrix, tol: float = STRUCT_TOL) -> bool:
    """True iff the max-norm of M†M - 1 is within ``tol``. Non-square is False."""
    m = as_complex_matrix(matrix)
    if m.shape[0] != m.shape[1]:
        return False
    gram = m.conj().T @ m
    return float(np.max(np.abs(gram - np.eye(m.shape[0])))) <= tol


def haar_random_unitary(q: int, rng) -> np.ndarray:
    """Haar-distributed q x q unitary from QR of a complex Ginibre matrix.

    ``rng`` is an integer seed or a ``numpy.random.Generator``; the same seed
    always reproduces the same matrix bit for bit. The R diagonal is phase
    fixed so the distribution is exactly Haar rather than QR-convention
    dependent.
    """
    if q < 1:
        raise ValueError("dimension must be at least 1")
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    z = (gen.standard_normal((q, q)) + 1j * gen.standard_normal((q, q))) / np.sqrt(2.0)
    qmat, rmat = np.linalg.qr(z)
    diag = np.diagonal(rmat).copy()
    diag /= np.abs(diag)
    return qmat * diag
