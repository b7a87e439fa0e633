"""Small exact linear algebra over Q (Fractions) and prime fields.

Matrices are 2-D numpy arrays: ``dtype=object`` holding ``Fraction``/``int``
over Q, or integer arrays reduced mod ``p``.  Shapes with a zero dimension
are fine everywhere.  ``p=None`` selects the rationals.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = [
    "qmatrix",
    "zeros",
    "identity",
    "rref",
    "rank",
    "nullspace",
    "column_basis",
    "complement",
    "solve",
    "reduce_mod",
    "clear_denominators",
    "is_zero",
]


def qmatrix(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Object array of Fractions; ``shape`` is needed when ``rows`` is empty."""
    if shape is not None and (shape[0] == 0 or shape[1] == 0):
        return np.zeros(shape, dtype=object)
    arr = np.array(rows, dtype=object)
    if arr.ndim != 2:
        if shape is None:
            raise ValueError("cannot infer matrix shape")
        arr = arr.reshape(shape)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = Fraction(x)
    if shape is not None and out.shape != tuple(shape):
        raise ValueError(f"matrix shape {out.shape} does not match {shape}")
    return out


def zeros(r: int, c: int, p: int | None = None) -> np.ndarray:
    if p is None:
        out = np.empty((r, c), dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros((r, c), dtype=np.int64)


def identity(n: int, p: int | None = None) -> np.ndarray:
    out = zeros(n, n, p)
    for i in range(n):
        out[i, i] = Fraction(1) if p is None else 1
    return out


def is_zero(A: np.ndarray) -> bool:
    return not any(x != 0 for x in A.flat)


def _prep(A: np.ndarray, p: int | None) -> np.ndarray:
    if p is None:
        out = np.empty(A.shape, dtype=object)
        for idx, x in np.ndenumerate(A):
            out[idx] = Fraction(x)
        return out
    return np.asarray(A, dtype=np.int64) % p


def rref(A: np.ndarray, p: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = _prep(A, p)
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if M[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        if p is None:
            M[r] = M[r] / M[r, c]
        else:
            M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and M[i, c] != 0:
                if p is None:
                    M[i] = M[i] - M[i, c] * M[r]
                else:
                    M[i] = (M[i] - M[i, c] * M[r]) % p
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A: np.ndarray, p: int | None = None) -> int:
    if 0 in A.shape:
        return 0
    return len(rref(A, p)[1])


def nullspace(A: np.ndarray, p: int | None = None) -> np.ndarray:
    """Basis of the kernel, as the columns of the returned matrix."""
    rows, cols = A.shape
    if rows == 0:
        return identity(cols, p)
    R, pivots = rref(A, p)
    free = [c for c in range(cols) if c not in pivots]
    N = zeros(cols, len(free), p)
    for j, f in enumerate(free):
        N[f, j] = 1
        for i, pc in enumerate(pivots):
            N[pc, j] = -R[i, f] if p is None else (-R[i, f]) % p
    return N


def column_basis(A: np.ndarray, p: int | None = None) -> np.ndarray:
    """Pivot columns of ``A``: a basis of its column space."""
    if 0 in A.shape:
        return zeros(A.shape[0], 0, p)
    _, pivots = rref(A, p)
    return _prep(A[:, pivots], p)


def complement(W: np.ndarray, V: np.ndarray, p: int | None = None) -> np.ndarray:
    """Columns of ``V`` completing the columns of ``W`` to a basis of span(W, V).

    ``W`` must have independent columns.
    """
    k = W.shape[1]
    if V.shape[1] == 0:
        return zeros(W.shape[0], 0, p)
    stacked = np.concatenate([_prep(W, p), _prep(V, p)], axis=1)
    _, pivots = rref(stacked, p)
    picked = [c - k for c in pivots if c >= k]
    return _prep(V[:, picked], p)


def solve(A: np.ndarray, Y: np.ndarray, p: int | None = None) -> np.ndarray:
    """The unique ``X`` with ``A X = Y`` for ``A`` with independent columns.

    Raises ``ValueError`` when some column of ``Y`` is outside the span.
    """
    n, k = A.shape
    m = Y.shape[1]
    if k == 0:
        if not is_zero(Y):
            raise ValueError("vector outside the column span")
        return zeros(0, m, p)
    aug = np.concatenate([_prep(A, p), _prep(Y, p)], axis=1)
    R, pivots = rref(aug, p)
    if pivots[:k] != list(range(k)):
        raise ValueError("columns of A are dependent")
    if any(c >= k for c in pivots):
        raise ValueError("vector outside the column span")
    return R[:k, k:]


def reduce_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Entrywise reduction of a rational matrix; denominators must be prime to ``p``."""
    out = np.zeros(A.shape, dtype=np.int64)
    for idx, x in np.ndenumerate(A):
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"denominator divisible by {p}")
        out[idx] = (x.numerator * pow(x.denominator, -1, p)) % p
    return out


def clear_denominators(A: np.ndarray) -> np.ndarray:
    """Positive rational multiple of ``A`` with coprime integer entries."""
    from math import gcd, lcm

    vals = [Fraction(x) for x in A.flat]
    nz = [x for x in vals if x != 0]
    out = np.zeros(A.shape, dtype=object)
    if not nz:
        return out
    den = lcm(*(x.denominator for x in nz))
    num = 0
    for x in nz:
        num = gcd(num, int(x * den))
    for idx, x in np.ndenumerate(A):
        out[idx] = int(Fraction(x) * den) // num
    return out
