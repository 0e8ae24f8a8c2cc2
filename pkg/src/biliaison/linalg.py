"""Dense linear algebra over F_p with int64 numpy arrays.

Entries stay in range(p); p < 2**31 keeps every product inside int64.
"""

from __future__ import annotations

import numpy as np


def _as_array(a, p: int) -> np.ndarray:
    arr = np.array(a, dtype=np.int64, copy=True)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    return arr % p


def row_echelon(a, p: int) -> tuple:
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    m = _as_array(a, p)
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a, p: int) -> int:
    arr = np.asarray(a)
    if arr.size == 0:
        return 0
    return len(row_echelon(arr, p)[1])


def nullspace(a, p: int, ncols: int | None = None) -> np.ndarray:
    """Basis of {x : a @ x = 0} as the rows of the returned array."""
    arr = np.asarray(a, dtype=np.int64)
    if arr.size == 0:
        n = ncols if ncols is not None else (arr.shape[1] if arr.ndim == 2 else 0)
        return np.eye(n, dtype=np.int64)
    r, piv = row_echelon(arr, p)
    n = arr.shape[1]
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(piv):
            basis[k, c] = (-r[i, f]) % p
    return basis


def matmul(a, b, p: int) -> np.ndarray:
    """Product mod p without int64 overflow for long inner dimensions."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    step = max(1, (1 << 62) // (p * p))
    for k in range(0, a.shape[1], step):
        out = (out + a[:, k:k + step] @ b[k:k + step]) % p
    return out


def in_span(rows, v, p: int) -> bool:
    """Whether vector v lies in the row span of ``rows``."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return not np.any(np.asarray(v) % p)
    return rank(np.vstack([rows, v]), p) == rank(rows, p)
