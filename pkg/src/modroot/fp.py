"""Linear algebra over a prime field F_p on numpy int64 arrays."""

from __future__ import annotations

import numpy as np


def as_fp(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def inv_scalar(x: int, p: int) -> int:
    return pow(int(x) % p, p - 2, p)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = as_fp(a, p).copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * inv_scalar(m[r, c], p)) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int, ncols: int | None = None) -> np.ndarray:
    """Columns form a basis of {x : a x = 0}."""
    a = np.asarray(a, dtype=np.int64)
    if ncols is None:
        ncols = a.shape[1]
    if a.size == 0:
        return np.eye(ncols, dtype=np.int64)
    m, piv = rref(a.reshape(-1, ncols), p)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = np.zeros((ncols, len(free)), dtype=np.int64)
    for k, c in enumerate(free):
        basis[c, k] = 1
        for r, pc in enumerate(piv):
            basis[pc, k] = (-m[r, c]) % p
    return basis


def colspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns of a that form a basis of its column space."""
    a = as_fp(a, p)
    if a.size == 0:
        return a.reshape(a.shape[0], 0)
    _, piv = rref(a, p)
    return a[:, piv]


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    m, piv = rref(np.hstack([as_fp(a, p), np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix over F_p")
    return m[:, n:]


def det(a: np.ndarray, p: int) -> int:
    m = as_fp(a, p).copy()
    n = m.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(m[c:, c])[0]
        if nz.size == 0:
            return 0
        k = c + nz[0]
        if k != c:
            m[[c, k]] = m[[k, c]]
            d = -d
        d = (d * int(m[c, c])) % p
        iv = inv_scalar(m[c, c], p)
        below = m[c + 1:, c].copy()
        nzb = np.nonzero(below)[0]
        if nzb.size:
            f = (below[nzb] * iv) % p
            m[c + 1 + nzb] = (m[c + 1 + nzb] - np.outer(f, m[c])) % p
    return d % p


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some x with a x = b, or None when inconsistent."""
    a = as_fp(a, p)
    b = as_fp(b, p).reshape(a.shape[0], -1)
    m, piv = rref(np.hstack([a, b]), p)
    ncols = a.shape[1]
    if any(c >= ncols for c in piv):
        return None
    x = np.zeros((ncols, b.shape[1]), dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = m[r, ncols:]
    return x


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p
