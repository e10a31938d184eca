"""Dense linear algebra over GF(q) on int64 encoding arrays."""

from __future__ import annotations

import numpy as np

from .galois import FiniteField

__all__ = [
    "as_matrix",
    "rref",
    "rref_rank",
    "rank",
    "nullspace",
    "matmul",
    "inverse",
    "row_reduce_against",
    "in_rowspace",
]


def as_matrix(F: FiniteField, M, ncols: int | None = None) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else np.zeros((0, ncols or 0), dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    if A.size and (A.min() < 0 or A.max() >= F.q):
        raise ValueError(f"entries outside GF({F.q})")
    return A


def _prime(F: FiniteField) -> bool:
    return F.e == 1


def rref(F: FiniteField, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    A = as_matrix(F, M).copy()
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    p = F.p
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = F.mul(F.inv_s(lead), A[r])
        col = A[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if others.size:
            if F.q == 2:
                A[others] ^= A[r]
            elif _prime(F):
                A[others] = (A[others] - col[others, None] * A[r][None, :]) % p
            else:
                A[others] = F.sub(A[others], F.mul(col[others, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rref_rank(F: FiniteField, M) -> tuple[np.ndarray, int]:
    R, piv = rref(F, M)
    return R, len(piv)


def rank(F: FiniteField, M) -> int:
    return len(rref(F, M)[1])


def nullspace(F: FiniteField, M, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of {x : M x^T = 0}."""
    A = as_matrix(F, M, ncols)
    n = A.shape[1] if A.size or ncols is None else ncols
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in set(piv)]
    N = np.zeros((len(free), n), dtype=np.int64)
    for i, fcol in enumerate(free):
        N[i, fcol] = 1
        N[i, piv] = F.neg(R[:, fcol])
    return N


def matmul(F: FiniteField, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise ValueError("shape mismatch")
    if _prime(F):
        # entries < p and inner length small enough that int64 cannot overflow
        return (A @ B) % F.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if A.shape[1] == 0:
        return out
    step = max(1, 2_000_000 // max(1, A.shape[1] * B.shape[1]))
    for s in range(0, A.shape[0], step):
        prod = F.mul(A[s : s + step, :, None], B[None, :, :])
        out[s : s + step] = F.sum(prod, axis=1)
    return out


def inverse(F: FiniteField, M) -> np.ndarray:
    A = as_matrix(F, M)
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError("matrix is not square")
    R, piv = rref(F, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise np.linalg.LinAlgError("matrix is singular")
    return R[:n, n:]


def row_reduce_against(F: FiniteField, R: np.ndarray, pivots: list[int], V) -> np.ndarray:
    """Reduce rows of V modulo the row space of the RREF matrix (R, pivots)."""
    V = np.array(V, dtype=np.int64, copy=True)
    if V.ndim == 1:
        V = V.reshape(1, -1)
    for i, c in enumerate(pivots):
        coef = V[:, c].copy()
        nz = np.nonzero(coef)[0]
        if nz.size == 0:
            continue
        if F.q == 2:
            V[nz] ^= R[i]
        elif _prime(F):
            V[nz] = (V[nz] - coef[nz, None] * R[i][None, :]) % F.p
        else:
            V[nz] = F.sub(V[nz], F.mul(coef[nz, None], R[i][None, :]))
    return V


def in_rowspace(F: FiniteField, R: np.ndarray, pivots: list[int], V) -> np.ndarray:
    """Boolean per row of V: does it lie in the row space of (R, pivots)?"""
    return ~row_reduce_against(F, R, pivots, V).any(axis=1)
