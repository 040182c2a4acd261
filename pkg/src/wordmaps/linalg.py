"""Dense linear algebra over finite fields on numpy arrays of field codes."""
from __future__ import annotations

import numpy as np

from .ff import FieldSpec, Poly


def identity(F: FieldSpec, n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def asmat(a) -> np.ndarray:
    return np.asarray(a, dtype=np.int64)


def matmul(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = asmat(A)
    B = asmat(B)
    if F.k == 1:
        return (A @ B) % F.p
    # table fields: fold the inner index with the addition table
    prod = F.mul(A[:, :, None], B[None, :, :])
    acc = prod[:, 0, :]
    for j in range(1, A.shape[1]):
        acc = F.add(acc, prod[:, j, :])
    return acc


def matvec(F: FieldSpec, A: np.ndarray, V: np.ndarray) -> np.ndarray:
    """A applied to the columns of V (V may be a vector or a matrix)."""
    V = asmat(V)
    if V.ndim == 1:
        return matmul(F, A, V[:, None])[:, 0]
    return matmul(F, A, V)


def transpose(A):
    return asmat(A).T.copy()


def conj(F: FieldSpec, A: np.ndarray, times: int) -> np.ndarray:
    """Entrywise Frobenius x -> x^(p^times)."""
    return asmat(F.frob(asmat(A), times))


def scalar_mul(F: FieldSpec, c: int, A: np.ndarray) -> np.ndarray:
    return asmat(F.mul(np.full_like(asmat(A), int(c)), asmat(A)))


def add(F, A, B):
    return asmat(F.add(asmat(A), asmat(B)))


def sub(F, A, B):
    return asmat(F.sub(asmat(A), asmat(B)))


def block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    i = 0
    for b in blocks:
        m = b.shape[0]
        out[i:i + m, i:i + m] = b
        i += m
    return out


def rref(F: FieldSpec, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = asmat(A).copy()
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = F.inv(int(M[r, c]))
        if inv != 1:
            M[r] = F.mul(M[r], inv)
        col = M[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if len(others):
            M[others] = F.sub(M[others], F.mul(col[others][:, None], M[r][None, :]))
        pivots.append(c)
        r += 1
    return M, pivots


def rank(F: FieldSpec, A: np.ndarray) -> int:
    A = asmat(A)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: FieldSpec, A: np.ndarray) -> np.ndarray:
    """Basis of {v : A v = 0}, returned as columns of a matrix."""
    A = asmat(A)
    rows, cols = A.shape
    R, piv = rref(F, A)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(piv):
            basis[pc, j] = F.neg(int(R[i, f]))
    return basis


def left_nullspace(F, A):
    return nullspace(F, transpose(A))


def inverse(F: FieldSpec, A: np.ndarray) -> np.ndarray:
    A = asmat(A)
    n = A.shape[0]
    aug = np.concatenate([A, identity(F, n)], axis=1)
    R, piv = rref(F, aug)
    if len(piv) < n or piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:].copy()


def solve(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray | None:
    """Some X with A X = B, or None."""
    A = asmat(A)
    B = asmat(B)
    vec = B.ndim == 1
    if vec:
        B = B[:, None]
    rows, cols = A.shape
    R, piv = rref(F, np.concatenate([A, B], axis=1))
    if any(p >= cols for p in piv):
        return None
    X = np.zeros((cols, B.shape[1]), dtype=np.int64)
    for i, pc in enumerate(piv):
        X[pc] = R[i, cols:]
    return X[:, 0] if vec else X


def det(F: FieldSpec, A: np.ndarray) -> int:
    M = asmat(A).copy()
    n = M.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(M[c:, c])[0]
        if len(nz) == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            M[[c, piv]] = M[[piv, c]]
            d = F.neg(d)
        d = int(F.mul(d, int(M[c, c])))
        inv = F.inv(int(M[c, c]))
        below = M[c + 1:, c]
        idx = np.nonzero(below)[0]
        if len(idx):
            rows = c + 1 + idx
            factors = F.mul(below[idx], inv)
            M[rows] = F.sub(M[rows], F.mul(factors[:, None], M[c][None, :]))
    return int(d)


def charpoly(F: FieldSpec, A: np.ndarray) -> Poly:
    """Characteristic polynomial det(xI - A) via Hessenberg reduction."""
    H = asmat(A).copy()
    n = H.shape[0]
    # reduce to upper Hessenberg form by similarity
    for c in range(n - 2):
        nz = np.nonzero(H[c + 1:, c])[0]
        if len(nz) == 0:
            continue
        piv = c + 1 + int(nz[0])
        if piv != c + 1:
            H[[c + 1, piv]] = H[[piv, c + 1]]
            H[:, [c + 1, piv]] = H[:, [piv, c + 1]]
        inv = F.inv(int(H[c + 1, c]))
        for r in range(c + 2, n):
            if H[r, c]:
                f = int(F.mul(int(H[r, c]), inv))
                H[r] = F.sub(H[r], F.mul(f, H[c + 1]))
                H[:, c + 1] = F.add(H[:, c + 1], F.mul(f, H[:, r]))
    # recurrence for the characteristic polynomials of leading blocks
    p = [Poly(F, [1])]
    x = Poly.x(F)
    for m in range(1, n + 1):
        pm = (x - Poly.const(F, int(H[m - 1, m - 1]))) * p[m - 1]
        t = 1
        for i in range(1, m):
            t = int(F.mul(t, int(H[m - i, m - i - 1])))
            coef = int(F.mul(t, int(H[m - i - 1, m - 1])))
            if coef:
                pm = pm - p[m - i - 1].scale(coef)
        p.append(pm)
    return p[n]


def poly_eval_matrix(F: FieldSpec, f: Poly, A: np.ndarray) -> np.ndarray:
    A = asmat(A)
    n = A.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    I = identity(F, n)
    for c in reversed(f.c):
        acc = matmul(F, acc, A)
        if c:
            acc = F.add(acc, F.mul(I, int(c)))
    return asmat(acc)


def mat_pow(F: FieldSpec, A: np.ndarray, e: int) -> np.ndarray:
    A = asmat(A)
    if e < 0:
        A = inverse(F, A)
        e = -e
    out = identity(F, A.shape[0])
    while e:
        if e & 1:
            out = matmul(F, out, A)
        A = matmul(F, A, A)
        e >>= 1
    return out


def is_identity(A: np.ndarray) -> bool:
    A = asmat(A)
    return bool(np.array_equal(A, np.eye(A.shape[0], dtype=np.int64)))


def companion(F: FieldSpec, f: Poly) -> np.ndarray:
    """Companion matrix of a monic polynomial (acts on column vectors)."""
    f = f.monic()
    n = f.deg
    C = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n):
        C[i, i - 1] = 1
    for i in range(n):
        C[i, n - 1] = F.neg(f.c[i])
    return C


def kernel_dim(F: FieldSpec, A: np.ndarray) -> int:
    A = asmat(A)
    return A.shape[1] - rank(F, A)


def span_basis(F: FieldSpec, V: np.ndarray) -> np.ndarray:
    """Column basis (in reduced form) of the span of the columns of V."""
    V = asmat(V)
    if V.size == 0:
        return np.zeros((V.shape[0], 0), dtype=np.int64)
    R, piv = rref(F, V.T)
    return R[: len(piv)].T.copy()


def complement_basis(F: FieldSpec, U: np.ndarray, n: int) -> np.ndarray:
    """Columns extending the column span of U to F^n (standard vectors)."""
    cur = asmat(U).reshape(n, -1)
    r = rank(F, cur) if cur.size else 0
    extra = []
    for i in range(n):
        e = np.zeros((n, 1), dtype=np.int64)
        e[i, 0] = 1
        cand = np.concatenate([cur, e], axis=1) if cur.size else e
        rr = rank(F, cand)
        if rr > r:
            cur, r = cand, rr
            extra.append(e[:, 0])
    return np.array(extra, dtype=np.int64).T.reshape(n, len(extra))
