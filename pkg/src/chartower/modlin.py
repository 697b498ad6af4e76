"""Small dense linear algebra over F_p (numpy int64, p odd < 2^31)."""

from __future__ import annotations

import numpy as np


def rref(mat: np.ndarray, p: int):
    """Row-reduced echelon form; returns (R, pivot_cols, rank)."""
    R = mat.astype(np.int64) % p
    rows, cols = R.shape
    piv = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        sel = np.nonzero(R[r:, c])[0]
        if sel.size == 0:
            continue
        i = r + int(sel[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * pow(int(R[r, c]), p - 2, p)) % p
        other = np.nonzero(R[:, c])[0]
        for j in other:
            if j != r:
                R[j] = (R[j] - R[j, c] * R[r]) % p
        piv.append(c)
        r += 1
    return R, piv, r


def nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of the right nullspace of mat over F_p."""
    R, piv, rank = rref(mat, p)
    cols = mat.shape[1]
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(piv):
            basis[k, pc] = (-R[r, fc]) % p
    return basis


def solve_right(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """X with A @ X = B (mod p); A must have full column rank."""
    n, m = A.shape
    aug = np.concatenate([A % p, B % p], axis=1).astype(np.int64)
    R, piv, rank = rref(aug, p)
    if rank > m or piv[:rank] != list(range(rank)) or rank < m:
        raise np.linalg.LinAlgError("singular system over F_p")
    if (R[m:, m:] % p != 0).any():
        raise np.linalg.LinAlgError("inconsistent system over F_p")
    return R[:m, m:] % p


def charpoly(A: np.ndarray, p: int) -> np.ndarray:
    """Characteristic polynomial coefficients (ascending) over F_p,
    via Hessenberg reduction (division-free of content, works for any p > n
    or not; only needs invertibility of chosen pivots which Hessenberg
    provides by row/column swaps)."""
    H = A.astype(np.int64) % p
    n = H.shape[0]
    for c in range(n - 2):
        sel = np.nonzero(H[c + 1:, c])[0]
        if sel.size == 0:
            continue
        i = c + 1 + int(sel[0])
        if i != c + 1:
            H[[c + 1, i]] = H[[i, c + 1]]
            H[:, [c + 1, i]] = H[:, [i, c + 1]]
        inv = pow(int(H[c + 1, c]), p - 2, p)
        for r in range(c + 2, n):
            if H[r, c]:
                f = (H[r, c] * inv) % p
                H[r] = (H[r] - f * H[c + 1]) % p
                H[:, c + 1] = (H[:, c + 1] + f * H[:, r]) % p
    # charpoly of Hessenberg by recurrence
    polys = [np.array([1], dtype=np.int64)]  # p_0 = 1
    for k in range(1, n + 1):
        # p_k(x) = (x - H[k-1,k-1]) p_{k-1}(x) - sum over subdiagonal products
        term = np.zeros(k + 1, dtype=object)
        prev = polys[k - 1]
        term[1:len(prev) + 1] += prev
        term[:len(prev)] -= (H[k - 1, k - 1] * prev) % p
        term %= p
        prod = 1
        for i in range(k - 2, -1, -1):
            prod = (prod * H[i + 1, i]) % p
            if prod == 0:
                break
            coef = (prod * H[i, k - 1]) % p
            if coef:
                pi = polys[i]
                term[:len(pi)] = (term[:len(pi)] - coef * pi) % p
        polys.append(term.astype(np.int64) % p)
    return polys[n]


def poly_roots(coeffs: np.ndarray, p: int) -> list[int]:
    """All roots in F_p of the polynomial (ascending coefficients)."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in coeffs[::-1]:
        acc = (acc * xs + int(c)) % p
    return [int(x) for x in np.nonzero(acc == 0)[0]]
