"""Linear algebra over Q[sqrt(d)], over floats, and over polynomial entries.

Scalar routines are written once and work on FieldElem entries (exact) or
Python floats; the float path pivots on magnitude and treats entries below a
relative threshold as zero.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from .field import FieldElem

FLOAT_RANK_TOL = 1e-10


def _is_float_matrix(rows) -> bool:
    return any(isinstance(x, float) for row in rows for x in row)


def _exact(x):
    return x if isinstance(x, FieldElem) else FieldElem.coerce(x)


def rref(A):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    rows = [list(r) for r in A]
    if not rows:
        return rows, []
    if _is_float_matrix(rows):
        return _rref_float(rows)
    rows = [[_exact(x) for x in r] for r in rows]
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = FieldElem(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _rref_float(rows):
    M = np.array(rows, dtype=float)
    scale = np.abs(M).max() if M.size else 0.0
    tol = FLOAT_RANK_TOL * max(scale, 1.0)
    nr, nc = M.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = r + int(np.argmax(np.abs(M[r:, c])))
        if abs(M[p, c]) <= tol:
            M[r:, c] = 0.0
            continue
        M[[r, p]] = M[[p, r]]
        M[r] /= M[r, c]
        for i in range(nr):
            if i != r:
                M[i] -= M[i, c] * M[r]
        pivots.append(c)
        r += 1
    return M.tolist(), pivots


def rank(A) -> int:
    if not A:
        return 0
    if _is_float_matrix(A):
        s = np.linalg.svd(np.array(A, dtype=float), compute_uv=False)
        if not s.size or s[0] == 0:
            return 0
        return int((s > FLOAT_RANK_TOL * s[0]).sum())
    return len(rref(A)[1])


def nullspace(A, ncols: int | None = None):
    """Basis of {x : A x = 0}.

    Exact input gives the standard RREF basis (free variable set to 1);
    float input uses the SVD with relative threshold ``FLOAT_RANK_TOL``.
    """
    if not A:
        n = ncols or 0
        return [[FieldElem(1) if i == j else FieldElem(0) for i in range(n)] for j in range(n)]
    if _is_float_matrix(A):
        M = np.array(A, dtype=float)
        _, s, vt = np.linalg.svd(M)
        r = int((s > FLOAT_RANK_TOL * (s[0] if s.size else 0)).sum()) if s.size and s[0] > 0 else 0
        return [list(v) for v in vt[r:]]
    R, pivots = rref(A)
    n = len(A[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [FieldElem(0)] * n
        v[f] = FieldElem(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve_linear(A, b=None):
    """Solve ``A x = b`` exactly.

    Returns ``(particular, kernel_basis)``; ``particular`` is None when the
    system is inconsistent.  With ``b`` omitted the homogeneous system is
    solved and ``particular`` is the zero vector.
    """
    n = len(A[0]) if A else 0
    kernel = nullspace(A, n)
    if b is None:
        zero = 0.0 if A and _is_float_matrix(A) else FieldElem(0)
        return [zero] * n, kernel
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, pivots = rref(aug)
    if n in pivots:
        return None, kernel
    float_mode = _is_float_matrix(aug)
    x = [0.0 if float_mode else FieldElem(0)] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x, kernel


def inverse(A):
    """Inverse of a square matrix with exact or float entries."""
    n = len(A)
    if _is_float_matrix(A):
        return np.linalg.inv(np.array(A, dtype=float)).tolist()
    one, zero = FieldElem(1), FieldElem(0)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(A)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def det(A):
    n = len(A)
    if n == 0:
        return FieldElem(1)
    if _is_float_matrix(A):
        return float(np.linalg.det(np.array(A, dtype=float)))
    rows = [[_exact(x) for x in r] for r in A]
    sign = 1
    result = FieldElem(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return FieldElem(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        piv = rows[c][c]
        result = result * piv
        inv = FieldElem(1) / piv
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result if sign > 0 else -result


def matvec(M, v):
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(acc)
    return out


def matmul(A, B):
    Bt = list(zip(*B))
    return [[_dot(row, col) for col in Bt] for row in A]


def _dot(u, v):
    acc = 0
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def transpose(A):
    return [list(r) for r in zip(*A)]


def bilinear(G, u, v):
    """``u^T G v``."""
    return _dot(u, matvec(G, v))


def identity(n, one=None, zero=None):
    one = FieldElem(1) if one is None else one
    zero = FieldElem(0) if zero is None else zero
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


# -- polynomial / rational-function matrices --------------------------------


def _minor_table(M, rows):
    """Determinants of the square submatrices on ``rows`` (in order) and every
    column subset of matching size, by expansion along the last row."""
    n = len(M[0])
    table = {(): 1}
    for k, r in enumerate(rows, start=1):
        nxt = {}
        for cols in combinations(range(n), k):
            acc = None
            for pos, c in enumerate(cols):
                entry = M[r][c]
                if _iszero(entry):
                    continue
                sub = table[cols[:pos] + cols[pos + 1:]]
                if isinstance(sub, int) and sub == 1:
                    term = entry
                elif _iszero(sub):
                    continue
                else:
                    term = sub * entry
                if (k - 1 - pos) % 2:
                    term = -term
                acc = term if acc is None else acc + term
            nxt[cols] = 0 if acc is None else acc
        table = nxt
    return table


def _iszero(x):
    if isinstance(x, int):
        return x == 0
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return not x


def det_adjugate(M):
    """Determinant and adjugate of a square matrix of Poly entries.

    Division-free (minor expansion with memoised column subsets), so it is
    exact over any commutative ring.
    """
    n = len(M)
    zero = _zero_like(M)
    full = _minor_table(M, list(range(n)))[tuple(range(n))]
    if isinstance(full, int):
        full = zero + full
    adj = [[zero] * n for _ in range(n)]
    for i in range(n):
        rows = [r for r in range(n) if r != i]
        table = _minor_table(M, rows)
        for j in range(n):
            cols = tuple(c for c in range(n) if c != j)
            minor = table[cols]
            if isinstance(minor, int):
                minor = zero + minor
            # adj[j][i] = (-1)^(i+j) * minor(i, j)
            adj[j][i] = -minor if (i + j) % 2 else minor
    return full, adj


def _zero_like(M):
    for row in M:
        for x in row:
            if hasattr(x, "variables"):
                return x * 0
    return FieldElem(0)


def inverse_expr(M):
    """Inverse of a square matrix of Poly/RatFun entries as RatFun entries."""
    from .poly import Poly, RatFun

    n = len(M)
    dens = []
    for row in M:
        for x in row:
            if isinstance(x, RatFun) and not x.is_polynomial():
                if not any(x.den == d for d in dens):
                    dens.append(x.den)
    variables = next(x.variables for row in M for x in row if hasattr(x, "variables"))
    L = Poly.constant(1, variables)
    for d in dens:
        L = L * d
    P = []
    for row in M:
        prow = []
        for x in row:
            if isinstance(x, RatFun):
                q = (x * L)
                prow.append(q.as_poly() if isinstance(q, RatFun) else q)
            else:
                prow.append(x * L if dens else x)
        P.append(prow)
    D, adj = det_adjugate(P)
    if D.is_zero():
        raise ZeroDivisionError("matrix of expressions is identically singular")
    return [[RatFun(adj[i][j] * L, D) for j in range(n)] for i in range(n)]


def as_fraction_matrix(A):
    return [[Fraction(x.to_fraction()) if isinstance(x, FieldElem) else Fraction(x) for x in r] for r in A]
