"""Small dense linear algebra used by the matrix-side oracle.

Matrices are numpy arrays: ``complex128`` for float mode, ``object`` arrays of
:class:`~garank.coeff.GaussianRational` for exact mode. None of these routines
touch the geometric algebra; they exist so the basis-free computations can be
checked against something that shares no code with them.
"""

from __future__ import annotations

import math

import numpy as np

from .coeff import GaussianRational
from .errors import ValidationError

EPS = np.finfo(float).eps


def is_exact(a: np.ndarray) -> bool:
    return a.dtype == object


def as_exact(a) -> np.ndarray:
    a = np.asarray(a, dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = GaussianRational.convert(v)
    return out


def _require_square(a: np.ndarray):
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"square matrix required, got shape {a.shape}")


# ---------------------------------------------------------------------------
# exact kernels


def echelon_rank(a: np.ndarray) -> int:
    """Number of pivots of the row echelon form, in exact arithmetic."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        for r in range(rank + 1, rows):
            f = m[r][col]
            if not f:
                continue
            f = f * inv
            row_r, row_p = m[r], m[rank]
            for c in range(col, cols):
                row_r[c] = row_r[c] - f * row_p[c]
        rank += 1
        if rank == rows:
            break
    return rank


def bareiss_determinant(a: np.ndarray):
    """Fraction-free elimination; every division is exact."""
    _require_square(a)
    m = [list(row) for row in a]
    n = len(m)
    if n == 0:
        return GaussianRational(1)
    sign = 1
    prev = GaussianRational(1)
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return GaussianRational(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) / prev
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def berkowitz(a: np.ndarray) -> list:
    """Coefficients of det(x I - A), highest degree first.

    Division free, so it is exact over Q(i) and well behaved in binary64 for
    the sizes used here.
    """
    _require_square(a)
    n = a.shape[0]
    one = a.dtype.type(1) if not is_exact(a) else GaussianRational(1)
    if n == 0:
        return [one]
    # vector for the trailing 1x1 block, then grow one row/column at a time
    vec = [one, -a[n - 1, n - 1]]
    for start in range(n - 2, -1, -1):
        sub = a[start + 1:, start + 1:]
        row = a[start, start + 1:]
        col = a[start + 1:, start]
        size = n - start
        diag = [one, -a[start, start]]
        power = col
        for _ in range(size - 1):
            diag.append(-np.dot(row, power))
            power = sub.dot(power)
        # lower-triangular Toeplitz (size+1) x size times vec
        new = []
        for i in range(size + 1):
            acc = None
            for j in range(min(i, size - 1) + 1):
                term = diag[i - j] * vec[j]
                acc = term if acc is None else acc + term
            new.append(acc)
        vec = new
    return vec


# ---------------------------------------------------------------------------
# SVD


def _project_out(basis: list, v: np.ndarray) -> np.ndarray:
    if not basis:
        return v
    b = np.array(basis).T
    for _ in range(2):
        v = v - b @ (b.conj().T @ v)
    return v


def _complete_orthonormal(u: np.ndarray, good: np.ndarray) -> np.ndarray:
    """Orthonormalize the columns flagged ``good`` and complete the rest.

    A flagged column that is not numerically independent of the earlier ones
    (noise-level singular value) is treated as missing. Missing columns take
    the standard basis vector with the largest component outside the span.
    """
    m = u.shape[0]
    basis = []
    out = u.copy()
    missing = []
    for k in range(u.shape[1]):
        if good[k]:
            v = _project_out(basis, u[:, k])
            nv = np.linalg.norm(v)
            if nv > 0.5:
                v = v / nv
                basis.append(v)
                out[:, k] = v
                continue
        missing.append(k)
    for k in missing:
        rest = _project_out(basis, np.eye(m, dtype=complex))
        norms = np.linalg.norm(rest, axis=0)
        j = int(np.argmax(norms))
        v = rest[:, j] / norms[j]
        basis.append(v)
        out[:, k] = v
    return out


def jacobi_svd(a, tol: float = 1e-13, max_sweeps: int = 60):
    """One-sided (Hestenes) Jacobi SVD of a complex matrix.

    Returns ``(U, s, V)`` with ``a = U @ diag(s) @ V.conj().T``, ``s``
    nonincreasing and ``U``, ``V`` unitary. Column pairs are rotated until
    every pair is orthogonal to relative accuracy ``tol``.
    """
    a = np.array(a, dtype=complex)
    if a.ndim != 2:
        raise ValidationError("matrix required")
    m, n = a.shape
    if m < n:
        v, s, u = jacobi_svd(a.conj().T, tol, max_sweeps)
        return u, s, v

    g = a.copy()
    v = np.eye(n, dtype=complex)
    fro2 = float(np.sum(np.abs(a) ** 2))
    negligible = (EPS * EPS) * fro2
    for _ in range(max_sweeps):
        worst = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                gi = g[:, i]
                gj = g[:, j]
                alpha = float(np.vdot(gi, gi).real)
                beta = float(np.vdot(gj, gj).real)
                if alpha <= negligible or beta <= negligible:
                    continue
                gamma = np.vdot(gi, gj)
                mag = abs(gamma)
                rel = mag / math.sqrt(alpha * beta)
                worst = max(worst, rel)
                if rel <= tol:
                    continue
                phase = gamma / mag
                zeta = (beta - alpha) / (2.0 * mag)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                hj = gj * phase.conjugate()
                g[:, i], g[:, j] = c * gi - s * hj, s * gi + c * hj
                vi = v[:, i].copy()
                vj = v[:, j] * phase.conjugate()
                v[:, i], v[:, j] = c * vi - s * vj, s * vi + c * vj
        if worst <= tol:
            break

    sv = np.linalg.norm(g, axis=0)
    order = np.argsort(-sv, kind="stable")
    sv = sv[order]
    g = g[:, order]
    v = v[:, order]
    cutoff = max(m, n) * EPS * (sv[0] if sv.size else 0.0)
    good = sv > cutoff
    u = np.zeros((m, m), dtype=complex)
    u[:, :n][:, good] = g[:, good] / sv[good]
    flags = np.zeros(m, dtype=bool)
    flags[:n] = good
    u = _complete_orthonormal(u, flags)
    return u[:, :n] if m > n else u, sv, v


def singular_values(a) -> np.ndarray:
    return jacobi_svd(a)[1]


def numerical_rank(a, tol: float = 1e-10) -> int:
    """Count singular values above ``tol`` times the largest one."""
    sv = singular_values(a)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.count_nonzero(sv > tol * sv[0]))
