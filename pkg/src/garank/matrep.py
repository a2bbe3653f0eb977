"""The fixed recursive matrix representation and the matrix-side oracle.

Generators for G_{n,0}:

* n = 1: ``diag(1, -1)``;
* odd n -> n + 1: keep the generators, add ``[[0, I], [I, 0]]``;
* even n = 2k + 2 -> 2k + 3: ``diag(b_a, -b_a)`` for every old generator and
  ``diag(P, -P)`` with ``P = i^(k+1) b_1 ... b_(2k+2)``.

For q > 0 the last q generators are multiplied by ``i``. Every generator (and
so every blade) is a monomial matrix whose nonzero entries are powers of
``i``; the blade table is stored as a column permutation plus an exponent of
``i`` per row, which keeps n = 12 (4096 blades of size 64) cheap and exact.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra import Multivector, Signature, hermitian_conjugation, norm
from .coeff import EXACT, FLOAT, I_POWERS_EXACT, GaussianRational
from .errors import NotInImageError, ValidationError
from . import linalg

_I_POW = np.array([1, 1j, -1, -1j], dtype=complex)

UNREPRESENT_TOL = 1e-9
MATRIX_RANK_TOL = 1e-10


def _mono_mul(p1, e1, p2, e2):
    """(P1 P2): row r picks column p2[p1[r]] with phase e1[r] + e2[p1[r]]."""
    return p2[p1], (e1 + e2[p1]) % 4


def _dense(perm, exps) -> np.ndarray:
    n = len(perm)
    out = np.zeros((n, n), dtype=complex)
    out[np.arange(n), perm] = _I_POW[exps]
    return out


def _euclidean_generators(n: int):
    perm = [np.array([0, 1])]
    exps = [np.array([0, 2])]
    dim = 1
    while dim < n:
        size = len(perm[0])
        if dim % 2 == 1:
            half = size // 2
            perm.append(np.concatenate([np.arange(half, size), np.arange(half)]))
            exps.append(np.zeros(size, dtype=np.int64))
        else:
            k = (dim - 2) // 2
            p, e = np.arange(size), np.zeros(size, dtype=np.int64)
            for pa, ea in zip(perm, exps):
                p, e = _mono_mul(p, e, pa, ea)
            e = (e + k + 1) % 4
            old = list(zip(perm, exps)) + [(p, e)]
            perm = [np.concatenate([pa, pa + size]) for pa, _ in old]
            exps = [np.concatenate([ea, (ea + 2) % 4]) for _, ea in old]
        dim += 1
    return perm, exps


class BladeTable(Mapping):
    """Read-only mapping ``blade mask -> dense N x N matrix``."""

    def __init__(self, rep: "Representation"):
        self._rep = rep

    def __getitem__(self, mask):
        if not 0 <= mask < self._rep.signature.dim:
            raise KeyError(mask)
        return self._rep.blade_matrix(mask)

    def __iter__(self):
        return iter(range(self._rep.signature.dim))

    def __len__(self):
        return self._rep.signature.dim


@dataclass(frozen=True, eq=False)
class Representation:
    signature: Signature
    perms: np.ndarray   # (2^n, N) column of the nonzero entry in each row
    phases: np.ndarray  # (2^n, N) exponent of i of that entry

    @property
    def N(self) -> int:
        return self.signature.N

    @property
    def generators(self) -> list[np.ndarray]:
        return [self.blade_matrix(1 << a) for a in range(self.signature.n)]

    @property
    def blade_table(self) -> BladeTable:
        return BladeTable(self)

    def blade_matrix(self, mask: int, mode: str = FLOAT) -> np.ndarray:
        perm, exps = self.perms[mask], self.phases[mask]
        if mode == EXACT:
            out = linalg.as_exact(np.zeros((self.N, self.N), dtype=int))
            for r in range(self.N):
                out[r, perm[r]] = I_POWERS_EXACT[exps[r]]
            return out
        return _dense(perm, exps)

    def validate(self) -> None:
        """Check anticommutation, Hermiticity and (odd n) block structure exactly.

        Works on the integer permutation/phase data, so there is no rounding.
        """
        sig = self.signature
        N = self.N
        ident = np.arange(N)
        gens = [(self.perms[1 << a], self.phases[1 << a]) for a in range(sig.n)]
        for a, (pa, ea) in enumerate(gens):
            eta_shift = 0 if a < sig.p else 2
            p2, e2 = _mono_mul(pa, ea, pa, ea)
            if not (np.array_equal(p2, ident) and np.all(e2 == eta_shift)):
                raise AssertionError(f"generator e{a + 1} does not square to {1 - eta_shift}")
            for b in range(a + 1, sig.n):
                pb, eb = gens[b]
                p_ab, e_ab = _mono_mul(pa, ea, pb, eb)
                p_ba, e_ba = _mono_mul(pb, eb, pa, ea)
                if not (np.array_equal(p_ab, p_ba) and np.all((e_ab - e_ba) % 4 == 2)):
                    raise AssertionError(f"e{a + 1} and e{b + 1} do not anticommute")
            # conjugate transpose: entry (r, p[r]) moves to (p[r], r), phase negated
            pd = np.empty(N, dtype=np.int64)
            ed = np.empty(N, dtype=np.int64)
            pd[pa] = ident
            ed[pa] = (-ea) % 4
            if not (np.array_equal(pd, pa) and np.all(ed == (ea + eta_shift) % 4)):
                raise AssertionError(f"generator e{a + 1} violates the Hermiticity rule")
            if sig.n % 2 == 1:
                half = N // 2
                if not np.array_equal(pa < half, ident < half):
                    raise AssertionError(f"generator e{a + 1} is not block diagonal")


@lru_cache(maxsize=None)
def build_representation(sig: Signature) -> Representation:
    """Build (and validate) the fixed representation for ``sig``; cached."""
    n = sig.n
    perm, exps = _euclidean_generators(n)
    for a in range(sig.p, n):
        exps[a] = (exps[a] + 1) % 4
    N = sig.N
    perms = np.empty((sig.dim, N), dtype=np.int64)
    phases = np.empty((sig.dim, N), dtype=np.int64)
    perms[0] = np.arange(N)
    phases[0] = 0
    for mask in range(1, sig.dim):
        top = mask.bit_length() - 1
        rest = mask ^ (1 << top)
        perms[mask], phases[mask] = _mono_mul(perms[rest], phases[rest], perm[top], exps[top])
    perms.setflags(write=False)
    phases.setflags(write=False)
    rep = Representation(sig, perms, phases)
    rep.validate()
    return rep


def _rep_for(m_or_sig, rep: Representation | None) -> Representation:
    sig = m_or_sig if isinstance(m_or_sig, Signature) else m_or_sig.signature
    if rep is None:
        return build_representation(sig)
    if rep.signature != sig:
        raise ValidationError(f"representation is for {rep.signature}, not {sig}")
    return rep


def represent(m: Multivector, rep: Representation | None = None) -> np.ndarray:
    """The matrix of ``m``: complex128 in float mode, exact object array otherwise."""
    rep = _rep_for(m, rep)
    N = rep.N
    if m.mode == EXACT:
        out = linalg.as_exact(np.zeros((N, N), dtype=int))
        for mask, c in m.terms.items():
            perm, exps = rep.perms[mask], rep.phases[mask]
            for r in range(N):
                out[r, perm[r]] = out[r, perm[r]] + c * I_POWERS_EXACT[exps[r]]
        return out
    if m.is_zero():
        return np.zeros((N, N), dtype=complex)
    masks, vals = m.arrays()
    contrib = (vals[:, None] * _I_POW[rep.phases[masks]]).ravel()
    flat = (np.arange(N)[None, :] * N + rep.perms[masks]).ravel()
    re = np.bincount(flat, weights=contrib.real, minlength=N * N)
    im = np.bincount(flat, weights=contrib.imag, minlength=N * N)
    return (re + 1j * im).reshape(N, N)


def unrepresent(a, rep: Representation | Signature, tol: float = UNREPRESENT_TOL) -> Multivector:
    """The multivector whose matrix is ``a``.

    The blade matrices are orthogonal for the trace inner product, each with
    squared Frobenius norm N, so the coefficient of ``e_A`` is
    ``tr(beta(e_A)^H a) / N``. For odd n the off-diagonal blocks must vanish
    (exactly for object arrays, within ``tol`` relative otherwise).
    """
    if isinstance(rep, Signature):
        rep = build_representation(rep)
    sig = rep.signature
    N = rep.N
    a = np.asarray(a)
    if a.shape != (N, N):
        raise ValidationError(f"expected a {N}x{N} matrix, got shape {a.shape}")
    exact = a.dtype == object
    half = N // 2

    if exact:
        a = linalg.as_exact(a)
        if sig.n % 2 == 1:
            if any(a[r, c] for r in range(N) for c in range(N) if (r < half) != (c < half)):
                raise NotInImageError("matrix has nonzero off-diagonal blocks; not in the image")
        terms = {}
        inv_n = Fraction(1, N)
        for mask in range(sig.dim):
            perm, exps = rep.perms[mask], rep.phases[mask]
            acc = GaussianRational()
            for r in range(N):
                acc = acc + I_POWERS_EXACT[(-exps[r]) % 4] * a[r, perm[r]]
            if acc:
                terms[mask] = acc * inv_n
        return Multivector(sig, terms, EXACT)

    a = a.astype(complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    if sig.n % 2 == 1:
        off = np.linalg.norm(a[:half, half:]) + np.linalg.norm(a[half:, :half])
        if off > tol * scale:
            raise NotInImageError(f"off-diagonal block mass {off:.3e} exceeds tolerance; not in the image")
    gathered = a[np.arange(N)[None, :], rep.perms] * np.conj(_I_POW[rep.phases])
    coeffs = gathered.sum(axis=1) / N
    m = Multivector.from_dense(sig, coeffs.tolist(), FLOAT)
    residual = np.linalg.norm(represent(m, rep) - a)
    if residual > tol * scale:
        raise NotInImageError(f"matrix is not in the image (residual {residual:.3e})")
    return m


# ---------------------------------------------------------------------------
# matrix oracle kernels


def matrix_rank(a, tol: float = MATRIX_RANK_TOL) -> int:
    """Exact pivot count for object arrays, singular-value count otherwise."""
    a = np.asarray(a)
    if a.dtype == object:
        return linalg.echelon_rank(a)
    return linalg.numerical_rank(a, tol)


def matrix_det(a):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"square matrix required, got shape {a.shape}")
    if a.dtype == object:
        return linalg.bareiss_determinant(a)
    return complex(np.linalg.det(a.astype(complex)))


def matrix_charpoly(a) -> list:
    """C_1..C_N with det(x I - A) = x^N - C_1 x^(N-1) - ... - C_N."""
    a = np.asarray(a)
    if a.dtype != object:
        a = a.astype(complex)
    monic = linalg.berkowitz(a)
    if a.dtype == object:
        return [-c for c in monic[1:]]
    return [complex(-c) for c in monic[1:]]


def matrix_svd(a):
    a = np.asarray(a)
    if a.dtype == object:
        raise ValidationError("SVD is only available in float mode")
    return linalg.jacobi_svd(a)


# ---------------------------------------------------------------------------
# SVD inside the algebra


@dataclass(frozen=True)
class GASVD:
    U: Multivector
    Sigma: Multivector
    V: Multivector
    singular_values: tuple  # diagonal of the matrix of Sigma, top-left first

    def reconstruct(self) -> Multivector:
        return self.U * (self.Sigma * hermitian_conjugation(self.V))


def svd_ga(m: Multivector, rep: Representation | None = None) -> GASVD:
    """Multivectors U, V (unitary) and Sigma with M = U Sigma V^dagger.

    For odd n the two diagonal blocks are decomposed separately so every
    factor stays block diagonal, i.e. inside the image of the algebra. The
    singular values are then nonincreasing within each block.
    """
    if m.mode != FLOAT:
        raise ValidationError("svd_ga is only available in float mode")
    rep = _rep_for(m, rep)
    a = represent(m, rep)
    N = rep.N
    if m.signature.n % 2 == 0:
        u, s, v = matrix_svd(a)
    else:
        half = N // 2
        u = np.zeros((N, N), dtype=complex)
        v = np.zeros((N, N), dtype=complex)
        s = np.zeros(N)
        for blk in (slice(0, half), slice(half, N)):
            bu, bs, bv = matrix_svd(a[blk, blk])
            u[blk, blk] = bu
            v[blk, blk] = bv
            s[blk] = bs
    sigma = np.diag(s).astype(complex)
    return GASVD(unrepresent(u, rep), unrepresent(sigma, rep), unrepresent(v, rep),
                 tuple(float(x) for x in s))


def trace_identity_holds(m: Multivector, rep: Representation | None = None,
                         tol: float = 1e-9) -> bool:
    """tr(beta(M)) == N <M>_0; a cheap sanity check used by ``verify``."""
    rep = _rep_for(m, rep)
    a = represent(m, rep)
    tr = np.trace(a) if a.dtype != object else sum(a[i, i] for i in range(rep.N))
    expected = rep.N * m.scalar_part()
    if m.mode == EXACT:
        return tr == expected
    return abs(complex(tr) - complex(expected)) <= tol * max(1.0, norm(m) * rep.N)


__all__ = [
    "Representation", "BladeTable", "GASVD", "build_representation", "represent",
    "unrepresent", "matrix_rank", "matrix_det", "matrix_charpoly", "matrix_svd",
    "svd_ga", "trace_identity_holds",
]
