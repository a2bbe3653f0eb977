"""Random test inputs: generic multivectors and ones of prescribed rank.

Prescribed-rank inputs are built on the matrix side (a product of thin
random factors, block diagonal for odd n) and pulled back with
``unrepresent``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebra import Multivector, Signature, hermitian_conjugation
from .coeff import EXACT, FLOAT, GaussianRational
from .matrep import build_representation, unrepresent


def _exact_entries(rng: np.random.Generator, shape, bound: int = 3, denominators: int = 1):
    re = rng.integers(-bound, bound + 1, size=shape)
    im = rng.integers(-bound, bound + 1, size=shape)
    den = rng.integers(1, denominators + 1, size=shape)
    out = np.empty(shape, dtype=object)
    for idx in np.ndindex(*shape):
        out[idx] = GaussianRational(Fraction(int(re[idx]), int(den[idx])), int(im[idx]))
    return out


def _float_entries(rng: np.random.Generator, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_multivector(sig: Signature, rng: np.random.Generator, mode: str = FLOAT,
                       density: float = 1.0, bound: int = 3) -> Multivector:
    """Independent coefficients on a random subset of blades.

    Float coefficients are complex normal; exact ones are Gaussian rationals
    with parts in ``[-bound, bound]`` and denominators up to 2.
    """
    keep = rng.random(sig.dim) < density
    if mode == EXACT:
        vals = _exact_entries(rng, (sig.dim,), bound, denominators=2)
        return Multivector(sig, {a: vals[a] for a in range(sig.dim) if keep[a]}, EXACT)
    vals = _float_entries(rng, sig.dim)
    return Multivector(sig, {a: complex(vals[a]) for a in range(sig.dim) if keep[a]}, FLOAT)


def _block_ranks(sig: Signature, r: int, rng: np.random.Generator) -> list[tuple[slice, int]]:
    N = sig.N
    if sig.n % 2 == 0:
        return [(slice(0, N), r)]
    half = N // 2
    lo, hi = max(0, r - half), min(r, half)
    r1 = int(rng.integers(lo, hi + 1))
    return [(slice(0, half), r1), (slice(half, N), r - r1)]


def random_matrix_of_rank(sig: Signature, r: int, rng: np.random.Generator,
                          mode: str = FLOAT) -> np.ndarray:
    """An N x N matrix of rank exactly ``r`` (generically) in the image of the algebra."""
    N = sig.N
    if not 0 <= r <= N:
        raise ValueError(f"rank must lie in 0..{N}, got {r}")
    exact = mode == EXACT
    out = np.zeros((N, N), dtype=object if exact else complex)
    if exact:
        out[:, :] = GaussianRational()
    for blk, k in _block_ranks(sig, r, rng):
        if k == 0:
            continue
        size = blk.stop - blk.start
        if exact:
            # unit-triangular factors keep the rank exactly k
            x = _exact_entries(rng, (size, k))
            y = _exact_entries(rng, (k, size))
            for j in range(k):
                x[j, j] = GaussianRational(1)
                x[:j, j] = GaussianRational()
                y[j, j] = GaussianRational(1)
                y[j, :j] = GaussianRational()
            cols = rng.permutation(size)
            rows = rng.permutation(size)
            x, y = x[rows], y[:, cols]
        else:
            x = _float_entries(rng, (size, k))
            y = _float_entries(rng, (k, size))
        out[blk, blk] = x.dot(y)
    return out


def multivector_of_rank(sig: Signature, r: int, rng: np.random.Generator,
                        mode: str = FLOAT) -> Multivector:
    return unrepresent(random_matrix_of_rank(sig, r, rng, mode), build_representation(sig))


def random_unitary_matrix(sig: Signature, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish unitary in the image (block diagonal for odd n)."""
    N = sig.N
    out = np.zeros((N, N), dtype=complex)
    for blk, _ in _block_ranks(sig, 0, rng):
        size = blk.stop - blk.start
        q, r = np.linalg.qr(_float_entries(rng, (size, size)))
        out[blk, blk] = q * (np.diag(r) / np.abs(np.diag(r)))
    return out


def normal_multivector(sig: Signature, rng: np.random.Generator, rank: int | None = None,
                       mode: str = FLOAT) -> Multivector:
    """A normal multivector, optionally of prescribed rank.

    Float mode: ``U diag(lambda) U^dagger`` with complex eigenvalues. Exact
    mode: ``X^dagger X`` for an exact ``X`` of the requested rank (Hermitian,
    hence normal).
    """
    N = sig.N
    r = N if rank is None else rank
    if mode == EXACT:
        x = multivector_of_rank(sig, r, rng, EXACT)
        return hermitian_conjugation(x) * x
    u = random_unitary_matrix(sig, rng)
    lam = np.zeros(N, dtype=complex)
    # keep the zero pattern compatible with the block structure for odd n
    slots = [i for blk, k in _block_ranks(sig, r, rng) for i in range(blk.start, blk.start + k)]
    lam[slots] = _float_entries(rng, len(slots))
    return unrepresent(u @ np.diag(lam) @ u.conj().T, build_representation(sig))


def all_signatures(max_n: int, min_n: int = 1) -> list[Signature]:
    return [Signature(p, n - p) for n in range(min_n, max_n + 1) for p in range(n, -1, -1)]
