"""Rank of a multivector from algebra operations only.

The rank equals the number of nonzero singular values of the representing
matrix, i.e. the number of nonzero eigenvalues of ``T = M^dagger M``. Because
T is Hermitian, that count is the index of the last nonvanishing
characteristic coefficient of T. The cascade:

* ``M == 0``                         -> 0
* ``C_N(M) != 0``                    -> N
* largest ``k`` in ``N-1 .. 2`` with ``C_k(T) != 0`` -> k
* otherwise                          -> 1

For normal M (``M^dagger M == M M^dagger``) the coefficients of M itself can
be used instead of those of T.

Float mode normalizes M to unit norm first and declares a coefficient zero
when ``|C_k| <= tol * binom(N, k)``; after normalization ``|C_k(T)|`` is at
most ``binom(N, k)``. Exact mode compares against zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .algebra import Multivector, hermitian_conjugation, norm
from .charpoly import faddeev_leverrier
from .coeff import EXACT
from .errors import NotNormalError, ValidationError

DEFAULT_TOL = 1e-9
ZERO_NORM = 1e-12

GENERAL = "general"
NORMAL = "normal"
SMALL_DIM = "small_dim"


@dataclass(frozen=True)
class RankResult:
    rank: int
    path: str
    witnesses: dict = field(default_factory=dict, compare=False)

    def __int__(self):
        return self.rank


def _normalized(m: Multivector):
    """``None`` for a zero input, else the unit-norm rescaling (float mode)."""
    if m.mode == EXACT:
        return None if m.is_zero() else m
    nrm = norm(m)
    if nrm <= ZERO_NORM:
        return None
    return m / nrm


def _threshold(N: int, k: int, tol: float) -> float:
    return tol * math.comb(N, k)


def _coefficient_nonzero(value, N: int, k: int, tol: float, exact: bool) -> bool:
    if exact:
        return bool(value)
    return abs(value) > _threshold(N, k, tol)


def _zero_result(path: str, tol: float) -> RankResult:
    return RankResult(0, path, {"C": [], "tol": tol})


def _cascade(coeffs, N: int, tol: float, exact: bool, examined: list) -> int:
    for k in range(N - 1, 1, -1):
        c = coeffs[k - 1]
        examined.append(k)
        if _coefficient_nonzero(c, N, k, tol, exact):
            return k
    return 1


def rank_general(m: Multivector, tol: float = DEFAULT_TOL) -> RankResult:
    """Rank through C_N(M) and the coefficients of T = M^dagger M."""
    exact = m.mode == EXACT
    mn = _normalized(m)
    if mn is None:
        return _zero_result(GENERAL, tol)
    N = m.signature.N
    top = faddeev_leverrier(mn).coeffs[-1]
    witnesses = {"tol": tol, "C_N(M)": top, "C": []}
    if _coefficient_nonzero(top, N, N, tol, exact):
        witnesses["examined"] = [N]
        return RankResult(N, GENERAL, witnesses)
    t = hermitian_conjugation(mn) * mn
    coeffs = faddeev_leverrier(t).coeffs
    witnesses["C"] = list(coeffs)
    # both zero tests of the top level agree in exact arithmetic; record the T one too
    witnesses["C_N(T)"] = coeffs[-1]
    examined = [N]
    r = _cascade(coeffs, N, tol, exact, examined)
    witnesses["examined"] = examined
    return RankResult(r, GENERAL, witnesses)


def is_normal(m: Multivector, tol: float = DEFAULT_TOL) -> bool:
    """M^dagger M == M M^dagger, on the unit-norm rescaling in float mode."""
    mn = _normalized(m)
    if mn is None:
        return True
    d = hermitian_conjugation(mn)
    commutator = d * mn - mn * d
    if m.mode == EXACT:
        return commutator.is_zero()
    return norm(commutator) <= tol


def rank_normal(m: Multivector, tol: float = DEFAULT_TOL) -> RankResult:
    """Rank of a normal multivector from its own characteristic coefficients."""
    if not is_normal(m, tol):
        raise NotNormalError("rank_normal requires a normal multivector")
    return _rank_normal_unchecked(m, tol)


def _rank_normal_unchecked(m: Multivector, tol: float) -> RankResult:
    exact = m.mode == EXACT
    mn = _normalized(m)
    if mn is None:
        return _zero_result(NORMAL, tol)
    N = m.signature.N
    coeffs = faddeev_leverrier(mn).coeffs
    witnesses = {"tol": tol, "C": list(coeffs), "C_N(M)": coeffs[-1]}
    examined = [N]
    if _coefficient_nonzero(coeffs[-1], N, N, tol, exact):
        r = N
    else:
        r = _cascade(coeffs, N, tol, exact, examined)
    witnesses["examined"] = examined
    return RankResult(r, NORMAL, witnesses)


# ---------------------------------------------------------------------------
# closed forms for n <= 4


def _ht(x: Multivector) -> Multivector:
    return x.tilde().hat()


def _top_expression(m: Multivector) -> Multivector:
    """Det(M) e as a product of conjugates."""
    n = m.signature.n
    if n == 1:
        return m * m.hat()
    if n == 2:
        return m * _ht(m)
    if n == 3:
        return m * _ht(m) * m.hat() * m.tilde()
    return m * _ht(m) * (m.hat() * m.tilde()).triangle()


def _level_expressions(x: Multivector) -> tuple[Multivector, Multivector]:
    """The expressions tested for ranks N - 1 = 3 and N - 2 = 2 (n = 3, 4)."""
    a, b, c, d = x, _ht(x), x.hat(), x.tilde()
    if x.signature.n == 3:
        level3 = a * b * c + a * b * d + a * c * d + b * c * d
        level2 = a * b + a * c + a * d + b * c + b * d + c * d
        return level3, level2
    # n = 4: the triangle operation also applies to the linear pair (c + d)
    cd = (c * d).triangle()
    c_plus_d = (c + d).triangle()
    level3 = a * b * c_plus_d + a * cd + b * cd
    level2 = a * b + (a + b) * c_plus_d + cd
    return level3, level2


def rank_small_dim(m: Multivector, tol: float = DEFAULT_TOL, normal: bool = False) -> RankResult:
    """Rank from closed-form products of conjugates, for n <= 4.

    Each expression tested equals (up to sign) a characteristic coefficient
    times ``e``: the top one is Det(M), the lower ones are C_3 and C_2 of
    ``T = M^dagger M`` (or of M itself when ``normal`` is set, which is only
    valid for normal M). Zero tests follow the same policy as
    :func:`rank_general`.
    """
    sig = m.signature
    if sig.n > 4:
        raise ValidationError(f"closed-form rank needs n <= 4, got n = {sig.n}")
    exact = m.mode == EXACT
    mn = _normalized(m)
    if mn is None:
        return _zero_result(SMALL_DIM, tol)
    N = sig.N

    def nonzero(expr: Multivector, k: int) -> bool:
        if exact:
            return not expr.is_zero()
        return norm(expr) > _threshold(N, k, tol)

    def size(expr: Multivector):
        return expr.norm2() if exact else norm(expr)

    top = _top_expression(mn)
    witnesses = {"tol": tol, "C": [size(top)], "normal_variant": normal}
    if nonzero(top, N):
        return RankResult(N, SMALL_DIM, witnesses)
    if N == 2:
        return RankResult(1, SMALL_DIM, witnesses)
    x = mn if normal else hermitian_conjugation(mn) * mn
    level3, level2 = _level_expressions(x)
    witnesses["C"].append(size(level3))
    if nonzero(level3, 3):
        return RankResult(3, SMALL_DIM, witnesses)
    witnesses["C"].append(size(level2))
    if nonzero(level2, 2):
        return RankResult(2, SMALL_DIM, witnesses)
    return RankResult(1, SMALL_DIM, witnesses)


def rank(m: Multivector, tol: float = DEFAULT_TOL) -> RankResult:
    """Dispatch: the normal shortcut when it applies, the general cascade otherwise."""
    if is_normal(m, tol):
        return _rank_normal_unchecked(m, tol)
    return rank_general(m, tol)


__all__ = ["RankResult", "rank", "rank_general", "rank_normal", "rank_small_dim",
           "is_normal", "DEFAULT_TOL", "ZERO_NORM", "GENERAL", "NORMAL", "SMALL_DIM"]
