"""Characteristic coefficients, determinant and inverse of a multivector.

Everything here is computed with geometric products and scalar parts only,
through the Faddeev-LeVerrier recursion::

    M_1 = M,   C_k = (N / k) <M_k>_0,   M_{k+1} = M (M_k - C_k)

The coefficients follow the sign convention

    Det(lambda e - M) = lambda^N - C_1 lambda^(N-1) - ... - C_N,

so ``Det(M) = -C_N`` and ``Adj(M) = C_(N-1) - M_(N-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Multivector, coefficient_norm, norm
from .coeff import EXACT
from .errors import ClosingIdentityError, SingularMultivectorError

CLOSING_RTOL = 1e-6
SINGULAR_THRESHOLD = 1e-10


@dataclass(frozen=True)
class CharPoly:
    subject: Multivector
    coeffs: tuple
    adjugate: Multivector

    @property
    def N(self) -> int:
        return len(self.coeffs)

    @property
    def determinant(self):
        return -self.coeffs[-1]

    def coefficient(self, k: int):
        """C_(k) for 1 <= k <= N."""
        if not 1 <= k <= self.N:
            raise IndexError(f"coefficient index {k} out of range 1..{self.N}")
        return self.coeffs[k - 1]

    def monic(self) -> list:
        """Coefficients of the monic polynomial, highest degree first."""
        one = self.coeffs[0] * 0 + 1
        return [one] + [-c for c in self.coeffs]


def faddeev_leverrier(m: Multivector, closing_rtol: float = CLOSING_RTOL) -> CharPoly:
    """Run the recursion for k = 1..N and check that it closes on a scalar.

    Raises :class:`ClosingIdentityError` when ``M_N - C_N e`` is not zero
    (exact mode) or exceeds ``closing_rtol`` times the largest intermediate
    norm (float mode).
    """
    sig = m.signature
    N = sig.N
    exact = m.mode == EXACT
    identity = Multivector.scalar(sig, 1, m.mode)

    mk = m
    coeffs = []
    adjugate = None
    largest = coefficient_norm(m)
    for k in range(1, N + 1):
        factor = Fraction(N, k) if exact else N / k
        ck = factor * mk.scalar_part()
        coeffs.append(ck)
        if k == N:
            break
        shifted = mk - ck * identity
        if k == N - 1:
            adjugate = -shifted
        mk = m * shifted
        if not exact:
            largest = max(largest, coefficient_norm(mk))

    residual = mk - coeffs[-1] * identity
    if exact:
        if not residual.is_zero():
            raise ClosingIdentityError("M_(N) is not a scalar multiple of e")
    else:
        err = norm(residual)
        if err > closing_rtol * max(largest, 1e-300):
            raise ClosingIdentityError(
                f"closing identity violated: |M_(N) - C_(N) e| = {err:.3e}, "
                f"scale {largest:.3e}")
    return CharPoly(m, tuple(coeffs), adjugate)


def characteristic_coefficients(m: Multivector) -> tuple:
    return faddeev_leverrier(m).coeffs


def determinant(m: Multivector):
    return faddeev_leverrier(m).determinant


def inverse(m: Multivector, threshold: float = SINGULAR_THRESHOLD) -> Multivector:
    """Adj(M) / Det(M).

    In float mode the singularity test is scale invariant: M is declared
    singular when ``|Det(M / ||M||)| < threshold``.
    """
    if m.is_zero():
        raise SingularMultivectorError("singular multivector (zero)")
    cp = faddeev_leverrier(m)
    det = cp.determinant
    if m.mode == EXACT:
        if not det:
            raise SingularMultivectorError("singular multivector (Det = 0)")
    else:
        unit_det = abs(det) / norm(m) ** cp.N
        if unit_det < threshold:
            raise SingularMultivectorError(
                f"singular multivector (|Det| of the normalized input is {unit_det:.3e})")
    return cp.adjugate / det


__all__ = ["CharPoly", "faddeev_leverrier", "characteristic_coefficients",
           "determinant", "inverse", "CLOSING_RTOL", "SINGULAR_THRESHOLD"]
