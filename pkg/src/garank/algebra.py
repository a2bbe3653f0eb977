"""Signatures, blades and multivectors of the complexified algebra G^C_{p,q}.

Blades are encoded as bitmasks: generator ``e_a`` (1-based) lives at bit
``a - 1``, the empty mask is the identity ``e``. A :class:`Multivector` is an
immutable sparse mapping ``mask -> coefficient`` in one of two coefficient
modes (see :mod:`garank.coeff`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .coeff import EXACT, FLOAT, MODES, GaussianRational, coerce, modulus2
from .errors import ModeMismatchError, SignatureMismatchError, ValidationError

MAX_DIMENSION = 12

# Full D x D sign tables are cached up to this dimension; beyond it signs are
# computed on the fly for the blades actually present.
_TABLE_DIMENSION = 8


@dataclass(frozen=True)
class Signature:
    """Algebra parameters: ``p`` generators square to ``+e``, ``q`` to ``-e``."""

    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise ValidationError("signature entries must be integers")
        if self.p < 0 or self.q < 0:
            raise ValidationError(f"negative signature ({self.p},{self.q})")
        n = self.p + self.q
        if not 1 <= n <= MAX_DIMENSION:
            raise ValidationError(f"n = p + q must lie in 1..{MAX_DIMENSION}, got {n}")

    @classmethod
    def parse(cls, text: str) -> "Signature":
        try:
            p, q = (int(s) for s in text.split(","))
        except ValueError:
            raise ValidationError(f"signature must look like 'p,q', got {text!r}") from None
        return cls(p, q)

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def N(self) -> int:
        """Size of the representing matrices, 2^floor((n+1)/2)."""
        return 2 ** ((self.n + 1) // 2)

    @property
    def dim(self) -> int:
        """Number of basis blades, 2^n."""
        return 1 << self.n

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def negative_mask(self) -> int:
        """Bits of the generators with eta_aa = -1."""
        return self.full_mask ^ ((1 << self.p) - 1)

    def eta(self, a: int) -> int:
        if not 1 <= a <= self.n:
            raise ValidationError(f"generator index {a} out of range 1..{self.n}")
        return 1 if a <= self.p else -1

    def __str__(self):
        return f"G({self.p},{self.q})"


# --------------------------------------------------------------------------
# blades


def blade_mask(indices: Iterable[int]) -> int:
    """Bitmask of a blade given strictly increasing 1-based indices."""
    mask = 0
    last = 0
    for a in indices:
        if a <= last:
            raise ValidationError(f"blade indices must be strictly increasing, got {list(indices)}")
        mask |= 1 << (a - 1)
        last = a
    return mask


def blade_indices(mask: int) -> tuple[int, ...]:
    out = []
    a = 1
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return tuple(out)


def grade_of(mask: int) -> int:
    return mask.bit_count()


def blade_name(mask: int) -> str:
    idx = blade_indices(mask)
    if not idx:
        return "e"
    if idx[-1] >= 10:
        return "e[" + ",".join(map(str, idx)) + "]"
    return "e" + "".join(map(str, idx))


def _reorder_parity(a: int, b: int) -> int:
    # transpositions needed to sort the index sequence of a followed by b
    swaps = 0
    a >>= 1
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return swaps


def blade_product(a: int, b: int, sig: Signature) -> tuple[int, int]:
    """Product of two basis blades: ``e_a e_b = sign * e_(a xor b)``."""
    if a >> sig.n or b >> sig.n or a < 0 or b < 0:
        raise ValidationError("blade mask out of range for signature")
    swaps = _reorder_parity(a, b) + (a & b & sig.negative_mask).bit_count()
    return a ^ b, -1 if swaps & 1 else 1


def _sign_block(sig: Signature, ia: np.ndarray, ib: np.ndarray) -> np.ndarray:
    a = ia[:, None]
    b = ib[None, :]
    count = np.bitwise_count(a & b & sig.negative_mask).astype(np.int64)
    for shift in range(1, sig.n):
        count += np.bitwise_count((a >> shift) & b)
    return (1 - 2 * (count & 1)).astype(np.int8)


class _Tables:
    """Per-signature lookup data, built once and shared."""

    def __init__(self, sig: Signature):
        masks = np.arange(sig.dim, dtype=np.int64)
        self.grades = np.bitwise_count(masks).astype(np.int64)
        k = self.grades
        self.hat = np.where(k % 2 == 0, 1, -1)
        self.tilde = np.where((k * (k - 1) // 2) % 2 == 0, 1, -1)
        self.triangle = np.array([1 if math.comb(int(g), 4) % 2 == 0 else -1 for g in k])
        neg = np.bitwise_count(masks & sig.negative_mask).astype(np.int64)
        # e_A e_A = (-1)^{k(k-1)/2} prod(eta) e, and e_A^{-1} = (e_A e_A) e_A
        self.square = self.tilde * np.where(neg % 2 == 0, 1, -1)
        if sig.n <= _TABLE_DIMENSION:
            self.sign = _sign_block(sig, masks, masks)
            self.sign_list = self.sign.tolist()
        else:
            self.sign = None
            self.sign_list = None
        self.hat_list = self.hat.tolist()
        self.tilde_list = self.tilde.tolist()
        self.triangle_list = self.triangle.tolist()
        self.square_list = self.square.tolist()
        self.grade_list = self.grades.tolist()


@lru_cache(maxsize=None)
def tables(sig: Signature) -> _Tables:
    return _Tables(sig)


# --------------------------------------------------------------------------
# multivectors


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValidationError(f"unknown mode {mode!r}; expected one of {MODES}")
    return mode


class Multivector:
    """Immutable element of G^C_{p,q}.

    Construct with a mapping from blade masks to coefficients::

        >>> sig = Signature(2, 0)
        >>> Multivector(sig, {0b01: 1, 0b11: 2j})
        Multivector(G(2,0), float, {e1: (1+0j), e12: 2j})

    Terms with zero coefficient are dropped, so structural equality is value
    equality in exact mode.
    """

    __slots__ = ("signature", "mode", "_terms", "_arrays")

    def __init__(self, signature: Signature, terms: Mapping[int, object] | None = None,
                 mode: str = FLOAT):
        _check_mode(mode)
        clean = {}
        limit = signature.dim
        for mask, value in (terms or {}).items():
            mask = int(mask)
            if not 0 <= mask < limit:
                raise ValidationError(f"blade mask {mask} out of range for {signature}")
            c = coerce(value, mode)
            if c:
                clean[mask] = c
        self._init(signature, mode, clean)

    def _init(self, signature, mode, terms):
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "_arrays", None)

    @classmethod
    def _raw(cls, signature: Signature, mode: str, terms: dict) -> "Multivector":
        # caller guarantees canonical terms of the right coefficient type
        obj = cls.__new__(cls)
        obj._init(signature, mode, terms)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # constructors ------------------------------------------------------
    @classmethod
    def zero(cls, signature: Signature, mode: str = FLOAT) -> "Multivector":
        return cls._raw(signature, _check_mode(mode), {})

    @classmethod
    def scalar(cls, signature: Signature, value=1, mode: str = FLOAT) -> "Multivector":
        return cls(signature, {0: value}, mode)

    @classmethod
    def blade(cls, signature: Signature, indices: Iterable[int] = (), coefficient=1,
              mode: str = FLOAT) -> "Multivector":
        indices = tuple(indices)
        if indices and indices[-1] > signature.n:
            raise ValidationError(f"blade index {indices[-1]} exceeds n = {signature.n}")
        return cls(signature, {blade_mask(indices): coefficient}, mode)

    @classmethod
    def from_dense(cls, signature: Signature, values, mode: str = FLOAT) -> "Multivector":
        values = list(values)
        if len(values) != signature.dim:
            raise ValidationError(f"expected {signature.dim} coefficients, got {len(values)}")
        return cls(signature, dict(enumerate(values)), mode)

    # accessors ---------------------------------------------------------
    @property
    def terms(self) -> Mapping[int, object]:
        return MappingProxyType(self._terms)

    def coefficient(self, mask: int):
        return self._terms.get(mask, coerce(0, self.mode))

    def __getitem__(self, mask: int):
        return self.coefficient(mask)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def to_dense(self) -> np.ndarray:
        """Coefficient vector indexed by blade mask (complex128 or object)."""
        if self.mode == FLOAT:
            out = np.zeros(self.signature.dim, dtype=complex)
        else:
            out = np.array([GaussianRational()] * self.signature.dim, dtype=object)
        for mask, c in self._terms.items():
            out[mask] = c
        return out

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Sparse ``(masks, values)`` arrays, cached (float mode)."""
        if self._arrays is None:
            masks = np.fromiter(self._terms.keys(), dtype=np.int64, count=len(self._terms))
            if self.mode == FLOAT:
                vals = np.fromiter(self._terms.values(), dtype=complex, count=len(self._terms))
            else:
                vals = np.array(list(self._terms.values()), dtype=object)
            object.__setattr__(self, "_arrays", (masks, vals))
        return self._arrays

    def with_mode(self, mode: str) -> "Multivector":
        """Convert to another coefficient mode (float -> exact is bit-exact)."""
        if mode == self.mode:
            return self
        return Multivector(self.signature, self._terms, mode)

    # structural --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return (self.signature == other.signature and self.mode == other.mode
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.signature, self.mode, frozenset(self._terms.items())))

    def __repr__(self):
        body = ", ".join(f"{blade_name(m)}: {c!r}" for m, c in sorted(self._terms.items()))
        return f"Multivector({self.signature}, {self.mode}, {{{body}}})"

    def __str__(self):
        from .formatting import format_multivector
        return format_multivector(self)

    # operators ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Multivector):
            return add(self, other)
        try:
            return add(self, Multivector.scalar(self.signature, other, self.mode))
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Multivector):
            return add(self, -other)
        try:
            return add(self, Multivector.scalar(self.signature, -other, self.mode))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Multivector._raw(self.signature, self.mode,
                                {m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        try:
            return scale(other, self)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return scale(other, self)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Multivector):
            return NotImplemented
        c = coerce(other, self.mode)
        if not c:
            raise ZeroDivisionError("division of a multivector by zero")
        return scale(1 / c, self)

    # conjugations and friends -----------------------------------------
    def grade(self, k: int) -> "Multivector":
        return grade_projection(self, k)

    def scalar_part(self):
        return self.coefficient(0)

    def hat(self) -> "Multivector":
        return grade_involution(self)

    def tilde(self) -> "Multivector":
        return reversion(self)

    def bar(self) -> "Multivector":
        return complex_conjugation(self)

    def dagger(self) -> "Multivector":
        return hermitian_conjugation(self)

    def triangle(self) -> "Multivector":
        return triangle_conjugation(self)

    def norm(self) -> float:
        return norm(self)

    def norm2(self):
        return norm_squared(self)


def _check_pair(m1: Multivector, m2: Multivector):
    if m1.signature != m2.signature:
        raise SignatureMismatchError(f"signature mismatch: {m1.signature} vs {m2.signature}")
    if m1.mode != m2.mode:
        raise ModeMismatchError(f"coefficient mode mismatch: {m1.mode} vs {m2.mode}")


def add(m1: Multivector, m2: Multivector) -> Multivector:
    _check_pair(m1, m2)
    out = dict(m1._terms)
    for mask, c in m2._terms.items():
        s = out.get(mask)
        s = c if s is None else s + c
        if s:
            out[mask] = s
        else:
            out.pop(mask, None)
    return Multivector._raw(m1.signature, m1.mode, out)


def scale(factor, m: Multivector) -> Multivector:
    c = coerce(factor, m.mode)
    if not c:
        return Multivector.zero(m.signature, m.mode)
    out = {}
    for mask, v in m._terms.items():
        w = c * v
        if w:
            out[mask] = w
    return Multivector._raw(m.signature, m.mode, out)


def _product_float(m1: Multivector, m2: Multivector) -> Multivector:
    sig = m1.signature
    ia, va = m1.arrays()
    ib, vb = m2.arrays()
    tab = tables(sig)
    if tab.sign is not None:
        sign = tab.sign[np.ix_(ia, ib)]
    else:
        sign = _sign_block(sig, ia, ib)
    prod = (va[:, None] * vb[None, :]) * sign
    idx = (ia[:, None] ^ ib[None, :]).ravel()
    prod = prod.ravel()
    re = np.bincount(idx, weights=prod.real, minlength=sig.dim)
    im = np.bincount(idx, weights=prod.imag, minlength=sig.dim)
    nz = np.flatnonzero((re != 0) | (im != 0))
    vals = (re[nz] + 1j * im[nz]).tolist()
    return Multivector._raw(sig, FLOAT, dict(zip(nz.tolist(), vals)))


def _product_exact(m1: Multivector, m2: Multivector) -> Multivector:
    sig = m1.signature
    signs = tables(sig).sign_list
    acc: dict[int, GaussianRational] = {}
    for a, x in m1._terms.items():
        row = signs[a] if signs is not None else None
        for b, y in m2._terms.items():
            if row is not None:
                s = row[b]
            else:
                s = blade_product(a, b, sig)[1]
            xy = x * y
            key = a ^ b
            prev = acc.get(key)
            term = xy if s > 0 else -xy
            acc[key] = term if prev is None else prev + term
    return Multivector._raw(sig, EXACT, {k: v for k, v in acc.items() if v})


def geometric_product(m1: Multivector, m2: Multivector) -> Multivector:
    """Bilinear extension of :func:`blade_product`."""
    _check_pair(m1, m2)
    if not m1._terms or not m2._terms:
        return Multivector.zero(m1.signature, m1.mode)
    if m1.mode == FLOAT:
        return _product_float(m1, m2)
    return _product_exact(m1, m2)


def grade_projection(m: Multivector, k: int) -> Multivector:
    if not 0 <= k <= m.signature.n:
        raise ValidationError(f"grade {k} out of range 0..{m.signature.n}")
    return Multivector._raw(m.signature, m.mode,
                            {a: c for a, c in m._terms.items() if a.bit_count() == k})


def _signed(m: Multivector, signs: list, conjugate: bool = False) -> Multivector:
    out = {}
    for a, c in m._terms.items():
        if conjugate:
            c = c.conjugate()
        out[a] = c if signs[a] > 0 else -c
    return Multivector._raw(m.signature, m.mode, out)


def grade_involution(m: Multivector) -> Multivector:
    return _signed(m, tables(m.signature).hat_list)


def reversion(m: Multivector) -> Multivector:
    return _signed(m, tables(m.signature).tilde_list)


def triangle_conjugation(m: Multivector) -> Multivector:
    """Negate the grades congruent to 4, 5, 6, 7 modulo 8."""
    return _signed(m, tables(m.signature).triangle_list)


def complex_conjugation(m: Multivector) -> Multivector:
    return Multivector._raw(m.signature, m.mode,
                            {a: c.conjugate() for a, c in m._terms.items()})


def hermitian_conjugation(m: Multivector) -> Multivector:
    """Replace every blade by its inverse and conjugate every coefficient."""
    return _signed(m, tables(m.signature).square_list, conjugate=True)


def scalar_part_of_product(m1: Multivector, m2: Multivector):
    """<m1 m2>_0 without forming the full product."""
    _check_pair(m1, m2)
    sq = tables(m1.signature).square_list
    total = coerce(0, m1.mode)
    small, large = (m1, m2) if len(m1) <= len(m2) else (m2, m1)
    for a, x in small._terms.items():
        y = large._terms.get(a)
        if y is not None:
            xy = x * y
            total = total + (xy if sq[a] > 0 else -xy)
    return total


def scalar_product(m1: Multivector, m2: Multivector):
    """(m1, m2) = <m1^dagger m2>_0."""
    return scalar_part_of_product(hermitian_conjugation(m1), m2)


def norm_squared(m: Multivector):
    """(m, m) as a real number: Fraction in exact mode, float otherwise."""
    value = scalar_product(m, m)
    return value.real


def norm(m: Multivector) -> float:
    if m.mode != FLOAT:
        raise ValidationError("norm is only available in float mode; use norm_squared")
    return math.sqrt(max(norm_squared(m), 0.0))


def is_unitary(m: Multivector, tol: float = 1e-10) -> bool:
    """Whether m^dagger m = e (exactly in exact mode, within ``tol`` otherwise)."""
    residual = hermitian_conjugation(m) * m - Multivector.scalar(m.signature, 1, m.mode)
    if m.mode == EXACT:
        return residual.is_zero()
    return norm(residual) <= tol


def coefficient_norm(m: Multivector) -> float:
    """Euclidean norm of the coefficient vector; equals :func:`norm` in float mode."""
    return math.sqrt(float(sum(modulus2(c) for c in m._terms.values())))


def pseudoscalar(sig: Signature, start: int, stop: int, mode: str = FLOAT) -> Multivector:
    """The blade e_{start ... stop} (1-based, inclusive); the identity if empty."""
    return Multivector.blade(sig, range(start, stop + 1), 1, mode)


__all__ = [
    "Signature", "Multivector", "MAX_DIMENSION",
    "blade_mask", "blade_indices", "blade_name", "grade_of", "blade_product",
    "geometric_product", "add", "scale", "grade_projection", "grade_involution",
    "reversion", "complex_conjugation", "hermitian_conjugation", "triangle_conjugation",
    "scalar_product", "scalar_part_of_product", "norm", "norm_squared", "is_unitary",
    "coefficient_norm", "pseudoscalar", "tables",
]
