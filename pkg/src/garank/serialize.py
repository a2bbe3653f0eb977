"""JSON wire formats.

Multivector::

    {"signature": [p, q], "mode": "exact" | "float",
     "terms": [{"blade": [a1, ..., ak], "re": ..., "im": ...}, ...]}

Blades are strictly increasing 1-based index lists (``[]`` is ``e``). Exact
coefficients are written as ``"num/den"`` strings, float ones as JSON numbers
(Python's shortest round-tripping repr, so no bits are lost).
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .algebra import Multivector, Signature, blade_indices, blade_mask
from .coeff import EXACT, FLOAT, GaussianRational, fraction_str
from .errors import ValidationError


def coefficient_to_json(c) -> dict:
    if isinstance(c, GaussianRational):
        return {"re": fraction_str(c.re), "im": fraction_str(c.im)}
    if isinstance(c, Fraction):
        return {"re": fraction_str(c), "im": "0/1"}
    c = complex(c)
    return {"re": c.real, "im": c.imag}


def _exact_part(value, what: str) -> Fraction:
    if isinstance(value, bool):
        raise ValidationError(f"{what} must be a rational string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            pass
    raise ValidationError(f"{what} must be a rational string like '3/4', got {value!r}")


def _float_part(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ValidationError(f"{what} must be a number, got {value!r}")
    try:
        return float(value)
    except ValueError:
        raise ValidationError(f"{what} must be a number, got {value!r}") from None


def coefficient_from_json(obj, mode: str):
    if not isinstance(obj, dict):
        raise ValidationError(f"coefficient must be an object with re/im, got {obj!r}")
    re = obj.get("re", 0)
    im = obj.get("im", 0)
    if mode == EXACT:
        return GaussianRational(_exact_part(re, "re"), _exact_part(im, "im"))
    return complex(_float_part(re, "re"), _float_part(im, "im"))


def multivector_to_json(m: Multivector) -> dict:
    terms = []
    for mask in sorted(m.terms, key=lambda a: (a.bit_count(), a)):
        entry = {"blade": list(blade_indices(mask))}
        entry.update(coefficient_to_json(m.terms[mask]))
        terms.append(entry)
    sig = m.signature
    return {"signature": [sig.p, sig.q], "mode": m.mode, "terms": terms}


def multivector_from_json(obj) -> Multivector:
    if not isinstance(obj, dict):
        raise ValidationError("multivector JSON must be an object")
    try:
        p, q = obj["signature"]
        sig = Signature(int(p), int(q))
    except (KeyError, TypeError, ValueError):
        raise ValidationError("multivector JSON needs 'signature': [p, q]") from None
    mode = obj.get("mode", FLOAT)
    if mode not in (EXACT, FLOAT):
        raise ValidationError(f"unknown mode {mode!r}")
    terms = {}
    for entry in obj.get("terms", []):
        if not isinstance(entry, dict) or "blade" not in entry:
            raise ValidationError(f"bad term {entry!r}")
        idx = entry["blade"]
        if not isinstance(idx, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in idx):
            raise ValidationError(f"blade must be a list of integers, got {idx!r}")
        if idx and (idx[0] < 1 or idx[-1] > sig.n):
            raise ValidationError(f"blade {idx} has indices outside 1..{sig.n}")
        mask = blade_mask(idx)
        if mask in terms:
            raise ValidationError(f"blade {idx} listed twice")
        terms[mask] = coefficient_from_json(entry, mode)
    return Multivector(sig, terms, mode)


def matrix_to_json(a) -> dict:
    a = np.asarray(a)
    rows, cols = a.shape
    return {
        "rows": rows,
        "cols": cols,
        "entries": [[coefficient_to_json(a[r, c]) for c in range(cols)] for r in range(rows)],
    }


def matrix_from_json(obj, mode: str = FLOAT) -> np.ndarray:
    try:
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    except (KeyError, TypeError):
        raise ValidationError("matrix JSON needs rows, cols and entries") from None
    if len(entries) != rows or any(len(row) != cols for row in entries):
        raise ValidationError("matrix JSON entries do not match rows/cols")
    values = [[coefficient_from_json(x, mode) for x in row] for row in entries]
    if mode == EXACT:
        out = np.empty((rows, cols), dtype=object)
        for r in range(rows):
            for c in range(cols):
                out[r, c] = values[r][c]
        return out
    return np.array(values, dtype=complex).reshape(rows, cols)


def _witness_value(v):
    if isinstance(v, (GaussianRational, complex)):
        return coefficient_to_json(v)
    if isinstance(v, Fraction):
        return fraction_str(v)
    if isinstance(v, list):
        return [_witness_value(x) for x in v]
    return v


def rank_result_to_json(result) -> dict:
    return {
        "rank": result.rank,
        "path": result.path,
        "witnesses": {k: _witness_value(v) for k, v in result.witnesses.items()},
    }


def charpoly_to_json(cp) -> dict:
    return {
        "coeffs": [coefficient_to_json(c) for c in cp.coeffs],
        "det": coefficient_to_json(cp.determinant),
    }


def load_multivector(path: str | Path) -> Multivector:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    return multivector_from_json(obj)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)
