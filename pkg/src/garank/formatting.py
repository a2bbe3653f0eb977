"""Text rendering of coefficients and multivectors.

The output is valid input for :mod:`garank.parser`, so anything printed can be
pasted back into the CLI.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import GaussianRational

SIGNIFICANT_DIGITS = 12


def _real(x, digits: int) -> str:
    if isinstance(x, Fraction):
        return str(x)
    text = f"{x:.{digits}g}"
    return "0" if text == "-0" else text


def format_coefficient(c, digits: int = SIGNIFICANT_DIGITS) -> str:
    if isinstance(c, GaussianRational):
        re, im = c.re, c.im
    else:
        c = complex(c)
        re, im = c.real, c.imag
    if im == 0:
        return _real(re, digits)
    im_text = _real(abs(im), digits)
    im_text = "i" if im_text == "1" else im_text + "*i"
    if re == 0:
        return f"-{im_text}" if im < 0 else im_text
    sign = "-" if im < 0 else "+"
    return f"({_real(re, digits)}{sign}{im_text})"


def _term(mask: int, c, digits: int) -> str:
    from .algebra import blade_name

    name = blade_name(mask)
    text = format_coefficient(c, digits)
    if mask == 0:
        return text
    if text == "1":
        return name
    if text == "-1":
        return "-" + name
    return f"{text}*{name}"


def format_multivector(m, digits: int = SIGNIFICANT_DIGITS) -> str:
    if m.is_zero():
        return "0"
    parts = []
    for mask in sorted(m.terms, key=lambda a: (a.bit_count(), a)):
        term = _term(mask, m.terms[mask], digits)
        if not parts:
            parts.append(term)
        elif term.startswith("-"):
            parts.append("- " + term[1:])
        else:
            parts.append("+ " + term)
    return " ".join(parts)
