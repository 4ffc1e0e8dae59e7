"""Exact nonnegative rationals and p-adic valuations.

The whole package works on ``fractions.Fraction`` values, which are always
kept in lowest terms with a positive denominator; zero is 0/1.  This module
pins the entry points: construction that rejects negatives, the text form
"a/b" (no sign, no whitespace), and the valuation helpers the monoid layers
lean on.  No floating point appears anywhere downstream of these values.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .primes import is_prime, multiplicity

ExactRational = Fraction

_LITERAL = re.compile(r"^([0-9]+)(?:/([0-9]+))?$")


def make_rational(num: int, den: int = 1) -> Fraction:
    """Canonical nonnegative rational num/den; den = 0 or negatives are errors."""
    if den == 0:
        raise ValueError("denominator must be nonzero")
    if num < 0 or den < 0:
        raise ValueError("monoid elements are nonnegative rationals")
    return Fraction(num, den)


def num_den(q: Fraction) -> tuple[int, int]:
    """The coprime (numerator, denominator) pair; zero reports as (0, 1)."""
    return q.numerator, q.denominator


def parse_rational(text: str) -> Fraction:
    """Parse the literal form "a" or "a/b" (digits only, no sign)."""
    m = _LITERAL.match(text)
    if not m:
        raise ValueError(f'bad rational literal {text!r}: expected "a" or "a/b"')
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return make_rational(num, den)


def p_adic_valuation(q: Fraction, p: int) -> int:
    """The integer v with q = p^v * (a/b) and p dividing neither a nor b.

    Negative exactly when p divides the denominator of q.
    """
    if q == 0:
        raise ValueError("the p-adic valuation of zero is undefined")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return multiplicity(abs(q.numerator), p) - multiplicity(q.denominator, p)
