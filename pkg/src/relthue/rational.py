"""Exact rational helpers: directed-rounding roots, floors and decimal rendering.

All roots are computed on a fixed dyadic grid of ``GRID_BITS`` fractional
bits.  A fixed grid (instead of a relative one) keeps ``root_upper`` and
``root_lower`` monotone in their argument, which the constants module relies
on for its rounding-safety guarantees.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

GRID_BITS = 96

Rational = Fraction | int


def iroot(a: int, n: int) -> int:
    """Floor of the real n-th root of a non-negative integer."""
    if a < 0:
        raise ValueError("iroot of negative number")
    if n == 1 or a < 2:
        return a
    if n == 2:
        return isqrt(a)
    x = 1 << -(-a.bit_length() // n)
    while True:
        y = ((n - 1) * x + a // x ** (n - 1)) // n
        if y >= x:
            return x
        x = y


def floor_frac(q: Rational) -> int:
    q = Fraction(q)
    return q.numerator // q.denominator


def ceil_frac(q: Rational) -> int:
    q = Fraction(q)
    return -((-q.numerator) // q.denominator)


def root_bounds(q: Rational, n: int) -> tuple[Fraction, Fraction]:
    """Return ``(lo, hi)`` with ``lo <= q**(1/n) <= hi``, both on the dyadic grid."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("root of negative number")
    if n == 1:
        return q, q
    scale = 1 << (GRID_BITS * n)
    num, den = q.numerator * scale, q.denominator
    lo = iroot(num // den, n)
    n_hi = -((-num) // den)
    hi = iroot(n_hi, n)
    if hi ** n < n_hi:
        hi += 1
    unit = 1 << GRID_BITS
    return Fraction(lo, unit), Fraction(hi, unit)


def root_upper(q: Rational, n: int) -> Fraction:
    return root_bounds(q, n)[1]


def root_lower(q: Rational, n: int) -> Fraction:
    return root_bounds(q, n)[0]


def floor_over_sqrt_power(q: Rational, m: int, n: int) -> int:
    """Exact ``floor(q / sqrt(m)**n)`` for ``q >= 0``.

    Uses ``k <= q/sqrt(m^n)  <=>  k^2 <= q^2/m^n`` so no irrational number is
    ever approximated.
    """
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    return isqrt((q.numerator ** 2) // (q.denominator ** 2 * m ** n))


def sqrt_power_lower(m: int, n: int) -> Fraction:
    """Lower bound for ``sqrt(m)**n`` (exact when n is even)."""
    if n % 2 == 0:
        return Fraction(m ** (n // 2))
    return m ** (n // 2) * root_lower(m, 2)


def to_decimal(q: Rational, places: int = 4) -> str:
    """Render a rational with round-half-even at ``places`` decimals."""
    q = Fraction(q)
    scaled = round(q * 10 ** places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def to_exact(q: Rational) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Accept integers, decimals ("0.1") and fractions ("1/10") exactly."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def rational_json(q: Rational, places: int = 4) -> dict:
    return {"decimal": to_decimal(q, places), "exact": to_exact(q)}
