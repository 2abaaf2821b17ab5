"""The imaginary quadratic field Q(i*sqrt(m)) and exact arithmetic in its ring of integers.

Elements are stored as integer coordinate pairs ``(x1, x2)``:

* case I   (m = 3 mod 4):   x = x1 + x2 * (1 + i*sqrt(m)) / 2
* case II  (m = 1, 2 mod 4): x = x1 + x2 * i*sqrt(m)

For case I the "numerator view" ``(2*x1 + x2, x2)`` gives twice the real part
and the coefficient of i*sqrt(m)/2; it is derived on demand, never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .binary_form import BinaryForm
from .errors import NotSquarefree, OutOfRange


class Case(str, Enum):
    I = "I"
    II = "II"


def is_squarefree(m: int) -> bool:
    if m == 0:
        return False
    m = abs(m)
    d = 2
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class QuadField:
    m: int

    def __post_init__(self):
        if self.m <= 1:
            raise OutOfRange(f"m must be > 1, got {self.m}")
        if not is_squarefree(self.m):
            raise NotSquarefree(f"m = {self.m} is not squarefree")

    @property
    def case(self) -> Case:
        return Case.I if self.m % 4 == 3 else Case.II

    @property
    def basis(self) -> str:
        if self.case is Case.I:
            return "x1 + x2*(1 + i*sqrt(m))/2"
        return "x1 + x2*i*sqrt(m)"

    def __str__(self):
        return f"Q(i*sqrt({self.m}))"


def make_field(m: int) -> QuadField:
    return QuadField(int(m))


@dataclass(frozen=True, order=True)
class RingElement:
    x1: int
    x2: int

    def __neg__(self):
        return RingElement(-self.x1, -self.x2)

    def __add__(self, other):
        return RingElement(self.x1 + other.x1, self.x2 + other.x2)

    def is_zero(self) -> bool:
        return self.x1 == 0 and self.x2 == 0

    def to_json(self) -> dict:
        return {"x1": self.x1, "x2": self.x2}

    @classmethod
    def from_json(cls, d: dict) -> "RingElement":
        return cls(int(d["x1"]), int(d["x2"]))


ZERO = RingElement(0, 0)


def numerator_view(e: RingElement, field: QuadField) -> tuple[int, int]:
    """(2*Re, Im/(sqrt(m)/2)) for case I; the stored coordinates for case II."""
    if field.case is Case.I:
        return 2 * e.x1 + e.x2, e.x2
    return e.x1, e.x2


def from_numerator_view(u: int, w: int, field: QuadField) -> RingElement | None:
    """Inverse of numerator_view; None when the parity condition fails in case I."""
    if field.case is Case.I:
        if (u - w) % 2:
            return None
        return RingElement((u - w) // 2, w)
    return RingElement(u, w)


def norm_coords(r1: int, r2: int, field: QuadField) -> int:
    """|r1 + r2*omega|^2 as an exact integer."""
    if field.case is Case.I:
        return r1 * r1 + r1 * r2 + (1 + field.m) // 4 * r2 * r2
    return r1 * r1 + field.m * r2 * r2


def abs_squared(e: RingElement, field: QuadField) -> int:
    """Exact |e|^2.  Case II: x1^2 + m x2^2; case I: ((2x1 + x2)^2 + m x2^2) / 4."""
    return norm_coords(e.x1, e.x2, field)


def ring_mul(a: RingElement, b: RingElement, field: QuadField) -> RingElement:
    if field.case is Case.I:
        q = (1 + field.m) // 4
        return RingElement(a.x1 * b.x1 - q * a.x2 * b.x2,
                           a.x1 * b.x2 + a.x2 * b.x1 + a.x2 * b.x2)
    m = field.m
    return RingElement(a.x1 * b.x1 - m * a.x2 * b.x2, a.x1 * b.x2 + a.x2 * b.x1)


def im_cross(x: RingElement, y: RingElement, field: QuadField) -> int:
    """x2*y1 - x1*y2.

    Im(x * conj(y)) equals this times sqrt(m) in case II and times sqrt(m)/2
    in case I; it vanishes exactly when x/y is real.
    """
    return x.x2 * y.x1 - x.x1 * y.x2


class FormEvaluator:
    """Exact evaluation of a fixed form at ring points.

    ``terms(y)`` precomputes ``c_i * y^i``; ``horner(terms, x1, x2)`` then
    folds in x.  Splitting the two lets brute-force scans reuse the y powers.
    """

    def __init__(self, F: BinaryForm, field: QuadField):
        self.coeffs = F.coeffs
        self.field = field
        if field.case is Case.I:
            self._q = (1 + field.m) // 4
            self.horner = self._horner_I
        else:
            self._q = field.m
            self.horner = self._horner_II

    def terms(self, y1: int, y2: int) -> list[tuple[int, int]]:
        field_q = self._q
        case_I = self.field.case is Case.I
        out = []
        p1, p2 = 1, 0
        for i, c in enumerate(self.coeffs):
            if i:
                if case_I:
                    p1, p2 = p1 * y1 - field_q * p2 * y2, p1 * y2 + p2 * y1 + p2 * y2
                else:
                    p1, p2 = p1 * y1 - field_q * p2 * y2, p1 * y2 + p2 * y1
            out.append((c * p1, c * p2))
        return out

    def _horner_II(self, terms, a1: int, a2: int) -> tuple[int, int]:
        m = self._q
        r1, r2 = terms[0]
        for t1, t2 in terms[1:]:
            r1, r2 = r1 * a1 - m * r2 * a2 + t1, r1 * a2 + r2 * a1 + t2
        return r1, r2

    def _horner_I(self, terms, a1: int, a2: int) -> tuple[int, int]:
        q = self._q
        r1, r2 = terms[0]
        for t1, t2 in terms[1:]:
            r1, r2 = r1 * a1 - q * r2 * a2 + t1, r1 * a2 + r2 * a1 + r2 * a2 + t2
        return r1, r2

    def __call__(self, x: RingElement, y: RingElement) -> RingElement:
        return RingElement(*self.horner(self.terms(y.x1, y.x2), x.x1, x.x2))


def evaluate_ring(F: BinaryForm, x: RingElement, y: RingElement, field: QuadField) -> RingElement:
    """Exact F(x, y) in Z_M."""
    return FormEvaluator(F, field)(x, y)


def within(value: RingElement, K, field: QuadField) -> bool:
    """Exact test |value| <= K, done as |value|^2 <= K^2."""
    K = Fraction(K)
    return abs_squared(value, field) * K.denominator ** 2 <= K.numerator ** 2
