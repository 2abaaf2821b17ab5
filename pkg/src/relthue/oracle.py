"""Brute-force reference solver: test every point of a coordinate box.

Deliberately naive.  It shares only the exact evaluation kernel
(``FormEvaluator``) and the norm with the reduction pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .binary_form import BinaryForm
from .errors import BoxTooLarge
from .quad_field import FormEvaluator, QuadField, norm_coords
from .reduction import SolutionSet, canonicalize_sign

DEFAULT_BUDGET = 10 ** 8


@dataclass(frozen=True)
class Box:
    x1: tuple[int, int]
    x2: tuple[int, int]
    y1: tuple[int, int]
    y2: tuple[int, int]

    def __post_init__(self):
        for lo, hi in self.ranges:
            if lo > hi:
                raise ValueError("box ranges must be nonempty")

    @property
    def ranges(self):
        return (self.x1, self.x2, self.y1, self.y2)

    @property
    def size(self) -> int:
        out = 1
        for lo, hi in self.ranges:
            out *= hi - lo + 1
        return out

    @classmethod
    def symmetric(cls, r1: int, r2: int, s1: int, s2: int) -> "Box":
        return cls((-r1, r1), (-r2, r2), (-s1, s1), (-s2, s2))

    def to_json(self) -> dict:
        return {"x1": list(self.x1), "x2": list(self.x2),
                "y1": list(self.y1), "y2": list(self.y2)}


def raw_hits(F: BinaryForm, field: QuadField, K, box: Box,
             budget: int = DEFAULT_BUDGET) -> set:
    """Every (x1, x2, y1, y2) in the box with |F(x, y)| <= K, signs not merged."""
    if box.size > budget:
        raise BoxTooLarge(f"box has {box.size} points, budget is {budget}")
    K = Fraction(K)
    if K < 0:
        return set()
    num2, den2 = K.numerator ** 2, K.denominator ** 2
    ev = FormEvaluator(F, field)
    horner = ev.horner
    hits = set()
    xs1 = range(box.x1[0], box.x1[1] + 1)
    xs2 = range(box.x2[0], box.x2[1] + 1)
    for y1 in range(box.y1[0], box.y1[1] + 1):
        for y2 in range(box.y2[0], box.y2[1] + 1):
            terms = ev.terms(y1, y2)
            for x1 in xs1:
                for x2 in xs2:
                    r1, r2 = horner(terms, x1, x2)
                    if norm_coords(r1, r2, field) * den2 <= num2:
                        hits.add((x1, x2, y1, y2))
    return hits


def brute_force_box(F: BinaryForm, field: QuadField, K, box: Box,
                    budget: int = DEFAULT_BUDGET, include_trivial: bool = True) -> SolutionSet:
    sols = canonicalize_sign(raw_hits(F, field, K, box, budget))
    if not include_trivial:
        sols = sols - {(0, 0, 0, 0)}
    return SolutionSet(field.m, sols, include_trivial)
