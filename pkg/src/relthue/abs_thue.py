"""Absolute Thue inequalities |F(x, y)| <= k over the rational integers.

The scan is certified complete for 0 <= y <= y_max.  For a solution with
y >= 1 let i be the root nearest to x/y and delta = |x - alpha_i y|.  Since
F is monic, prod_j |x - alpha_j y| = |F(x, y)| <= k, hence delta <= k^(1/n),
and for j != i

    |x - alpha_j y| >= g_ij * y - k^(1/n)

with g_ij a lower bound for |alpha_j - alpha_i|.  Once all these are positive,
delta <= k / prod_j (g_ij * y - k^(1/n)), which shrinks like y^(1-n).  The
window radius is recomputed at the start of geometrically growing y-blocks
(it only decreases in y), and candidates x come from the certified interval
endpoints scaled to integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .binary_form import BinaryForm, RootSystem, evaluate_int
from .rational import ceil_frac, floor_frac, iroot, root_upper

SCALE_BITS = 128


@dataclass(frozen=True)
class SearchConfig:
    y_max: int = 10 ** 5
    window_pad: int = 0
    convergent_depth: int = 0

    def __post_init__(self):
        if self.y_max < 1:
            raise ValueError("y_max must be >= 1")
        if self.window_pad < 0 or self.convergent_depth < 0:
            raise ValueError("window_pad and convergent_depth must be non-negative")


def canonical_pair(x: int, y: int) -> tuple[int, int]:
    """Representative of {(x, y), (-x, -y)} with y > 0, or y == 0 and x >= 0."""
    if y < 0 or (y == 0 and x < 0):
        return -x, -y
    return x, y


@dataclass(frozen=True)
class AbsResult:
    k: int
    solutions: frozenset
    complete_up_to: int | None
    heuristic_extra: bool = False
    source: str = "window-scan"
    extras: frozenset = field(default=frozenset())   # found beyond complete_up_to

    def sorted(self) -> list[tuple[int, int]]:
        return sorted(self.solutions, key=lambda p: (abs(p[1]), abs(p[0]), p))

    def signed(self) -> set[tuple[int, int]]:
        return {s for x, y in self.solutions for s in ((x, y), (-x, -y))}

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "solutions": [list(p) for p in self.sorted()],
            "complete_up_to": self.complete_up_to,
            "heuristic_extra": self.heuristic_extra,
            "source": self.source,
        }


def _scaled(roots: RootSystem):
    unit = 1 << SCALE_BITS
    return [(floor_frac(a * unit), ceil_frac(b * unit)) for a, b in roots.intervals]


def _gap_lowers(roots: RootSystem) -> list[list[Fraction]]:
    ivs = roots.intervals
    n = len(ivs)
    return [[(ivs[j][0] - ivs[i][1]) if j > i else (ivs[i][0] - ivs[j][1]) for j in range(n)]
            for i in range(n)]


def _radius(k: int, kr: Fraction, gaps_i, i: int, y: int) -> Fraction:
    prod = Fraction(1)
    for j, g in enumerate(gaps_i):
        if j == i:
            continue
        f = g * y - kr
        if f <= 0:
            return kr
        prod *= f
    return min(kr, k / prod)


def _window_scan(F: BinaryForm, k: int, roots: RootSystem, y_lo: int, y_hi: int, pad: int):
    """All (x, y) with y_lo <= y <= y_hi, y >= 1 and |F(x, y)| <= k."""
    coeffs = F.coeffs
    kr = root_upper(k, F.degree)
    scaled = _scaled(roots)
    gaps = _gap_lowers(roots)
    unit = 1 << SCALE_BITS
    n = len(scaled)
    found = set()
    y0 = y_lo
    while y0 <= y_hi:
        y1 = min(y_hi, max(y0, y0 + y0 // 8))
        rads = [ceil_frac(_radius(k, kr, gaps[i], i, y0) * unit) for i in range(n)]
        for y in range(y0, y1 + 1):
            for (L, U), R in zip(scaled, rads):
                lo = -((R - L * y) >> SCALE_BITS) - pad
                hi = ((U * y + R) >> SCALE_BITS) + pad
                for x in range(lo, hi + 1):
                    r = coeffs[0]
                    yp = 1
                    for c in coeffs[1:]:
                        yp *= y
                        r = r * x + c * yp
                    if -k <= r <= k:
                        found.add((x, y))
        y0 = y1 + 1
    return found


def _convergents(lo: Fraction, hi: Fraction):
    """Convergents p/q common to every real number in [lo, hi]."""
    out = []
    p0, q0, p1, q1 = 0, 1, 1, 0
    while True:
        a_lo, a_hi = floor_frac(lo), floor_frac(hi)
        if a_lo != a_hi:
            return out
        a = a_lo
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append((p1, q1))
        lo, hi = lo - a, hi - a
        if lo == 0 or hi == 0:
            return out
        lo, hi = 1 / hi, 1 / lo


def _convergent_extension(F: BinaryForm, k: int, roots: RootSystem, config: SearchConfig):
    found = set()
    if roots.poly is None:
        return found
    width = roots.max_width
    for _ in range(8):
        need = False
        for lo, hi in roots.intervals:
            big = [(p, q) for p, q in _convergents(lo, hi) if q > config.y_max]
            if len(big) < config.convergent_depth:
                need = True
            for p, q in big[: config.convergent_depth]:
                for x in range(p - 1 - config.window_pad, p + 2 + config.window_pad):
                    if abs(evaluate_int(F, x, q)) <= k:
                        found.add(canonical_pair(x, q))
        if not need:
            break
        width = width / 2 ** 64
        roots = roots.refine(width)
    return found


def solve_abs(F: BinaryForm, k: int, roots: RootSystem, config: SearchConfig = SearchConfig()) -> AbsResult:
    """Solve |F(x, y)| <= k, complete (up to sign) for |y| <= config.y_max."""
    k = int(k)
    if k < 0:
        raise ValueError("k must be non-negative")
    # interval slack times y_max must stay far below 1
    target = Fraction(1, config.y_max * (1 << 24))
    if roots.max_width > target:
        roots = roots.refine(target)
    sols = {(x, 0) for x in range(0, iroot(k, F.degree) + 1)}
    sols |= _window_scan(F, k, roots, 1, config.y_max, config.window_pad)
    extras = set()
    if config.convergent_depth:
        extras = _convergent_extension(F, k, roots, config) - sols
    return AbsResult(
        k=k,
        solutions=frozenset(sols | extras),
        complete_up_to=config.y_max,
        heuristic_extra=bool(extras),
        extras=frozenset(extras),
    )


def filter_result(F: BinaryForm, res: AbsResult, k: int) -> AbsResult:
    """Restrict a result for a larger bound to |F| <= k (monotonicity in k)."""
    if k > res.k:
        raise ValueError("can only filter down to a smaller bound")
    keep = frozenset(p for p in res.solutions if abs(evaluate_int(F, *p)) <= k)
    return AbsResult(k, keep, res.complete_up_to, bool(res.extras & keep), res.source,
                     res.extras & keep)


def import_external(F: BinaryForm, k: int, pairs: Iterable, complete_up_to: int | None = None) -> AbsResult:
    """Wrap an externally computed solution list, re-verifying every entry exactly."""
    sols = set()
    for x, y in pairs:
        x, y = int(x), int(y)
        if abs(evaluate_int(F, x, y)) > k:
            raise ValueError(f"external pair ({x}, {y}) violates |F| <= {k}")
        sols.add(canonical_pair(x, y))
    return AbsResult(int(k), frozenset(sols), complete_up_to, False, "trusted-external")


def load_external(F: BinaryForm, path) -> AbsResult:
    """Read an AbsResult-shaped JSON file produced by a third-party solver."""
    with open(path) as fh:
        doc = json.load(fh)
    return import_external(F, doc["k"], doc["solutions"], doc.get("complete_up_to"))


class ExternalSolver:
    """abs_solver callable backed by a pre-computed external result."""

    def __init__(self, result: AbsResult):
        self.result = result

    def __call__(self, F, k, roots, config=None) -> AbsResult:
        return filter_result(F, self.result, k)
