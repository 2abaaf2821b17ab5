"""Monic binary forms over the integers and certified isolation of their real roots.

A form ``F(x, y) = c0 x^n + c1 x^(n-1) y + ... + cn y^n`` is stored by its
coefficient tuple, highest power of x first.  Everything here is exact:
root intervals have rational (dyadic) endpoints and are certified by Sturm
counts and sign changes, never by floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import (
    DegreeTooSmall,
    DegreeUnsupported,
    IntervalsTooWide,
    NotAllRealDistinct,
    NotMonic,
    Reducible,
)

MAX_IRREDUCIBLE_DEGREE = 12
DEFAULT_ROOT_WIDTH = Fraction(1, 10 ** 12)

Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class BinaryForm:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int, y: int) -> int:
        return evaluate_int(self, x, y)

    def __str__(self):
        n = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "".join(
                v if e == 1 else f"{v}^{e}" for v, e in (("x", n - i), ("y", i)) if e
            )
            mag = abs(c)
            body = mono if mag == 1 and mono else f"{mag}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {b}" for s, b in terms[1:])


def evaluate_int(F: BinaryForm, x: int, y: int) -> int:
    """Exact value of F(x, y) by homogeneous Horner evaluation."""
    it = iter(F.coeffs)
    r = next(it)
    yp = 1
    for c in it:
        yp *= y
        r = r * x + c * yp
    return r


# -- univariate helpers (dense, highest degree first) -----------------------

def _strip(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return list(p[i:])


def poly_eval(p: Sequence, x):
    r = 0
    for c in p:
        r = r * x + c
    return r


def _deriv(p):
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])] or [0]


def _rem(a, b):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while len(a) >= len(b) and any(a):
        q = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= q * b[i]
        a.pop(0)
    return _strip(a) if a else [Fraction(0)]


def _is_zero(p):
    return all(c == 0 for c in p)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sturm_sequence(p: Sequence[int]) -> list[list[Fraction]]:
    seq = [[Fraction(c) for c in p], [Fraction(c) for c in _deriv(p)]]
    while not _is_zero(seq[-1]) and len(seq[-1]) > 1:
        r = _rem(seq[-2], seq[-1])
        if _is_zero(r):
            break
        seq.append([-c for c in r])
    return seq


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _var_at(seq, x) -> int:
    return _variations([_sign(poly_eval(s, x)) for s in seq])


def _var_at_inf(seq, positive: bool) -> int:
    signs = []
    for s in seq:
        deg = len(s) - 1
        lc = _sign(s[0])
        signs.append(lc if positive or deg % 2 == 0 else -lc)
    return _variations(signs)


def count_real_roots(p: Sequence[int]) -> int:
    """Number of distinct real roots of p."""
    seq = sturm_sequence(p)
    return _var_at_inf(seq, False) - _var_at_inf(seq, True)


def _cauchy_bound(p) -> Fraction:
    lead = abs(Fraction(p[0]))
    return 1 + max(abs(Fraction(c)) for c in p[1:]) / lead


_SPLITS = (Fraction(1, 2), Fraction(1, 4), Fraction(3, 4), Fraction(3, 8), Fraction(5, 8))


def _split(p, a, b):
    # any dyadic interior point that is not itself a root
    for t in _SPLITS:
        mid = a + (b - a) * t
        if poly_eval(p, mid) != 0:
            return mid
    raise AssertionError("too many rational roots in one interval")


def _isolate(p) -> list[Interval]:
    seq = sturm_sequence(p)
    bound = _cauchy_bound(p)
    pending = [(-bound, bound)]
    out = []
    while pending:
        a, b = pending.pop()
        count = _var_at(seq, a) - _var_at(seq, b)
        if count == 0:
            continue
        if count == 1:
            out.append((a, b))
            continue
        mid = _split(p, a, b)
        pending += [(a, mid), (mid, b)]
    out.sort()
    return out


def _refine_interval(p, a: Fraction, b: Fraction, width: Fraction) -> Interval:
    sa = _sign(poly_eval(p, a))
    while b - a > width:
        mid = _split(p, a, b)
        if _sign(poly_eval(p, mid)) == sa:
            a = mid
        else:
            b = mid
    return a, b


@dataclass(frozen=True)
class RootSystem:
    """Disjoint sorted rational intervals, each holding one real root of f = F(x, 1).

    ``poly`` is kept so the system can be refined later; it is ``None`` for
    hand-built systems used only for validation.
    """

    intervals: tuple[Interval, ...]
    max_width: Fraction
    poly: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        ivs = tuple((Fraction(a), Fraction(b)) for a, b in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        object.__setattr__(self, "max_width", Fraction(self.max_width))
        for a, b in ivs:
            if a > b or b - a > self.max_width:
                raise ValueError(f"bad root interval [{a}, {b}]")
        for (_, b), (a, _) in zip(ivs, ivs[1:]):
            if not b < a:
                raise ValueError("root intervals must be disjoint and sorted")
        if self.poly is not None:
            for a, b in ivs:
                if a != b and poly_eval(self.poly, a) * poly_eval(self.poly, b) >= 0:
                    raise ValueError(f"no certified sign change on [{a}, {b}]")

    @property
    def n(self) -> int:
        return len(self.intervals)

    def midpoints(self) -> list[Fraction]:
        return [(a + b) / 2 for a, b in self.intervals]

    def max_abs_upper(self) -> Fraction:
        """Certified upper bound on max |alpha_j|."""
        return max(max(abs(a), abs(b)) for a, b in self.intervals)

    def refine(self, max_width) -> "RootSystem":
        max_width = Fraction(max_width)
        if max_width >= self.max_width:
            return self
        if self.poly is None:
            raise ValueError("cannot refine a root system without its polynomial")
        ivs = tuple(_refine_interval(self.poly, a, b, max_width) for a, b in self.intervals)
        return RootSystem(ivs, max_width, self.poly)


def isolate_roots(F: BinaryForm, max_width=DEFAULT_ROOT_WIDTH) -> RootSystem:
    """Certified isolating intervals for all real roots of F(x, 1), each of width <= max_width."""
    p = F.coeffs
    max_width = Fraction(max_width)
    ivs = [_refine_interval(p, a, b, max_width) for a, b in _isolate(p)]
    return RootSystem(tuple(ivs), max_width, p)


def _gap_lower(roots: RootSystem, i: int, j: int) -> Fraction:
    (li, ui), (lj, uj) = roots.intervals[i], roots.intervals[j]
    return lj - ui if i < j else li - uj


def gap_constants(roots: RootSystem) -> tuple[Fraction, Fraction]:
    """Lower bounds for A (min root distance) and B (min over i of prod_{j != i} |a_j - a_i|)."""
    n = roots.n
    if n < 2:
        raise ValueError("need at least two roots")
    gaps = [[_gap_lower(roots, i, j) if i != j else None for j in range(n)] for i in range(n)]
    A = min(gaps[i][i + 1] for i in range(n - 1))
    if A <= 0:
        raise IntervalsTooWide("root intervals too wide to separate the roots")
    B = None
    for i in range(n):
        prod = Fraction(1)
        for j in range(n):
            if j != i:
                prod *= gaps[i][j]
        B = prod if B is None else min(B, prod)
    return A, B


# -- irreducibility -----------------------------------------------------------

def _divides_monic(f, g) -> bool:
    """True iff the monic integer polynomial g divides f exactly."""
    r = list(f)
    dg = len(g) - 1
    for i in range(len(r) - dg):
        q = r[i]
        if q:
            for j in range(1, dg + 1):
                r[i + j] -= q * g[j]
    return all(c == 0 for c in r[len(r) - dg:])


def _interval_mul(a: Interval, b: Interval) -> Interval:
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(ps), max(ps)


def _subset_factor(f, roots: RootSystem, subset) -> int | list[int] | None:
    """Classify the root subset: a certified integer factor, None (impossible), or -1 (ambiguous)."""
    coeffs: list[Interval] = [(Fraction(1), Fraction(1))]
    for i in subset:
        lo, hi = roots.intervals[i]
        neg = (-hi, -lo)
        nxt = coeffs + [(Fraction(0), Fraction(0))]
        for k in range(1, len(nxt)):
            p = _interval_mul(neg, coeffs[k - 1])
            nxt[k] = (nxt[k][0] + p[0], nxt[k][1] + p[1])
        coeffs = nxt
    g = []
    for lo, hi in coeffs:
        first = -((-lo.numerator) // lo.denominator)
        last = hi.numerator // hi.denominator
        if first > last:
            return None
        if first != last:
            return -1
        g.append(first)
    return g


def _all_real_has_factor(F: BinaryForm) -> bool:
    # a monic integer factor of f is the product of (x - alpha) over a subset of the roots
    f = F.coeffs
    n = F.degree
    roots = isolate_roots(F, Fraction(1, 2 ** 20))
    for d in range(1, n // 2 + 1):
        for subset in combinations(range(n), d):
            while True:
                g = _subset_factor(f, roots, subset)
                if g == -1:
                    roots = roots.refine(roots.max_width / 2 ** 16)
                    continue
                if g is not None and _divides_monic(f, g):
                    return True
                break
    return False


def _divisors(v: int) -> list[int]:
    v = abs(v)
    small = [d for d in range(1, int(v ** 0.5) + 2) if d * d <= v and v % d == 0]
    ds = sorted(set(small + [v // d for d in small]))
    return ds + [-d for d in ds]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _kronecker_has_factor(f, d: int) -> bool:
    """Kronecker's method: search monic integer factors of degree d by interpolation."""
    points = []
    cand = 0
    while len(points) < 2 * (d + 1):
        for a in ((cand,) if cand == 0 else (cand, -cand)):
            v = poly_eval(f, a)
            if v == 0:
                return True
            points.append((a, v))
        cand += 1
    # fewest divisors first keeps the search small
    points.sort(key=lambda av: len(_divisors(av[1])))
    points = points[: d + 1]
    xs = [a for a, _ in points]
    basis = []
    for i, xi in enumerate(xs):
        b = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                b = _poly_mul(b, [Fraction(1), Fraction(-xj)])
                denom *= xi - xj
        basis.append([c / denom for c in b])
    for values in product(*(_divisors(v) for _, v in points)):
        g = [sum(values[i] * basis[i][k] for i in range(d + 1)) for k in range(d + 1)]
        if g[0] != 1 or any(c.denominator != 1 for c in g):
            continue
        if _divides_monic(f, [int(c) for c in g]):
            return True
    return False


def _gcd_degree(a, b) -> int:
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while not _is_zero(b):
        a, b = b, _rem(a, b)
    return len(_strip(a)) - 1


def check_irreducible(F: BinaryForm) -> bool:
    """True iff f(x) = F(x, 1) is irreducible over the rationals.

    Monic f only.  Forms whose roots are all real are decided by testing every
    root subset of size <= n/2 as a candidate factor; other forms fall back to
    Kronecker interpolation.
    """
    n = F.degree
    if n > MAX_IRREDUCIBLE_DEGREE:
        raise DegreeUnsupported(f"irreducibility is supported up to degree {MAX_IRREDUCIBLE_DEGREE}")
    if F.coeffs[0] != 1:
        raise NotMonic("irreducibility test expects a monic form")
    f = F.coeffs
    if n <= 1:
        return n == 1
    if f[-1] == 0:
        return False
    if _gcd_degree(f, _deriv(f)) > 0:
        return False
    if count_real_roots(f) == n:
        return not _all_real_has_factor(F)
    return not any(_kronecker_has_factor(f, d) for d in range(1, n // 2 + 1))


def parse_form(coeffs: Sequence[int]) -> BinaryForm:
    """Validate a coefficient list (c0 first) and return the BinaryForm."""
    coeffs = [int(c) for c in coeffs]
    if len(coeffs) < 4:
        raise DegreeTooSmall(f"degree must be at least 3, got {len(coeffs) - 1}")
    if coeffs[0] != 1:
        raise NotMonic(f"leading coefficient must be 1, got {coeffs[0]}")
    F = BinaryForm(tuple(coeffs))
    if count_real_roots(F.coeffs) != F.degree:
        raise NotAllRealDistinct("F(x, 1) must have n distinct real roots")
    if not check_irreducible(F):
        raise Reducible(f"F(x, 1) = {F} is reducible over Q")
    return F
