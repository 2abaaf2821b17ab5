"""Reduction constants with directed rounding, and the (eps, eta) parameter search.

Every constant that acts as a "large |.|" threshold (C1, C2, D and the
derived t_y1, t_y2) and every right-hand side of an absolute inequality is an
upper bound of the exact real value.  The integer case bounds k_* are exact
floors of those real values.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from itertools import product
from typing import Iterable

from .errors import EmptyGrid, ParameterOutOfRange
from .quad_field import Case, QuadField
from .rational import (
    floor_frac,
    floor_over_sqrt_power,
    rational_json,
    root_lower,
    root_upper,
    sqrt_power_lower,
)

DEFAULT_EPS = Fraction(1, 10)
DEFAULT_ETA = Fraction(1, 10)
DEFAULT_GRID_VALUES = tuple(Fraction(v, 100) for v in (5, 10, 20, 30, 50))
DEFAULT_GRID = tuple(product(DEFAULT_GRID_VALUES, DEFAULT_GRID_VALUES))
PI_UPPER = Fraction(355, 113)


@dataclass(frozen=True)
class ReductionConstants:
    eps: Fraction
    eta: Fraction
    K: Fraction
    n: int
    m: int
    A_lower: Fraction
    B_lower: Fraction
    C: Fraction
    C1: Fraction
    C2: Fraction
    D: Fraction
    E: Fraction
    K_root: Fraction          # upper bound on K^(1/n)
    sqrt_m_lower: Fraction
    k_K: int                  # floor(K), the IB1 / IIB1 bound
    k_IA1: int
    k_IA2: int
    k_IB2: int
    k_IIA1: int
    k_IIA2: int
    k_IIB2: int
    rhs_IA1: Fraction         # unfloored right-hand sides, rounded up, for display
    rhs_IA2: Fraction
    rhs_IB2: Fraction
    rhs_IIA1: Fraction
    rhs_IIA2: Fraction
    rhs_IIB2: Fraction
    t_y1: Fraction
    t_y2: Fraction

    @property
    def case(self) -> Case:
        return Case.I if self.m % 4 == 3 else Case.II

    @property
    def y_bound(self) -> Fraction:
        """C1 in case I, C2 in case II: the large-|y| conclusions hold above this."""
        return self.C1 if self.case is Case.I else self.C2

    def case_bounds(self) -> dict[str, int]:
        if self.case is Case.I:
            return {"IA1": self.k_IA1, "IB1": self.k_K, "IA2": self.k_IA2, "IB2": self.k_IB2}
        return {"IIA1": self.k_IIA1, "IIB1": self.k_K, "IIA2": self.k_IIA2, "IIB2": self.k_IIB2}

    def to_json(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = rational_json(v) if isinstance(v, Fraction) else v
        out["case"] = self.case.value
        out["y_bound"] = rational_json(self.y_bound)
        return out


def _check_ranges(K, n, m, eps, eta, A_lower, B_lower):
    if not (0 < eps < 1):
        raise ParameterOutOfRange(f"eps must lie in (0, 1), got {eps}")
    if not (0 < eta < 1):
        raise ParameterOutOfRange(f"eta must lie in (0, 1), got {eta}")
    if K < 1:
        raise ParameterOutOfRange(f"K must be >= 1, got {K}")
    if n < 3:
        raise ParameterOutOfRange(f"degree must be >= 3, got {n}")
    if A_lower <= 0 or B_lower <= 0:
        raise ParameterOutOfRange("A and B lower bounds must be positive")
    QuadField(m)


def compute_constants(A_lower, B_lower, K, n: int, m: int,
                      eps=DEFAULT_EPS, eta=DEFAULT_ETA) -> ReductionConstants:
    A_lower, B_lower, K = Fraction(A_lower), Fraction(B_lower), Fraction(K)
    eps, eta = Fraction(eps), Fraction(eta)
    _check_ranges(K, n, m, eps, eta, A_lower, B_lower)

    shrink = (1 - eps) ** (n - 1)
    C = max(K / (shrink * B_lower), Fraction(1))
    K_root = root_upper(K, n)
    first = K_root / (eps * A_lower)
    C2 = max(first, root_upper(C, n - 2))
    C1 = max(first, root_upper(2 * C, n - 2), C2)
    D = root_upper(K / (eta * shrink * A_lower * B_lower), n)
    E = (1 + eta) ** (n - 1) * K / shrink

    sqrt_m = root_lower(m, 2)
    mn = sqrt_power_lower(m, n)
    two_n = 2 ** n
    is_I = m % 4 == 3
    t_y1 = 2 * D if is_I else D
    t_y2 = t_y1 / sqrt_m

    return ReductionConstants(
        eps=eps, eta=eta, K=K, n=n, m=m, A_lower=A_lower, B_lower=B_lower,
        C=C, C1=C1, C2=C2, D=D, E=E, K_root=K_root, sqrt_m_lower=sqrt_m,
        k_K=floor_frac(K),
        k_IA1=floor_over_sqrt_power(two_n * K, m, n),
        k_IA2=floor_frac(two_n * E),
        k_IB2=floor_over_sqrt_power(two_n * E, m, n),
        k_IIA1=floor_over_sqrt_power(K, m, n),
        k_IIA2=floor_frac(E),
        k_IIB2=floor_over_sqrt_power(E, m, n),
        rhs_IA1=two_n * K / mn, rhs_IA2=two_n * E, rhs_IB2=two_n * E / mn,
        rhs_IIA1=K / mn, rhs_IIA2=E, rhs_IIB2=E / mn,
        t_y1=t_y1, t_y2=t_y2,
    )


def cost(consts: ReductionConstants, max_root_upper, weight=1) -> Fraction:
    """Work estimate: lattice points in the small-|y| scan plus weighted equation count.

    The scan volume is (points with |y| <= R) * (points with |x| <= Rx), each
    estimated as disc area over the lattice covolume.
    """
    R = consts.y_bound
    Rx = consts.K_root + Fraction(max_root_upper) * R
    covol = consts.sqrt_m_lower if consts.case is Case.II else consts.sqrt_m_lower / 2
    volume = (PI_UPPER * R * R / covol) * (PI_UPPER * Rx * Rx / covol)
    equations = sum(2 * k + 1 for k in consts.case_bounds().values())
    return volume + Fraction(weight) * equations


def choose_parameters(A_lower, B_lower, K, n: int, m: int, max_root_upper,
                      grid: Iterable[tuple] = DEFAULT_GRID, weight=1):
    """Pick the grid point with the smallest cost; ties go to smaller eps, then smaller eta."""
    best = None
    for eps, eta in grid:
        c = compute_constants(A_lower, B_lower, K, n, m, eps, eta)
        key = (cost(c, max_root_upper, weight), c.eps, c.eta)
        if best is None or key < best[0]:
            best = (key, c)
    if best is None:
        raise EmptyGrid("parameter grid is empty")
    return best[1], best[0][0]


def parse_grid(text: str | None):
    """Grid syntax: ``"e1,e2,...:h1,h2,..."`` (cartesian product) or ``"e1,e2,..."`` for both axes."""
    from .rational import parse_rational

    if not text or text == "default":
        return DEFAULT_GRID
    if ":" in text:
        left, right = text.split(":", 1)
    else:
        left = right = text
    eps_vals = [parse_rational(v) for v in left.split(",") if v.strip()]
    eta_vals = [parse_rational(v) for v in right.split(",") if v.strip()]
    grid = tuple(product(eps_vals, eta_vals))
    if not grid:
        raise EmptyGrid("parameter grid is empty")
    return grid
