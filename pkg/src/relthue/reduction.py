"""Reduce |F(x, y)| <= K over Z_M to absolute Thue inequalities and finite scans.

Notation used throughout this module.  For a ring element the *primary pair*
coordinate is ``u`` (for x) and ``v`` (for y):

* case II: u = x1, v = y1                 (target tag "XY1")
* case I:  u = 2*x1 + x2, v = 2*y1 + y2   (target tag "XYI")

and the *secondary pair* is always ``(x2, y2)`` (tag "XY2").  With this
notation both cases share one plan shape, and the cross condition
x2*y1 = x1*y2 reads ``u*y2 == x2*v`` in either case.

Regions of responsibility, for y outside the small-|y| disc of radius R
(R = C1 in case I, C2 in case II):

* A1      v == 0                       -> |F(x2, y2)| <= k_A1, u = 0
* B1      y2 == 0, v != 0              -> |F(x1, y1)| <= floor(K), x2 = 0
* A2      v, y2 != 0, |v| >= t_y1      -> |F(u, v)| <= k_A2, lift by y2
* B2      v, y2 != 0, |y2| >= t_y2     -> |F(x2, y2)| <= k_B2, lift by v
* residual  v, y2 != 0, |v| < t_y1, |y2| < t_y2   -> finite scan
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .abs_thue import AbsResult, SearchConfig, filter_result, solve_abs
from .binary_form import BinaryForm, RootSystem
from .constants import ReductionConstants
from .quad_field import (
    Case,
    FormEvaluator,
    QuadField,
    RingElement,
    from_numerator_view,
    norm_coords,
)
from .rational import ceil_frac, floor_frac, rational_json, root_lower, root_upper

Quad = tuple[int, int, int, int]   # (x1, x2, y1, y2)


# -- sign canonicalization ----------------------------------------------------

def canonical_quad(q: Quad) -> Quad:
    """Orbit representative whose first nonzero of (y1, y2, x1, x2) is positive."""
    x1, x2, y1, y2 = q
    for c in (y1, y2, x1, x2):
        if c:
            return q if c > 0 else (-x1, -x2, -y1, -y2)
    return q


def canonicalize_sign(sols: Iterable[Quad]) -> frozenset:
    return frozenset(canonical_quad(tuple(q)) for q in sols)


def _sort_key(q: Quad):
    x1, x2, y1, y2 = q
    return (abs(y1) + abs(y2), abs(x1) + abs(x2), q)


@dataclass(frozen=True)
class SolutionSet:
    m: int
    solutions: frozenset
    include_trivial: bool = True
    warnings: tuple[str, ...] = ()
    certificate: dict | None = field(default=None, compare=False)
    trace: "ExecutionTrace | None" = field(default=None, compare=False, repr=False)

    def sorted(self) -> list[Quad]:
        return sorted(self.solutions, key=_sort_key)

    def restricted(self, box) -> frozenset:
        """Solutions whose sign orbit meets ``box`` (ranges for x1, x2, y1, y2)."""
        def inside(q):
            return all(lo <= c <= hi for c, (lo, hi) in zip(q, box))
        return frozenset(q for q in self.solutions
                         if inside(q) or inside(tuple(-c for c in q)))

    def pairs(self) -> list[tuple[RingElement, RingElement]]:
        return [(RingElement(a, b), RingElement(c, d)) for a, b, c, d in self.sorted()]

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "include_trivial": self.include_trivial,
            "solutions": [
                {"x": {"x1": a, "x2": b}, "y": {"x1": c, "x2": d}, "coords": [a, b, c, d]}
                for a, b, c, d in self.sorted()
            ],
            "count": len(self.solutions),
            "warnings": list(self.warnings),
            "certificate": self.certificate,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SolutionSet":
        sols = frozenset(tuple(int(c) for c in s["coords"]) for s in doc["solutions"])
        return cls(doc["m"], sols, doc.get("include_trivial", True),
                   tuple(doc.get("warnings", ())), doc.get("certificate"))


# -- plan ---------------------------------------------------------------------

@dataclass(frozen=True)
class EnumerationBox:
    label: str
    role: str                              # "small" or "residual"
    x1: tuple[int, int]                    # rectangular hulls of the scanned region
    x2: tuple[int, int]
    y1: tuple[int, int]
    y2: tuple[int, int]
    x_abs_max: Fraction                    # |x| <= this for every solution in the box
    y_abs_max: Fraction | None = None      # small box: |y| <= this
    v_max: int | None = None               # residual box: |v| <= v_max, |y2| <= y2_max
    y2_max: int | None = None

    kind = "EnumerationBox"

    def to_json(self) -> dict:
        d = {"kind": self.kind, "label": self.label, "role": self.role,
             "ranges": {"x1": list(self.x1), "x2": list(self.x2),
                        "y1": list(self.y1), "y2": list(self.y2)},
             "x_abs_max": rational_json(self.x_abs_max)}
        if self.y_abs_max is not None:
            d["y_abs_max"] = rational_json(self.y_abs_max)
        if self.v_max is not None:
            d["v_max"] = self.v_max
            d["y2_max"] = self.y2_max
        return d


@dataclass(frozen=True)
class AbsoluteTask:
    label: str          # IA1, IIB2, ...
    role: str           # "A1", "B1", "A2", "B2"
    target: str         # "XY1", "XY2" or "XYI"
    k: int
    rhs: Fraction       # unfloored bound (upper-rounded)
    applies: str
    fixed: dict = field(default_factory=dict)        # coordinates forced to a value
    residual: dict = field(default_factory=dict)     # complementary integer ranges

    kind = "AbsoluteTask"

    def to_json(self) -> dict:
        return {"kind": self.kind, "label": self.label, "role": self.role,
                "target": self.target, "k": self.k, "rhs": rational_json(self.rhs),
                "applies": self.applies, "fixed": dict(self.fixed),
                "residual": {k: list(v) for k, v in self.residual.items()}}


Subproblem = EnumerationBox | AbsoluteTask


@dataclass(frozen=True)
class ReductionPlan:
    field: QuadField
    form: BinaryForm
    K: Fraction
    constants: ReductionConstants
    roots: RootSystem
    tasks: tuple

    def task(self, role: str):
        for t in self.tasks:
            if t.role == role:
                return t
        return None

    def without(self, role: str) -> "ReductionPlan":
        return ReductionPlan(self.field, self.form, self.K, self.constants, self.roots,
                             tuple(t for t in self.tasks if t.role != role))

    def to_json(self) -> dict:
        return {"m": self.field.m, "case": self.field.case.value,
                "form": list(self.form.coeffs), "K": rational_json(self.K),
                "tasks": [t.to_json() for t in self.tasks]}


def _strict_below(t: Fraction) -> int:
    """Largest integer strictly below t (t > 0)."""
    return ceil_frac(t) - 1


def _y_view(y1: int, y2: int, case: Case) -> int:
    return 2 * y1 + y2 if case is Case.I else y1


def _y_abs2(y1: int, y2: int, field: QuadField) -> int:
    return norm_coords(y1, y2, field)


def _disc_hull(R: Fraction, field: QuadField) -> tuple[int, int]:
    """Bounds (|c1| <= a, |c2| <= b) on coordinates of every element with |e| <= R."""
    s = field.m
    # |c2| * sqrt(m) / (2 or 1) <= R  and  |c1| <= |e| + |c2| / 2 (case I)
    if field.case is Case.I:
        b = floor_frac(2 * R * _inv_sqrt_upper(s))
        a = floor_frac(R + Fraction(b, 2))
    else:
        b = floor_frac(R * _inv_sqrt_upper(s))
        a = floor_frac(R)
    return a, b


def _inv_sqrt_upper(m: int) -> Fraction:
    return 1 / root_lower(m, 2)


def _residual_nonempty(field: QuadField, v_max: int, y2_max: int, R: Fraction) -> bool:
    case = field.case
    R2 = R * R
    for v in range(-v_max, v_max + 1):
        for y2 in range(-y2_max, y2_max + 1):
            if v == 0 or y2 == 0:
                continue
            y = from_numerator_view(v, y2, field)
            if y is None:
                continue
            if _y_abs2(y.x1, y.x2, field) > R2:
                return True
    return False


def build_plan(F: BinaryForm, field: QuadField, K, constants: ReductionConstants,
               roots: RootSystem) -> ReductionPlan:
    """Assemble the case split for (F, field, K) as a list of finite subproblems."""
    K = Fraction(K)
    c = constants
    case = field.case
    R = c.y_bound
    max_root = roots.max_abs_upper()
    x_abs = c.K_root + max_root * R
    ya, yb = _disc_hull(R, field)
    xa, xb = _disc_hull(x_abs, field)
    tasks: list = [EnumerationBox("small |y|", "small", (-xa, xa), (-xb, xb),
                                  (-ya, ya), (-yb, yb), x_abs, y_abs_max=R)]

    v_max = _strict_below(c.t_y1)
    y2_max = _strict_below(c.t_y2)
    if case is Case.I:
        prim, names = "XYI", ("IA1", "IB1", "IA2", "IB2")
        kA1, kA2, kB2 = c.k_IA1, c.k_IA2, c.k_IB2
        rA1, rA2, rB2 = c.rhs_IA1, c.rhs_IA2, c.rhs_IB2
        vname = "2y1+y2"
        fixed_A1 = {"2x1+x2": 0, "2y1+y2": 0}
    else:
        prim, names = "XY1", ("IIA1", "IIB1", "IIA2", "IIB2")
        kA1, kA2, kB2 = c.k_IIA1, c.k_IIA2, c.k_IIB2
        rA1, rA2, rB2 = c.rhs_IIA1, c.rhs_IIA2, c.rhs_IIB2
        vname = "y1"
        fixed_A1 = {"x1": 0, "y1": 0}

    tasks.append(AbsoluteTask(names[0], "A1", "XY2", kA1, rA1, f"{vname} = 0", fixed_A1))
    tasks.append(AbsoluteTask(names[1], "B1", "XY1", c.k_K, K, "y2 = 0", {"x2": 0, "y2": 0}))
    tasks.append(AbsoluteTask(names[2], "A2", prim, kA2, rA2,
                              f"|{vname}| >= {float(c.t_y1):.4f}",
                              residual={"y2": (-y2_max, y2_max)}))
    tasks.append(AbsoluteTask(names[3], "B2", "XY2", kB2, rB2,
                              f"|y2| >= {float(c.t_y2):.4f}",
                              residual={vname: (-v_max, v_max)}))

    if v_max >= 1 and y2_max >= 1 and _residual_nonempty(field, v_max, y2_max, R):
        if case is Case.I:
            ry1 = (v_max + y2_max) // 2
        else:
            ry1 = v_max
        y_far = max(Fraction(_y_abs2(y1, y2, field))
                    for y1 in (-ry1, ry1) for y2 in (-y2_max, y2_max))
        x_res = c.K_root + max_root * root_upper(y_far, 2)
        rxa, rxb = _disc_hull(x_res, field)
        tasks.append(EnumerationBox("residual", "residual", (-rxa, rxa), (-rxb, rxb),
                                    (-ry1, ry1), (-y2_max, y2_max), x_res,
                                    v_max=v_max, y2_max=y2_max))
    return ReductionPlan(field, F, K, constants, roots, tuple(tasks))


def covers(plan: ReductionPlan, y1: int, y2: int) -> list[str]:
    """Plan parts that recover every solution with this y.

    A2 alone lifts over the residual range |y2| < t_y2, B2 alone over
    |v| < t_y1; when both are large only the A2 x B2 join applies, which
    needs both tasks.
    """
    c = plan.constants
    field = plan.field
    v = _y_view(y1, y2, field.case)
    roles = {t.role: t for t in plan.tasks}
    small = _y_abs2(y1, y2, field) <= c.y_bound ** 2
    if small:
        return ["small"] if "small" in roles else []
    if v == 0:
        return ["A1"] if "A1" in roles else []
    if y2 == 0:
        return ["B1"] if "B1" in roles else []
    big_v, big_y2 = abs(v) >= c.t_y1, abs(y2) >= c.t_y2
    out = []
    if big_v and not big_y2 and "A2" in roles:
        out.append("A2")
    if big_y2 and not big_v and "B2" in roles:
        out.append("B2")
    if big_v and big_y2 and "A2" in roles and "B2" in roles:
        out.append("A2xB2")
    res = roles.get("residual")
    if not big_v and not big_y2 and res is not None \
            and abs(v) <= res.v_max and abs(y2) <= res.y2_max:
        out.append("residual")
    return out


# -- execution ----------------------------------------------------------------

@dataclass
class ExecutionTrace:
    absolute: dict = field(default_factory=dict)        # label -> AbsResult
    candidates: list = field(default_factory=list)      # dicts with status and reason
    non_integral: dict = field(default_factory=dict)    # label -> rejected lifts
    box_hits: dict = field(default_factory=dict)        # label -> number of hits
    box_points: dict = field(default_factory=dict)      # label -> points tested

    def to_json(self) -> dict:
        return {
            "absolute": {k: r.to_json() for k, r in self.absolute.items()},
            "candidates": self.candidates,
            "non_integral_lifts": dict(self.non_integral),
            "box_hits": dict(self.box_hits),
            "box_points": dict(self.box_points),
        }


class _Verifier:
    def __init__(self, plan: ReductionPlan):
        self.ev = FormEvaluator(plan.form, plan.field)
        self.field = plan.field
        self.num2 = plan.K.numerator ** 2
        self.den2 = plan.K.denominator ** 2

    def norm(self, q: Quad) -> int:
        x1, x2, y1, y2 = q
        r1, r2 = self.ev.horner(self.ev.terms(y1, y2), x1, x2)
        return norm_coords(r1, r2, self.field)

    def ok_norm(self, n: int) -> bool:
        return n * self.den2 <= self.num2


def _assemble(u: int, x2: int, v: int, y2: int, field: QuadField) -> Quad | None:
    x = from_numerator_view(u, x2, field)
    y = from_numerator_view(v, y2, field)
    if x is None or y is None:
        return None
    return (x.x1, x.x2, y.x1, y.x2)


def _windows(center_lo: Fraction, center_hi: Fraction, rad: Fraction) -> range:
    return range(ceil_frac(center_lo - rad), floor_frac(center_hi + rad) + 1)


def _scale(iv, t: int):
    a, b = iv[0] * t, iv[1] * t
    return (a, b) if a <= b else (b, a)


def _scan_box(box: EnumerationBox, plan: ReductionPlan, ver: _Verifier, trace: ExecutionTrace):
    """Exhaustive scan of the box with exact verification.

    For every y only x with |x - alpha_j y| <= K^(1/n) for some root can
    solve the inequality (the smallest factor of a product bounded by K is at
    most K^(1/n)), so x is taken from those discs rather than from the whole
    |x| <= x_abs_max disc that contains them.
    """
    field = plan.field
    case = field.case
    c = plan.constants
    rho = c.K_root
    inv_sqrt = _inv_sqrt_upper(field.m)
    R2 = box.y_abs_max ** 2 if box.y_abs_max is not None else None
    hits = set()
    tested = 0
    ev = ver.ev
    for y1 in range(box.y1[0], box.y1[1] + 1):
        for y2 in range(box.y2[0], box.y2[1] + 1):
            if canonical_quad((0, 0, y1, y2)) != (0, 0, y1, y2):
                continue
            if R2 is not None and _y_abs2(y1, y2, field) > R2:
                continue
            if box.v_max is not None and (abs(_y_view(y1, y2, case)) > box.v_max
                                          or abs(y2) > box.y2_max):
                continue
            v = _y_view(y1, y2, case)
            terms = ev.terms(y1, y2)
            seen = set()
            for iv in plan.roots.intervals:
                if case is Case.I:
                    # |u - a v| <= 2 rho and |x2 - a y2| <= 2 rho / sqrt(m)
                    us = _windows(*_scale(iv, v), 2 * rho)
                    ws = _windows(*_scale(iv, y2), 2 * rho * inv_sqrt)
                else:
                    us = _windows(*_scale(iv, v), rho)
                    ws = _windows(*_scale(iv, y2), rho * inv_sqrt)
                for u in us:
                    for w in ws:
                        if (u, w) in seen:
                            continue
                        seen.add((u, w))
                        x = from_numerator_view(u, w, field)
                        if x is None:
                            continue
                        q = (x.x1, x.x2, y1, y2)
                        if y1 == 0 and y2 == 0 and canonical_quad(q) != q:
                            continue
                        tested += 1
                        r1, r2 = ev.horner(terms, x.x1, x.x2)
                        if ver.ok_norm(norm_coords(r1, r2, field)):
                            hits.add(q)
    trace.box_hits[box.label] = len(hits)
    trace.box_points[box.label] = tested
    return hits


def _record(trace: ExecutionTrace, ver: _Verifier, label: str, q: Quad, accepted: set):
    n = ver.norm(q)
    ok = ver.ok_norm(n)
    if ok:
        accepted.add(canonical_quad(q))
        reason = "verified"
    else:
        reason = f"|F(x,y)|^2 = {n} > K^2"
    trace.candidates.append({"task": label, "coords": list(q), "accepted": ok, "reason": reason})


def execute_plan(plan: ReductionPlan,
                 abs_solver: Callable[..., AbsResult] = solve_abs,
                 config: SearchConfig = SearchConfig(),
                 include_trivial: bool = True) -> SolutionSet:
    """Run every subproblem and return the verified, sign-canonical solutions."""
    field = plan.field
    case = field.case
    F = plan.form
    ver = _Verifier(plan)
    trace = ExecutionTrace()
    found: set = set()
    lifted: set = set()

    abs_tasks = [t for t in plan.tasks if isinstance(t, AbsoluteTask)]
    if abs_tasks:
        # one scan at the largest bound, filtered per task (monotone in k)
        top = abs_solver(F, max(t.k for t in abs_tasks), plan.roots, config)
        for t in abs_tasks:
            trace.absolute[t.label] = filter_result(F, top, t.k)

    for t in plan.tasks:
        if isinstance(t, EnumerationBox):
            found |= _scan_box(t, plan, ver, trace)

    def lift(label, quad):
        if quad is None:
            trace.non_integral[label] = trace.non_integral.get(label, 0) + 1
            return
        key = canonical_quad(quad)
        if key in lifted:
            return
        lifted.add(key)
        _record(trace, ver, label, quad, found)

    by_role = {t.role: t for t in abs_tasks}
    if "A1" in by_role:
        t = by_role["A1"]
        for x2, y2 in trace.absolute[t.label].solutions:
            lift(t.label, _assemble(0, x2, 0, y2, field))
    if "B1" in by_role:
        t = by_role["B1"]
        for x1, y1 in trace.absolute[t.label].solutions:
            lift(t.label, (x1, 0, y1, 0))
    if "A2" in by_role:
        t = by_role["A2"]
        lo, hi = t.residual["y2"]
        for u, v in trace.absolute[t.label].solutions:
            if v == 0:
                continue
            for y2 in range(lo, hi + 1):
                if (u * y2) % v:
                    trace.non_integral[t.label] = trace.non_integral.get(t.label, 0) + 1
                    continue
                lift(t.label, _assemble(u, u * y2 // v, v, y2, field))
    if "B2" in by_role:
        t = by_role["B2"]
        (lo, hi), = t.residual.values()
        for x2, y2 in trace.absolute[t.label].solutions:
            if y2 == 0:
                continue
            for v in range(lo, hi + 1):
                if (x2 * v) % y2:
                    trace.non_integral[t.label] = trace.non_integral.get(t.label, 0) + 1
                    continue
                lift(t.label, _assemble(x2 * v // y2, x2, v, y2, field))
    if "A2" in by_role and "B2" in by_role:
        ta, tb = by_role["A2"], by_role["B2"]
        label = f"{ta.label}x{tb.label}"
        qs = [s for p in trace.absolute[tb.label].solutions if p[1] != 0
              for s in (p, (-p[0], -p[1]))]
        for u, v in trace.absolute[ta.label].solutions:
            if v == 0:
                continue
            for x2, y2 in qs:
                if u * y2 == x2 * v:
                    lift(label, _assemble(u, x2, v, y2, field))

    if not include_trivial:
        found.discard((0, 0, 0, 0))

    complete_up_to = None
    if abs_tasks:
        complete_up_to = trace.absolute[abs_tasks[0].label].complete_up_to
    cert = _certificate(plan, complete_up_to,
                        trace.absolute[abs_tasks[0].label].source if abs_tasks else None)
    warnings = []
    if abs_tasks:
        warnings.append(
            "absolute Thue inequalities are solved exhaustively only for |v| <= "
            f"{complete_up_to} in their target pair; solutions with |y| > "
            f"{cert['relative_complete_radius']} are not ruled out")
        if any(r.heuristic_extra for r in trace.absolute.values()):
            warnings.append("some absolute solutions come from the heuristic convergent extension")
    return SolutionSet(field.m, frozenset(found), include_trivial, tuple(warnings), cert, trace)


def _certificate(plan: ReductionPlan, complete_up_to, source) -> dict:
    R = plan.constants.y_bound
    if complete_up_to is None:
        radius = None
    elif plan.field.case is Case.I:
        # |2y1 + y2| <= 2|y| and |y2| <= 2|y|/sqrt(m)
        radius = Fraction(complete_up_to, 2)
    else:
        radius = Fraction(complete_up_to)
    box_radius = R
    for t in plan.tasks:
        if isinstance(t, EnumerationBox) and t.role == "residual":
            box_radius = max(box_radius, Fraction(t.v_max + t.y2_max))
    return {
        "abs_solver_source": source,
        "abs_complete_up_to": complete_up_to,
        "relative_complete_radius": None if radius is None else float(radius),
        "relative_complete_radius_exact": None if radius is None else str(radius),
        "small_y_radius": rational_json(R),
        "covers_plan": radius is not None and radius >= box_radius,
    }


def solve_relative(F: BinaryForm, field: QuadField, K, constants: ReductionConstants,
                   roots: RootSystem, config: SearchConfig = SearchConfig(),
                   include_trivial: bool = True, abs_solver=solve_abs):
    """Build and execute the plan; returns (plan, solution_set)."""
    plan = build_plan(F, field, K, constants, roots)
    return plan, execute_plan(plan, abs_solver, config, include_trivial)
