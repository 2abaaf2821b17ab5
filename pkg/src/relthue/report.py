"""JSON document and plain-text report for one solver run."""

from __future__ import annotations

from fractions import Fraction

from .binary_form import BinaryForm, RootSystem
from .constants import ReductionConstants
from .quad_field import QuadField
from .rational import rational_json, to_decimal, to_exact
from .reduction import ReductionPlan, SolutionSet

SCHEMA = 1

_TARGETS = {"XY1": "x1, y1", "XY2": "x2, y2", "XYI": "2x1+x2, 2y1+y2"}

# names shown in the constants table, in display order
_CONSTANT_ROWS = (
    ("C", "C"), ("C1", "C1"), ("C2", "C2"), ("D", "D"), ("E", "E"),
    ("t_y1", "threshold on |v|"), ("t_y2", "threshold on |y2|"),
)


def roots_json(roots: RootSystem) -> list[dict]:
    return [{"lower": to_exact(a), "upper": to_exact(b),
             "approx": to_decimal((a + b) / 2, 5)} for a, b in roots.intervals]


def build_document(request: dict, F: BinaryForm, field: QuadField, roots: RootSystem,
                   A: Fraction, B: Fraction, consts: ReductionConstants,
                   plan: ReductionPlan, result: SolutionSet,
                   param_cost: Fraction | None = None, oracle: dict | None = None) -> dict:
    doc = {
        "schema": SCHEMA,
        "input": request,
        "form": {"coeffs": list(F.coeffs), "degree": F.degree, "text": str(F)},
        "field": {"m": field.m, "case": field.case.value, "basis": field.basis},
        "roots": roots_json(roots),
        "A_lower": rational_json(A),
        "B_lower": rational_json(B),
        "parameters": {"eps": rational_json(consts.eps), "eta": rational_json(consts.eta),
                       "cost": None if param_cost is None else rational_json(param_cost, 1)},
        "constants": consts.to_json(),
        "plan": plan.to_json(),
        "trace": result.trace.to_json() if result.trace else None,
        "result": result.to_json(),
    }
    if oracle is not None:
        doc["oracle"] = oracle
    return doc


def _quad(q) -> str:
    return "({}, {}, {}, {})".format(*q)


def render_text(doc: dict) -> str:
    out = []
    w = out.append
    f = doc["form"]
    fld = doc["field"]
    w(f"F(x, y) = {f['text']}   (degree {f['degree']})")
    w(f"field    = Q(i*sqrt({fld['m']})), case {fld['case']}, Z_M = {{{fld['basis']}}}")
    K = doc["input"]["K"]
    w(f"solve    |F(x, y)| <= {K}  in x, y in Z_M")
    w("")
    w("roots of F(x, 1) (certified intervals):")
    for r in doc["roots"]:
        w(f"  {r['approx']:>14}")
    w(f"A >= {doc['A_lower']['decimal']}   B >= {doc['B_lower']['decimal']}")
    p = doc["parameters"]
    w(f"eps = {p['eps']['exact']}   eta = {p['eta']['exact']}"
      + (f"   (model cost {p['cost']['decimal']})" if p["cost"] else ""))
    w("")
    c = doc["constants"]
    w("constants (upper-rounded; decimal, exact):")
    for key, name in _CONSTANT_ROWS:
        w(f"  {name:<18} {c[key]['decimal']:>14}   {c[key]['exact']}")
    w("")
    w("plan:")
    for t in doc["plan"]["tasks"]:
        if t["kind"] == "EnumerationBox":
            rg = t["ranges"]
            extra = f", |y| <= {t['y_abs_max']['decimal']}" if "y_abs_max" in t else ""
            w(f"  scan {t['label']}: |x| <= {t['x_abs_max']['decimal']}{extra}; "
              f"x1 {rg['x1']}, x2 {rg['x2']}, y1 {rg['y1']}, y2 {rg['y2']}")
        else:
            res = "".join(f", {k} in {v}" for k, v in t["residual"].items())
            w(f"  {t['label']:<5} if {t['applies']}: |F({_TARGETS[t['target']]})| <= "
              f"{t['rhs']['decimal']}  -> k = {t['k']}{res}")
    tr = doc.get("trace")
    if tr:
        w("")
        w("absolute solutions (up to sign):")
        for label, r in tr["absolute"].items():
            sols = ", ".join(f"({x}, {y})" for x, y in r["solutions"])
            w(f"  {label:<5} k = {r['k']:<6} {sols}")
        w("")
        w("lifted candidates:")
        for cand in tr["candidates"]:
            mark = "accept" if cand["accepted"] else "reject"
            w(f"  {cand['task']:<10} {_quad(cand['coords']):<26} {mark}: {cand['reason']}")
        if tr["non_integral_lifts"]:
            for label, n in tr["non_integral_lifts"].items():
                w(f"  {label:<10} {n} lift(s) with non-integral coordinates rejected")
        for label, n in tr["box_points"].items():
            w(f"  scan {label}: {n} points tested, {tr['box_hits'][label]} hit(s)")
    w("")
    res = doc["result"]
    w(f"solutions (x1, x2, y1, y2), up to sign: {res['count']}")
    for s in res["solutions"]:
        w(f"  {_quad(s['coords'])}")
    cert = res["certificate"]
    if cert:
        w("")
        w(f"certificate: complete for |y| <= {cert['relative_complete_radius_exact']} "
          f"(absolute solver: {cert['abs_solver_source']}, "
          f"exhaustive for |v| <= {cert['abs_complete_up_to']}); covers plan: {cert['covers_plan']}")
    for warning in res["warnings"]:
        w(f"WARNING: {warning}")
    if "oracle" in doc:
        o = doc["oracle"]
        w("")
        w(f"oracle box {o['box']}: {o['count']} solution(s); "
          f"matches pipeline: {o['matches_pipeline']}")
    return "\n".join(out)
