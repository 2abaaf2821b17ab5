"""Relative Thue inequalities over imaginary quadratic fields."""

from .abs_thue import AbsResult, SearchConfig, solve_abs
from .binary_form import (
    BinaryForm,
    RootSystem,
    check_irreducible,
    evaluate_int,
    gap_constants,
    isolate_roots,
    parse_form,
)
from .constants import ReductionConstants, choose_parameters, compute_constants
from .oracle import Box, brute_force_box
from .quad_field import (
    QuadField,
    RingElement,
    abs_squared,
    evaluate_ring,
    im_cross,
    make_field,
)
from .reduction import (
    ReductionPlan,
    SolutionSet,
    build_plan,
    canonicalize_sign,
    execute_plan,
    solve_relative,
)

__version__ = "0.1.0"
