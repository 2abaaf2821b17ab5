import random
from fractions import Fraction

import pytest

from relthue.binary_form import gap_constants, isolate_roots, parse_form
from relthue.errors import InputError
from relthue.quad_field import make_field

F_EX_COEFFS = (1, -9, -21, 88, 48)
FIELD_MS = (2, 3, 5, 6, 7, 10, 11)


@pytest.fixture(scope="session")
def F_ex():
    return parse_form(F_EX_COEFFS)


@pytest.fixture(scope="session")
def roots_ex(F_ex):
    return isolate_roots(F_ex)


@pytest.fixture(scope="session")
def AB_ex(roots_ex):
    return gap_constants(roots_ex)


@pytest.fixture(scope="session")
def field5():
    return make_field(5)


def poly_from_roots(rts):
    poly = [1]
    for r in rts:
        poly = [a - r * b for a, b in zip(poly + [0], [0] + poly)]
    return poly


def random_forms(seed, count, degrees=(3, 4, 5), spread=12):
    """Monic forms with n distinct real roots that are irreducible over Q.

    Built as prod (x - r_i) + c with integer r_i and a small shift c, then
    kept only when parse_form accepts them.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice(degrees)
        rts = sorted(rng.sample(range(-spread, spread + 1), n))
        poly = poly_from_roots(rts)
        poly[-1] += rng.choice([-3, -2, -1, 1, 2, 3])
        try:
            out.append(parse_form(poly))
        except InputError:
            continue
    return out


@pytest.fixture(scope="session")
def form_corpus():
    return random_forms(seed=20261015, count=12)


def frac(x):
    return Fraction(str(x))


# acceptance criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
