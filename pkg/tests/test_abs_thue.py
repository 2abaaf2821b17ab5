import json
import random
from fractions import Fraction

import pytest

from relthue.abs_thue import (
    AbsResult,
    ExternalSolver,
    SearchConfig,
    canonical_pair,
    filter_result,
    import_external,
    load_external,
    solve_abs,
)
from relthue.binary_form import evaluate_int, isolate_roots, parse_form
from relthue.rational import root_upper

SMALL = SearchConfig(y_max=50)


def naive(F, k, x_max=200, y_max=50):
    out = set()
    for y in range(0, y_max + 1):
        for x in range(-x_max, x_max + 1):
            if (y > 0 or x >= 0) and abs(evaluate_int(F, x, y)) <= k:
                out.add((x, y))
    return out


class TestWorkedExample:
    def test_k36(self, F_ex, roots_ex):
        res = solve_abs(F_ex, 36, roots_ex)
        assert res.solutions == {(0, 0), (1, 0), (2, 0), (-1, 2), (-2, 4)}
        assert res.signed() >= {(1, -2), (2, -4), (-1, 0)}
        assert res.complete_up_to == 10 ** 5 and not res.heuristic_extra

    def test_k1(self, F_ex, roots_ex):
        assert solve_abs(F_ex, 1, roots_ex).solutions == {(0, 0), (1, 0), (-1, 2)}

    def test_k0(self, F_ex, roots_ex):
        assert solve_abs(F_ex, 0, roots_ex).solutions == {(0, 0)}

    def test_negative_k(self, F_ex, roots_ex):
        with pytest.raises(ValueError):
            solve_abs(F_ex, -1, roots_ex)


class TestAgainstNaive:
    def test_corpus(self, form_corpus):
        rng = random.Random(17)
        for F in form_corpus:
            roots = isolate_roots(F)
            full = naive(F, 50)
            for k in sorted(rng.sample(range(0, 51), 4)) + [50]:
                got = solve_abs(F, k, roots, SMALL)
                want = {p for p in full if abs(evaluate_int(F, *p)) <= k}
                assert got.solutions == want, (F, k)

    def test_example_form_all_k(self, F_ex, roots_ex):
        full = naive(F_ex, 50)
        for k in range(0, 51):
            got = solve_abs(F_ex, k, roots_ex, SMALL).solutions
            assert got == {p for p in full if abs(evaluate_int(F_ex, *p)) <= k}

    def test_cubic_many_solutions(self):
        # x^3 - 3xy^2 + y^3 has many small solutions; compare with the naive loop
        F = parse_form([1, 0, -3, 1])
        roots = isolate_roots(F)
        assert solve_abs(F, 50, roots, SMALL).solutions == naive(F, 50)


class TestProperties:
    def test_window_correctness(self, form_corpus):
        for F in form_corpus[:6]:
            roots = isolate_roots(F, Fraction(1, 10 ** 20))
            res = solve_abs(F, 50, roots, SMALL)
            kr = root_upper(50, F.degree)
            for x, y in res.solutions:
                dist = min(min(abs(x - lo * y), abs(x - hi * y)) for lo, hi in roots.intervals)
                assert dist <= kr + Fraction(1, 10 ** 15)

    def test_monotone_in_k(self, F_ex, roots_ex):
        prev = set()
        for k in (0, 1, 5, 16, 36, 48, 100, 400):
            cur = solve_abs(F_ex, k, roots_ex, SMALL).solutions
            assert prev <= cur
            prev = cur

    def test_filter_matches_direct(self, F_ex, roots_ex):
        big = solve_abs(F_ex, 400, roots_ex, SMALL)
        for k in (0, 1, 20, 36, 399):
            assert filter_result(F_ex, big, k).solutions == solve_abs(F_ex, k, roots_ex, SMALL).solutions
        with pytest.raises(ValueError):
            filter_result(F_ex, big, 401)

    def test_members_verified(self, F_ex, roots_ex):
        res = solve_abs(F_ex, 1000, roots_ex, SMALL)
        assert all(abs(evaluate_int(F_ex, x, y)) <= 1000 for x, y in res.solutions)
        assert all(canonical_pair(x, y) == (x, y) for x, y in res.solutions)


class TestConvergents:
    def test_extension_finds_only_valid_pairs(self, F_ex, roots_ex):
        cfg = SearchConfig(y_max=3, convergent_depth=4)
        res = solve_abs(F_ex, 5000, roots_ex, cfg)
        full = naive(F_ex, 5000, x_max=400, y_max=40)
        assert res.extras
        assert res.heuristic_extra
        assert all(y > 3 for _, y in res.extras)
        assert all(abs(evaluate_int(F_ex, x, y)) <= 5000 for x, y in res.extras)
        # beyond the certified range the extension is a subset of the truth
        assert {p for p in res.extras if p[1] <= 40} <= full

    def test_depth_zero_is_plain(self, F_ex, roots_ex):
        res = solve_abs(F_ex, 5000, roots_ex, SearchConfig(y_max=3))
        assert not res.extras and not res.heuristic_extra

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SearchConfig(y_max=0)
        with pytest.raises(ValueError):
            SearchConfig(window_pad=-1)


class TestExternal:
    def test_round_trip(self, F_ex, roots_ex, tmp_path):
        res = solve_abs(F_ex, 36, roots_ex)
        path = tmp_path / "abs.json"
        path.write_text(json.dumps(res.to_json()))
        loaded = load_external(F_ex, path)
        assert loaded.solutions == res.solutions
        assert loaded.source == "trusted-external"

    def test_signs_normalised(self, F_ex):
        res = import_external(F_ex, 36, [(1, -2), (-2, 0), (0, 0)])
        assert res.solutions == {(-1, 2), (2, 0), (0, 0)}

    def test_rejects_bad_pair(self, F_ex):
        with pytest.raises(ValueError):
            import_external(F_ex, 36, [(3, 1)])

    def test_external_solver_filters(self, F_ex, roots_ex):
        solver = ExternalSolver(import_external(F_ex, 36, [(1, -2), (2, -4), (1, 0), (2, 0), (0, 0)]))
        r = solver(F_ex, 1, roots_ex)
        assert isinstance(r, AbsResult)
        assert r.solutions == {(1, 0), (-1, 2), (0, 0)}
