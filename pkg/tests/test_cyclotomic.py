import itertools
import json

import pytest
from hypothesis import given, strategies as st

from q8mjd.cyclotomic import (
    CACHE_ENV,
    CyclotomicElt,
    clear_rs_cache,
    construct_r_s,
    cyc_is_unit,
    cyc_norm,
    search_r_s,
    solve_r_s,
)
from q8mjd.density import mult_order
from q8mjd.errors import DomainMismatch, NoSolution, PreconditionError
from q8mjd.exact import is_prime

from conftest import cyclotomic_elts

eps = CyclotomicElt.eps


def test_eps2_times_eps3_is_one():
    assert eps(5, 2) * eps(5, 3) == CyclotomicElt.one(5)


def test_eps_times_eps3_folds_to_power_basis():
    assert (eps(5, 1) * eps(5, 3)).coeffs == (-1, -1, -1, -1)


def test_eps_plus_eps2_is_minus_one_for_p3():
    assert eps(3, 1) + eps(3, 2) == CyclotomicElt.from_int(3, -1)


def test_mismatched_p_raises():
    with pytest.raises(DomainMismatch):
        eps(3) + eps(5)


def test_wrong_length_rejected():
    with pytest.raises(ValueError):
        CyclotomicElt(5, (1, 2, 3))


@pytest.mark.parametrize("x, expected", [
    (CyclotomicElt.one(5) - eps(5), 5),
    (eps(5), 1),
    (CyclotomicElt.from_int(5, 2), 16),
])
def test_norm_examples(x, expected):
    assert cyc_norm(x) == expected


@pytest.mark.parametrize("x, expected", [
    (eps(5), True),
    (CyclotomicElt.one(5) - eps(5), False),
    (CyclotomicElt.zero(5), False),
])
def test_is_unit_examples(x, expected):
    assert cyc_is_unit(x) is expected


def test_is_unit_needs_integer_coefficients():
    with pytest.raises(PreconditionError):
        cyc_is_unit(CyclotomicElt.from_int(5, "1/2"))


def test_norm_of_one_minus_eps_is_p():
    for p in (3, 7, 11, 13):
        assert cyc_norm(CyclotomicElt.one(p) - eps(p)) == p


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_eps_p_is_one_and_cyclotomic_relation(p):
    assert eps(p) ** p == CyclotomicElt.one(p)
    assert sum((eps(p, k) for k in range(p)), CyclotomicElt.zero(p)).is_zero()


@pytest.mark.parametrize("p", [5, 7])
@given(data=st.data())
def test_norm_is_multiplicative(p, data):
    x = data.draw(cyclotomic_elts(p))
    y = data.draw(cyclotomic_elts(p))
    assert cyc_norm(x * y) == cyc_norm(x) * cyc_norm(y)


@given(x=cyclotomic_elts(7))
def test_reduction_is_idempotent(x):
    assert CyclotomicElt.from_poly(7, x.coeffs) == x
    assert x * CyclotomicElt.one(7) == x


@given(x=cyclotomic_elts(5), y=cyclotomic_elts(5), z=cyclotomic_elts(5))
def test_ring_axioms(x, y, z):
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


@given(x=cyclotomic_elts(7))
def test_norm_is_rational_and_integral(x):
    n = cyc_norm(x)
    assert isinstance(n, int)


def test_fixed_p3_pair():
    assert (eps(3, 1) ** 2 + eps(3, 2) ** 2 + 1).is_zero()


def _brute_force_p5():
    # independent oracle: every pair of vectors with entries in {-1, 0, 1}
    box = list(itertools.product((-1, 0, 1), repeat=4))
    squares = {}
    for v in box:
        x = CyclotomicElt(5, v)
        squares.setdefault((x * x).coeffs, x)
    minus_one = CyclotomicElt.from_int(5, -1)
    for v in box:
        r = CyclotomicElt(5, v)
        target = (minus_one - r * r).coeffs
        if target in squares:
            return r, squares[target]
    return None


def test_p5_solution_exists_in_box_and_solver_verifies():
    oracle = _brute_force_p5()
    assert oracle is not None
    r, s = oracle
    assert (r * r + s * s + 1).is_zero()
    r, s = solve_r_s(5)
    assert (r * r + s * s + 1).is_zero()
    assert r.is_integral() and s.is_integral()


def test_p7_has_no_solution():
    with pytest.raises(NoSolution):
        solve_r_s(7)


def test_construction_alone_works_beyond_search_range():
    for p in (11, 13, 19, 29, 37):
        r, s = construct_r_s(p)
        assert (r * r + s * s + 1).is_zero()
        assert search_r_s(p) is None or p < 11


def test_all_primes_up_to_50():
    for p in range(3, 51):
        if not is_prime(p):
            continue
        if mult_order(2, p) % 2:
            with pytest.raises(NoSolution):
                solve_r_s(p)
        else:
            r, s = solve_r_s(p)
            assert (r * r + s * s + 1).is_zero()


def test_file_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    clear_rs_cache()
    first = solve_r_s(13)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    assert "13" in json.loads(files[0].read_text())
    clear_rs_cache()
    assert solve_r_s(13) == first
    clear_rs_cache()


def test_corrupt_cache_entry_is_ignored(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    clear_rs_cache()
    solve_r_s(11)
    path = next(tmp_path.iterdir())
    data = json.loads(path.read_text())
    data["11"]["r"][0] += 1
    data["13"] = {"r": [1, 2], "s": "junk"}
    path.write_text(json.dumps(data))
    clear_rs_cache()
    for p in (11, 13):
        r, s = solve_r_s(p)
        assert (r * r + s * s + 1).is_zero()
    clear_rs_cache()


@given(x=cyclotomic_elts(5))
def test_json_round_trip(x):
    assert CyclotomicElt.from_json(json.loads(json.dumps(x.to_json()))) == x


def test_json_rationals_are_strings():
    x = CyclotomicElt.from_int(3, "3/4")
    assert x.to_json()["coeffs"] == ["3/4", 0]
    assert CyclotomicElt.from_json(x.to_json()) == x
