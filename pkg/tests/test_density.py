from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from q8mjd.density import (
    OdoniParams,
    density_of_P,
    factorize,
    first_odd_primes,
    in_P,
    in_P_via_order_of_4,
    mult_order,
    odoni_lambda,
    orders_of_two,
    parse_group_shape,
    qq_has_nilpotents,
    scan_primes,
    sieve,
    smallest_in_P,
)
from q8mjd.errors import PreconditionError, UnsupportedBranch


def brute_order(n, p):
    k, x = 1, n % p
    while x != 1:
        x = x * n % p
        k += 1
    return k


@pytest.fixture(scope="module")
def primes_1e5():
    return sieve(10**5)[1:]


@pytest.mark.parametrize("n, p, expected", [(2, 7, 3), (2, 5, 4), (2, 11, 10)])
def test_mult_order_examples(n, p, expected):
    assert mult_order(n, p) == expected == brute_order(n, p)


def test_mult_order_rejects_non_coprime():
    with pytest.raises(PreconditionError):
        mult_order(3, 9)


@given(st.sampled_from(sieve(5000)[1:]), st.integers(2, 50))
def test_mult_order_matches_brute_force(p, n):
    if n % p:
        assert mult_order(n, p) == brute_order(n, p)


@given(st.integers(1, 10**9))
def test_factorize_round_trip(n):
    f = factorize(n)
    prod = 1
    for q, e in f.items():
        prod *= q**e
    assert prod == n


def test_in_P_examples():
    assert in_P(11)
    assert not in_P(5)
    assert in_P(281)
    assert smallest_in_P(1, 4) == 281
    with pytest.raises(PreconditionError):
        in_P(2)
    with pytest.raises(PreconditionError):
        in_P(15)


def test_in_P_equivalent_forms(primes_1e5):
    orders = orders_of_two(primes_1e5)
    for p, o in zip(primes_1e5, orders):
        assert in_P(p) == in_P_via_order_of_4(p) == (o % 4 == 2)
        if o % 2 == 0:
            assert o == 2 * mult_order(4, p)
            if p % 4 == 3:
                assert o % 4 == 2


def test_orders_of_two_matches_mult_order():
    ps = sieve(3000)[1:]
    assert orders_of_two(ps) == [mult_order(2, p) for p in ps]


@pytest.mark.parametrize("Q, g, expected", [
    ({2}, 2, Fraction(7, 24)),
    ({2}, 4, Fraction(7, 12)),
    ({3}, 2, Fraction(5, 8)),
])
def test_odoni_examples(Q, g, expected):
    assert odoni_lambda(OdoniParams(frozenset(Q), g)) == expected


def test_density_of_P():
    l2 = odoni_lambda(OdoniParams(frozenset({2}), 2))
    l4 = odoni_lambda(OdoniParams(frozenset({2}), 4))
    assert density_of_P() == Fraction(7, 24) == l4 - l2 == l2


def test_odoni_params():
    par = OdoniParams(frozenset({2, 3}), 72)
    # 72 = 2^3 3^2 is not a perfect power
    assert (par.t, par.g_hat, par.g_tilde) == (1, 72, 2)
    par = OdoniParams(frozenset({2}), 64)
    assert (par.t, par.g_hat, par.g_tilde, par.tau[2]) == (6, 2, 2, 1)
    par = OdoniParams(frozenset({2}), 4)
    assert (par.t, par.tau[2], par.g_tilde) == (2, 1, 2)


def test_odoni_rejects_bad_input():
    with pytest.raises(PreconditionError):
        OdoniParams(frozenset(), 2)
    with pytest.raises(PreconditionError):
        OdoniParams(frozenset({4}), 2)
    with pytest.raises(PreconditionError):
        OdoniParams(frozenset({2}), 1)


def test_unsupported_branch():
    with pytest.raises(UnsupportedBranch):
        odoni_lambda(OdoniParams(frozenset({2, 3}), 3))


@pytest.mark.parametrize("Q, g", [({3}, 2), ({2, 3}, 2), ({2}, 5), ({2}, 6), ({2}, 12)])
def test_odoni_matches_empirical_counts(Q, g):
    # oracle: direct count over the primes up to 10^6
    ps = [p for p in sieve(10**6)[1:] if g % p]
    if g == 2:
        orders = orders_of_two(ps)
    else:
        ps = ps[:20000]
        orders = [mult_order(g, p) for p in ps]
    hits = sum(1 for o in orders if all(o % q for q in Q))
    assert abs(hits / len(ps) - float(odoni_lambda(OdoniParams(frozenset(Q), g)))) < 0.01


def test_scan_examples():
    assert scan_primes(10000).matched == 2917
    even = scan_primes(10000, "ord2_even")
    assert abs(even.ratio - Fraction(17, 24)) < Fraction(2, 100)
    first = scan_primes(1)
    assert (first.matched, first.largest_prime) == (1, 3)


def test_scan_report_fields():
    r = scan_primes(10000)
    assert r.matched <= r.scanned == 10000
    assert r.ratio == Fraction(2917, 10000)
    assert r.deviation < Fraction(1, 100)
    js = r.to_json()
    assert js["ratio"] == "2917/10000" and js["theoretical"] == "7/24"


def test_scan_converges_at_1e5():
    assert scan_primes(10**5).deviation < Fraction(5, 1000)


def test_parallel_scan_is_deterministic():
    serial = scan_primes(5000, "case_iii")
    assert scan_primes(5000, "case_iii", workers=3) == serial


def test_predicates_partition():
    odd = scan_primes(3000, "ord2_odd").matched
    even = scan_primes(3000, "ord2_even").matched
    assert odd + even == 3000
    # case (iii) drops only p = 3 from the even-order primes
    assert scan_primes(3000, "case_iii").matched == even - 1


def test_scan_rejects_unknown_predicate():
    with pytest.raises(PreconditionError):
        scan_primes(10, "nope")


def test_first_odd_primes():
    assert first_odd_primes(5) == [3, 5, 7, 11, 13]
    assert len(first_odd_primes(10000)) == 10000


@pytest.mark.parametrize("shape, expected", [
    ("Q8xC7", False),
    ("Q8xC5", True),
    ("abelian", False),
    ("Q8", False),
    ("Q8xE2xA15", True),
    ("Q8 × C21", True),
    ("Q8xC23", False),
])
def test_qq_has_nilpotents(shape, expected):
    assert qq_has_nilpotents(shape) is expected


def test_malformed_shape():
    with pytest.raises(PreconditionError):
        parse_group_shape("D8xC5")
    with pytest.raises(PreconditionError):
        parse_group_shape("Q8xC4")
