"""Multiplicative orders, the prime set P, Odoni's density constant and prime scans.

P is the set of odd primes p with ord_p(2) = 2 (mod 4).
"""

from __future__ import annotations

import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence

from .errors import PreconditionError, UnsupportedBranch
from .exact import is_prime, require_odd_prime


def factorize(n: int) -> Dict[int, int]:
    """Trial-division factorization; fine for n below ~10^12."""
    if n < 1:
        raise PreconditionError(f"cannot factor {n}")
    out: Dict[int, int] = {}
    while n % 2 == 0:
        out[2] = out.get(2, 0) + 1
        n //= 2
    f = 3
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _totient(factors: Dict[int, int]) -> int:
    phi = 1
    for q, e in factors.items():
        phi *= (q - 1) * q ** (e - 1)
    return phi


def mult_order(n: int, m: int, *, group_order_factors: Optional[Dict[int, int]] = None) -> int:
    """Smallest k >= 1 with n^k = 1 (mod m).

    Starts from the group order phi(m) (p - 1 for a prime) and divides out
    prime factors while the power stays 1.
    """
    if m < 1:
        raise PreconditionError(f"modulus must be positive, got {m}")
    if math.gcd(n, m) != 1:
        raise PreconditionError(f"gcd({n}, {m}) != 1")
    if m == 1:
        return 1
    if group_order_factors is None:
        group_order_factors = factorize(_totient(factorize(m)))
    k = 1
    for q, e in group_order_factors.items():
        k *= q**e
    n %= m
    for q, e in group_order_factors.items():
        for _ in range(e):
            if pow(n, k // q, m) == 1:
                k //= q
            else:
                break
    return k


def in_P(p: int) -> bool:
    require_odd_prime(p)
    return mult_order(2, p) % 4 == 2


def in_P_via_order_of_4(p: int) -> bool:
    """Equivalent test: ord_p(2) is even and ord_p(4) is odd."""
    require_odd_prime(p)
    return mult_order(2, p) % 2 == 0 and mult_order(4, p) % 2 == 1


# Odoni ---------------------------------------------------------------------


def integer_root(n: int, k: int) -> Optional[int]:
    """The exact k-th root of n >= 1, or None."""
    if k == 1:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid**k
        if v == n:
            return mid
        if v < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


@dataclass(frozen=True)
class OdoniParams:
    Q: FrozenSet[int]
    g: int
    t: int = field(init=False)
    g_hat: int = field(init=False)
    g_tilde: int = field(init=False)
    tau: Dict[int, int] = field(init=False, compare=False)
    gamma: Dict[int, int] = field(init=False, compare=False)

    def __post_init__(self):
        Q = frozenset(self.Q)
        object.__setattr__(self, "Q", Q)
        if not Q:
            raise PreconditionError("Q must be non-empty")
        if any(not is_prime(q) for q in Q):
            raise PreconditionError(f"Q must contain primes only: {sorted(Q)}")
        if self.g <= 1:
            raise PreconditionError("g must be > 1")
        t = max(k for k in range(1, self.g.bit_length() + 1) if integer_root(self.g, k) is not None)
        g_hat = integer_root(self.g, t)
        g_tilde = 1
        for q, e in factorize(g_hat).items():
            if e % 2:
                g_tilde *= q
        t_factors = factorize(t)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "g_hat", g_hat)
        object.__setattr__(self, "g_tilde", g_tilde)
        object.__setattr__(self, "tau", {q: t_factors.get(q, 0) for q in Q})
        object.__setattr__(self, "gamma", {q: 1 if g_tilde % q == 0 else 0 for q in Q})


def _c2(params: OdoniParams) -> Fraction:
    tau2 = params.tau[2]
    gt = params.g_tilde
    if gt % 4 == 1:
        return Fraction(1, 2**tau2 * 3)
    if gt % 4 == 3:
        # printed as (2^tau 3)^-1 - sum_{1 + tau(q) <= n < 2} 1/2; bound is ambiguous
        raise UnsupportedBranch("c_2 for squarefree part = 3 (mod 4) is not supported")
    if params.t % 4 == 0:
        return Fraction(1, 2**tau2 * 3)
    if params.t % 2 == 0:
        return Fraction(-1, 12)
    return Fraction(-1, 24)


def odoni_lambda_star(params: OdoniParams) -> Fraction:
    if 2 not in params.Q:
        return Fraction(0)
    Q_prod = math.prod(params.Q)
    if (2 * Q_prod) % params.g_tilde:
        return Fraction(0)
    result = Fraction(1)
    for q in sorted(params.Q):
        if q == 2:
            result *= _c2(params)
        else:
            result *= 1 - params.gamma[q] - _q_power(q, 1 - params.tau[q]) / (q * q - 1)
    return result


def _q_power(q: int, exponent: int) -> Fraction:
    return Fraction(q) ** exponent


def odoni_lambda(params: OdoniParams) -> Fraction:
    """Density of primes p for which no q in Q divides ord_p(g)."""
    main = Fraction(1)
    for q in sorted(params.Q):
        main *= 1 - _q_power(q, 1 - params.tau[q]) / (q * q - 1)
    return main + odoni_lambda_star(params)


def density_of_P() -> Fraction:
    """ord_p(4) odd minus ord_p(2) odd: the primes with ord_p(2) = 2 (mod 4)."""
    return odoni_lambda(OdoniParams(frozenset({2}), 4)) - odoni_lambda(OdoniParams(frozenset({2}), 2))


# scans ---------------------------------------------------------------------


def sieve(limit: int) -> List[int]:
    """All primes <= limit."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]


def first_odd_primes(count: int) -> List[int]:
    if count < 1:
        raise PreconditionError("count must be >= 1")
    n = count + 1
    # Rosser's bound p_n < n (ln n + ln ln n) for n >= 6
    limit = 15 if n < 6 else int(n * (math.log(n) + math.log(math.log(n)))) + 1
    primes = sieve(limit)
    return primes[1 : count + 1]


def _smallest_factor_table(limit: int) -> List[int]:
    spf = list(range(limit + 1))
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def _factor_with(spf: Sequence[int], n: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    while n > 1:
        q = spf[n]
        out[q] = out.get(q, 0) + 1
        n //= q
    return out


def orders_of_two(primes: Sequence[int]) -> List[int]:
    """ord_p(2) for every p in ``primes`` (all odd), sharing one factor table."""
    if not primes:
        return []
    spf = _smallest_factor_table(max(primes))
    return [mult_order(2, p, group_order_factors=_factor_with(spf, p - 1)) for p in primes]


PREDICATES: Dict[str, Callable[[int, int], bool]] = {
    "in_P": lambda p, order: order % 4 == 2,
    "ord2_odd": lambda p, order: order % 2 == 1,
    "ord2_even": lambda p, order: order % 2 == 0,
    # Q8 x C_p with p >= 5 and ord_p(2) even
    "case_iii": lambda p, order: p >= 5 and order % 2 == 0,
}

THEORETICAL_DENSITY: Dict[str, Fraction] = {
    "in_P": Fraction(7, 24),
    "ord2_odd": Fraction(7, 24),
    "ord2_even": Fraction(17, 24),
    "case_iii": Fraction(17, 24),
}


@dataclass(frozen=True)
class DensityReport:
    predicate: str
    scanned: int
    matched: int
    largest_prime: int
    theoretical: Fraction

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.matched, self.scanned)

    @property
    def deviation(self) -> Fraction:
        return abs(self.ratio - self.theoretical)

    def to_json(self) -> dict:
        return {
            "predicate": self.predicate,
            "scanned": self.scanned,
            "matched": self.matched,
            "largest_prime": self.largest_prime,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "theoretical": f"{self.theoretical.numerator}/{self.theoretical.denominator}",
            "deviation": float(self.deviation),
        }


def _count_block(args):
    primes, predicate = args
    test = PREDICATES[predicate]
    return sum(1 for p, o in zip(primes, orders_of_two(primes)) if test(p, o))


def scan_primes(count: int, predicate: str = "in_P", workers: int = 1) -> DensityReport:
    """Apply ``predicate`` to the first ``count`` odd primes."""
    if predicate not in PREDICATES:
        raise PreconditionError(f"unknown predicate {predicate!r}; choose from {sorted(PREDICATES)}")
    primes = first_odd_primes(count)
    if workers <= 1:
        matched = _count_block((primes, predicate))
    else:
        size = -(-len(primes) // workers)
        blocks = [(primes[i : i + size], predicate) for i in range(0, len(primes), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map preserves block order
            matched = sum(pool.map(_count_block, blocks))
    return DensityReport(predicate, len(primes), matched, primes[-1], THEORETICAL_DENSITY[predicate])


def smallest_in_P(residue: int, modulus: int, limit: int = 10**6) -> Optional[int]:
    """First prime p in P with p = residue (mod modulus), scanning in order."""
    for p in sieve(limit)[1:]:
        if p % modulus == residue % modulus and in_P(p):
            return p
    return None


# nilpotents in rational group algebras ------------------------------------------


@dataclass(frozen=True)
class GroupShape:
    """Either an abelian group or Q8 x E x A (E elementary abelian 2-group, |A| = m odd)."""

    abelian: bool
    odd_order: int = 1
    e_rank: int = 0

    def __post_init__(self):
        if not self.abelian and (self.odd_order < 1 or self.odd_order % 2 == 0):
            raise PreconditionError(f"|A| must be odd, got {self.odd_order}")
        if self.e_rank < 0:
            raise PreconditionError("rank of E must be >= 0")


_SHAPE = re.compile(r"^Q8(?:xE(?P<e>\d+))?(?:x[AC](?P<m>\d+))?$")


def parse_group_shape(text: str) -> GroupShape:
    """Parse "abelian", "Q8xC7", "Q8xE2xA15" (E2 = elementary abelian of rank 2)."""
    cleaned = text.replace(" ", "").replace("×", "x").replace("_", "")
    if cleaned.lower() == "abelian":
        return GroupShape(abelian=True)
    match = _SHAPE.match(cleaned)
    if not match:
        raise PreconditionError(f"malformed group descriptor {text!r}")
    return GroupShape(
        abelian=False,
        odd_order=int(match.group("m") or 1),
        e_rank=int(match.group("e") or 0),
    )


def qq_has_nilpotents(shape) -> bool:
    """Whether Q[H] has nonzero nilpotents, for H abelian or Q8 x E x A."""
    if isinstance(shape, str):
        shape = parse_group_shape(shape)
    if shape.abelian:
        return False
    return mult_order(2, shape.odd_order) % 2 == 0
