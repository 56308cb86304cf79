"""Exact arithmetic in Q(eps) and Z[eps] for a primitive p-th root of unity eps.

Elements are stored in the power basis 1, eps, ..., eps^(p-2).  Products are
computed modulo t^p - 1 and then folded back with
eps^(p-1) = -(1 + eps + ... + eps^(p-2)), so equal elements always have equal
coefficient vectors.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple

from .errors import DomainMismatch, NoSolution, PreconditionError
from .exact import Number, is_integral, normalize, require_odd_prime, to_json_number

log = logging.getLogger(__name__)

CACHE_ENV = "Q8MJD_CACHE_DIR"


def _fold(full: Sequence[Number], p: int) -> Tuple[Number, ...]:
    """Reduce a length-p vector (coefficients of t^0..t^(p-1)) modulo Phi_p."""
    top = full[p - 1]
    if top == 0:
        return tuple(full[: p - 1])
    return tuple(c - top for c in full[: p - 1])


@dataclass(frozen=True)
class CyclotomicElt:
    p: int
    coeffs: Tuple[Number, ...]

    def __post_init__(self):
        coeffs = tuple(normalize(c) for c in self.coeffs)
        if len(coeffs) != self.p - 1:
            raise PreconditionError(
                f"expected {self.p - 1} coefficients for p={self.p}, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    # constructors -------------------------------------------------------

    @classmethod
    def from_int(cls, p: int, n) -> "CyclotomicElt":
        return cls(p, (normalize(n),) + (0,) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> "CyclotomicElt":
        return cls.from_int(p, 0)

    @classmethod
    def one(cls, p: int) -> "CyclotomicElt":
        return cls.from_int(p, 1)

    @classmethod
    def eps(cls, p: int, k: int = 1) -> "CyclotomicElt":
        """The power eps^k, for any integer k."""
        full = [0] * p
        full[k % p] = 1
        return cls(p, _fold(full, p))

    @classmethod
    def from_poly(cls, p: int, coeffs: Iterable) -> "CyclotomicElt":
        """Evaluate sum c_i t^i at t = eps for a coefficient list of any length."""
        full = [0] * p
        for i, c in enumerate(coeffs):
            full[i % p] += normalize(c)
        return cls(p, _fold(full, p))

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "CyclotomicElt":
        if isinstance(other, CyclotomicElt):
            if other.p != self.p:
                raise DomainMismatch(f"p={self.p} vs p={other.p}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CyclotomicElt.from_int(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElt(self.p, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElt(self.p, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElt(self.p, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CyclotomicElt(self.p, tuple(x * other for x in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        full = [0] * p
        right = [(j, y) for j, y in enumerate(other.coeffs) if y]
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in right:
                k = i + j
                if k >= p:
                    k -= p
                full[k] += x * y
        return CyclotomicElt(p, _fold(full, p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise PreconditionError("negative powers are not supported")
        result = CyclotomicElt.one(self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(is_integral(c) for c in self.coeffs)

    def rational_value(self) -> Optional[Number]:
        """The element as a rational number, or None when it is not in Q."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def conjugate(self, i: int) -> "CyclotomicElt":
        """Galois conjugate eps -> eps^i, for i coprime to p."""
        p = self.p
        if i % p == 0:
            raise PreconditionError(f"{i} is not coprime to {p}")
        full = [0] * p
        for j, c in enumerate(self.coeffs):
            full[(i * j) % p] += c
        return CyclotomicElt(p, _fold(full, p))

    def norm(self) -> Number:
        """Field norm to Q: the product of all p-1 Galois conjugates."""
        result = self
        for i in range(2, self.p):
            result = result * self.conjugate(i)
        value = result.rational_value()
        assert value is not None, "norm must be rational"
        return value

    def is_unit(self) -> bool:
        if not self.is_integral():
            raise PreconditionError("is_unit needs integer coefficients")
        return self.norm() in (1, -1)

    # serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "coeffs": [to_json_number(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicElt":
        p = int(data["p"])
        require_odd_prime(p)
        return cls(p, tuple(normalize(c) for c in data["coeffs"]))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*e^{i}")
        return f"Cyc{self.p}({' + '.join(terms) or '0'})"


def cyc_norm(x: CyclotomicElt) -> Number:
    return x.norm()


def cyc_is_unit(x: CyclotomicElt) -> bool:
    return x.is_unit()


# solving r^2 + s^2 = -1 ----------------------------------------------------


def _is_solution(r: CyclotomicElt, s: CyclotomicElt) -> bool:
    return (r * r + s * s + 1).is_zero()


def search_r_s(
    p: int, bound: int = 1, max_support: int = 4, budget: int = 5000
) -> Optional[Tuple[CyclotomicElt, CyclotomicElt]]:
    """Bounded search for r, s in Z[eps] with r^2 + s^2 = -1.

    Candidates have coefficients in [-bound, bound] on at most ``max_support``
    basis positions.  Squares are indexed as they are generated, so each new
    candidate r only needs one lookup for -1 - r^2.  Returns None once
    ``budget`` candidates have been tried without success.
    """
    n = p - 1
    minus_one = CyclotomicElt.from_int(p, -1)
    squares = {}
    values = [v for v in range(-bound, bound + 1) if v]
    tried = 0
    for k in range(1, max_support + 1):
        for support in itertools.combinations(range(n), k):
            for vals in itertools.product(values, repeat=k):
                coeffs = [0] * n
                for i, v in zip(support, vals):
                    coeffs[i] = v
                x = CyclotomicElt(p, tuple(coeffs))
                sq = x * x
                squares.setdefault(sq.coeffs, x)
                partner = squares.get((minus_one - sq).coeffs)
                if partner is not None:
                    return x, partner
                tried += 1
                if tried >= budget:
                    return None
    return None


def construct_r_s(p: int) -> Tuple[CyclotomicElt, CyclotomicElt]:
    """Closed-form r, s for p with ord_p(2) = 2m even.

    From 2^m = -1 (mod p) the product of (1 + eps^(2^j)) over j < m equals
    -eps^(-1).  Each factor is 1^2 + (eps^(2^(j-1)))^2, and a product of sums
    of two squares is again one.  Multiplying by eps, itself the square of
    eps^((p+1)/2), gives -1.
    """
    from .density import mult_order

    order = mult_order(2, p)
    if order % 2:
        raise NoSolution(f"ord_{p}(2) = {order} is odd")
    m = order // 2
    half = (p + 1) // 2  # eps^half squares to eps
    one = CyclotomicElt.one(p)
    a, b = one, CyclotomicElt.zero(p)
    for j in range(m):
        c, d = one, CyclotomicElt.eps(p, half * 2**j)
        a, b = a * c - b * d, a * d + b * c
    root = CyclotomicElt.eps(p, half)
    return root * a, root * b


_rs_cache = {}
_rs_lock = threading.Lock()


def _cache_file() -> Optional[Path]:
    directory = os.environ.get(CACHE_ENV)
    if not directory:
        return None
    return Path(directory) / "rs_solutions.json"


def _load_cached(p: int) -> Optional[Tuple[CyclotomicElt, CyclotomicElt]]:
    path = _cache_file()
    if path is None or not path.exists():
        return None
    try:
        entry = json.loads(path.read_text()).get(str(p))
    except (OSError, json.JSONDecodeError):
        log.warning("ignoring unreadable r,s cache at %s", path)
        return None
    if entry is None:
        return None
    try:
        r = CyclotomicElt(p, tuple(entry["r"]))
        s = CyclotomicElt(p, tuple(entry["s"]))
    except (KeyError, TypeError, ValueError):
        log.warning("malformed r,s cache entry for p=%d; recomputing", p)
        return None
    # never trust a file blindly
    if not _is_solution(r, s):
        log.warning("cached r,s for p=%d fails verification; recomputing", p)
        return None
    return r, s


def _store_cached(p: int, r: CyclotomicElt, s: CyclotomicElt) -> None:
    path = _cache_file()
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    table = {}
    if path.exists():
        try:
            table = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            table = {}
    table[str(p)] = {"r": list(r.coeffs), "s": list(s.coeffs)}
    tmp = path.with_suffix(f".{os.getpid()}.{threading.get_ident()}.tmp")
    tmp.write_text(json.dumps(table, indent=1, sort_keys=True))
    os.replace(tmp, path)


def solve_r_s(p: int) -> Tuple[CyclotomicElt, CyclotomicElt]:
    """Return (r, s) with integer coefficients and r^2 + s^2 + 1 = 0.

    A small bounded search runs first because it gives short solutions; when
    it comes up empty the closed-form construction is used.  Results are
    cached in memory and, if ``Q8MJD_CACHE_DIR`` is set, in a JSON file.
    """
    from .density import mult_order

    require_odd_prime(p)
    with _rs_lock:
        hit = _rs_cache.get(p)
        if hit is not None:
            return hit
        order = mult_order(2, p)
        if order % 2:
            raise NoSolution(f"ord_{p}(2) = {order} is odd; r^2 + s^2 = -1 has no solution")
        pair = _load_cached(p)
        if pair is None:
            pair = search_r_s(p)
            if pair is None:
                pair = construct_r_s(p)
            if not _is_solution(*pair):
                raise AssertionError(f"r,s verification failed for p={p}")
            _store_cached(p, *pair)
        _rs_cache[p] = pair
        return pair


def clear_rs_cache() -> None:
    with _rs_lock:
        _rs_cache.clear()
