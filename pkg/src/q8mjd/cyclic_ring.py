"""The group ring D[C_p] = D[t]/(t^p - 1) for D in {Z, Q, Z/2, Z/4}.

Elements carry their coefficient domain explicitly.  Arithmetic needs both
operands over the same prime and domain; moving between domains goes through
:meth:`CyclicRingElt.coerce`, which only allows Z -> Q, Z -> Z/2, Z -> Z/4
(and Z/4 -> Z/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple

from .cyclotomic import CyclotomicElt
from .errors import DomainMismatch, NotAUnit, PreconditionError
from .exact import Number, is_integral, normalize, require_odd_prime, to_json_number
from .linalg import solve_integral

DOMAINS = ("Z", "Q", "Z2", "Z4")
_MODULUS = {"Z2": 2, "Z4": 4}
_COERCIONS = {("Z", "Q"), ("Z", "Z2"), ("Z", "Z4"), ("Z4", "Z2")}


def _clean(domain: str, c) -> Number:
    if domain == "Q":
        return normalize(c)
    c = normalize(c)
    if not is_integral(c):
        raise PreconditionError(f"non-integer coefficient {c} in domain {domain}")
    c = int(c)
    if domain in _MODULUS:
        return c % _MODULUS[domain]
    return c


@dataclass(frozen=True)
class CyclicRingElt:
    p: int
    domain: str
    coeffs: Tuple[Number, ...]

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise PreconditionError(f"unknown domain {self.domain!r}")
        if len(self.coeffs) != self.p:
            raise PreconditionError(f"expected {self.p} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(_clean(self.domain, c) for c in self.coeffs))

    # constructors -------------------------------------------------------

    @classmethod
    def from_list(cls, p: int, coeffs: Iterable, domain: str = "Z") -> "CyclicRingElt":
        """Build from coefficients of t^0, t^1, ...; exponents wrap modulo p."""
        full = [0] * p
        for i, c in enumerate(coeffs):
            full[i % p] += normalize(c)
        return cls(p, domain, tuple(full))

    @classmethod
    def scalar(cls, p: int, c, domain: str = "Z") -> "CyclicRingElt":
        return cls(p, domain, (c,) + (0,) * (p - 1))

    @classmethod
    def zero(cls, p: int, domain: str = "Z") -> "CyclicRingElt":
        return cls.scalar(p, 0, domain)

    @classmethod
    def one(cls, p: int, domain: str = "Z") -> "CyclicRingElt":
        return cls.scalar(p, 1, domain)

    @classmethod
    def t_power(cls, p: int, k: int = 1, domain: str = "Z") -> "CyclicRingElt":
        coeffs = [0] * p
        coeffs[k % p] = 1
        return cls(p, domain, tuple(coeffs))

    @classmethod
    def sigma(cls, p: int, domain: str = "Z") -> "CyclicRingElt":
        """1 + t + ... + t^(p-1)."""
        return cls(p, domain, (1,) * p)

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "CyclicRingElt") -> None:
        if other.p != self.p or other.domain != self.domain:
            raise DomainMismatch(
                f"({self.p}, {self.domain}) vs ({other.p}, {other.domain})"
            )

    def _lift_scalar(self, other):
        if isinstance(other, CyclicRingElt):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CyclicRingElt.scalar(self.p, other, self.domain)
        return NotImplemented

    def __add__(self, other):
        other = self._lift_scalar(other)
        if other is NotImplemented:
            return other
        return CyclicRingElt(self.p, self.domain, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclicRingElt(self.p, self.domain, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        other = self._lift_scalar(other)
        if other is NotImplemented:
            return other
        return CyclicRingElt(self.p, self.domain, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CyclicRingElt(self.p, self.domain, tuple(x * other for x in self.coeffs))
        other = self._lift_scalar(other)
        if other is NotImplemented:
            return other
        return CyclicRingElt(self.p, self.domain, _convolve(self.coeffs, other.coeffs, self.p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return invert_unit(self) ** (-n)
        result = CyclicRingElt.one(self.p, self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(is_integral(c) for c in self.coeffs)

    def divisible_by(self, n: int) -> bool:
        """True when every coefficient is an integer multiple of n."""
        return all(is_integral(c) and int(c) % n == 0 for c in self.coeffs)

    def coerce(self, domain: str) -> "CyclicRingElt":
        if domain == self.domain:
            return self
        if (self.domain, domain) not in _COERCIONS:
            # Q -> Z is allowed only for integral elements
            if self.domain == "Q" and domain == "Z" and self.is_integral():
                return CyclicRingElt(self.p, "Z", self.coeffs)
            raise DomainMismatch(f"cannot coerce {self.domain} -> {domain}")
        return CyclicRingElt(self.p, domain, self.coeffs)

    def mod(self, n: int) -> "CyclicRingElt":
        """Reduction into Z/2 or Z/4."""
        return self.coerce({2: "Z2", 4: "Z4"}[n])

    def star(self) -> "CyclicRingElt":
        return star(self)

    def phi(self, i: int) -> "CyclicRingElt":
        return phi_auto(i, self)

    def evaluate_at_eps(self) -> CyclotomicElt:
        if self.domain not in ("Z", "Q"):
            raise DomainMismatch("evaluation at eps needs a characteristic-0 domain")
        return CyclotomicElt.from_poly(self.p, self.coeffs)

    # serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "domain": self.domain, "coeffs": [to_json_number(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CyclicRingElt":
        p = int(data["p"])
        require_odd_prime(p)
        return cls(p, data.get("domain", "Z"), tuple(normalize(c) for c in data["coeffs"]))

    def __repr__(self) -> str:
        terms = [f"{c}" if i == 0 else f"{c}*t^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"C{self.p}[{self.domain}]({' + '.join(terms) or '0'})"


def _convolve(a: Tuple[Number, ...], b: Tuple[Number, ...], p: int) -> list:
    out = [0] * p
    right = [(j, y) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in right:
            k = i + j
            if k >= p:
                k -= p
            out[k] += x * y
    return out


def augmentation(x: CyclicRingElt) -> Number:
    total = sum(x.coeffs)
    if x.domain in _MODULUS:
        return total % _MODULUS[x.domain]
    return normalize(total)


def star(x: CyclicRingElt) -> CyclicRingElt:
    """The involution t -> t^-1."""
    c = x.coeffs
    return CyclicRingElt(x.p, x.domain, (c[0],) + tuple(reversed(c[1:])))


def phi_auto(i: int, x: CyclicRingElt) -> CyclicRingElt:
    """The automorphism t -> t^i, i coprime to p."""
    p = x.p
    if i % p == 0:
        raise PreconditionError(f"phi_{i} is not an automorphism of Z[C_{p}]")
    out = [0] * p
    for j, c in enumerate(x.coeffs):
        out[(i * j) % p] += c
    return CyclicRingElt(p, x.domain, tuple(out))


def full_norm(x: CyclicRingElt) -> CyclicRingElt:
    result = x
    for i in range(2, x.p):
        result = result * phi_auto(i, x)
    return result


def half_norm(x: CyclicRingElt) -> CyclicRingElt:
    result = x
    for i in range(2, (x.p - 1) // 2 + 1):
        result = result * phi_auto(i, x)
    return result


def delta_map(x: CyclicRingElt) -> Tuple[Number, CyclotomicElt]:
    """Q[C_p] -> Q + Q(eps), t -> (1, eps)."""
    return augmentation(x), x.evaluate_at_eps()


def multiplication_matrix(x: CyclicRingElt) -> list:
    """Matrix of y -> x*y in the basis 1, t, ..., t^(p-1)."""
    p = x.p
    return [[x.coeffs[(i - j) % p] for j in range(p)] for i in range(p)]


def invert_unit(x: CyclicRingElt) -> CyclicRingElt:
    """Inverse in Z[C_p]; raises NotAUnit when there is none."""
    if x.domain != "Z":
        x = x.coerce("Z") if x.domain == "Q" else x
        if x.domain != "Z":
            raise DomainMismatch("invert_unit works over Z")
    if augmentation(x) not in (1, -1):
        raise NotAUnit(f"augmentation {augmentation(x)} is not a unit of Z")
    rhs = [1] + [0] * (x.p - 1)
    sol = solve_integral(multiplication_matrix(x), rhs)
    if sol is None:
        raise NotAUnit(f"{x!r} has no inverse in Z[C_{x.p}]")
    y = CyclicRingElt(x.p, "Z", tuple(sol))
    assert x * y == CyclicRingElt.one(x.p), "inverse failed verification"
    return y


def is_unit(x: CyclicRingElt) -> bool:
    try:
        invert_unit(x)
    except NotAUnit:
        return False
    return True


# U1 = C_p x U2 -----------------------------------------------------------------


def t_exponent(w: CyclicRingElt) -> int:
    """sum j*w_j mod p: w = aug(w) + (that)(t - 1) modulo (t - 1)^2."""
    return sum(j * int(c) for j, c in enumerate(w.coeffs)) % w.p


def in_U2_congruence(w: CyclicRingElt) -> bool:
    """Augmentation 1 and w = 1 modulo (t - 1)^2."""
    return augmentation(w) == 1 and t_exponent(w) == 0


@dataclass(frozen=True)
class U1Decomposition:
    i: int
    v: CyclicRingElt

    def recombine(self) -> CyclicRingElt:
        return CyclicRingElt.t_power(self.v.p, self.i) * self.v


def u1_decompose(w: CyclicRingElt) -> U1Decomposition:
    """Split a unit of augmentation 1 as t^i * v with v = 1 mod (t-1)^2 and v* = v."""
    if w.domain != "Z":
        raise DomainMismatch("u1_decompose works over Z")
    if augmentation(w) != 1:
        raise PreconditionError(f"augmentation is {augmentation(w)}, expected 1")
    invert_unit(w)
    i = t_exponent(w)
    v = CyclicRingElt.t_power(w.p, -i) * w
    if not in_U2_congruence(v):
        raise AssertionError("cofactor is not 1 mod (t-1)^2")
    if star(v) != v:
        raise AssertionError("U2 cofactor is not *-invariant")
    return U1Decomposition(i, v)


def in_U2(w: CyclicRingElt) -> bool:
    """Membership in U2(Z[C_p]) for a unit w."""
    return in_U2_congruence(w) and is_unit(w)


def epsilon_image_is_one_mod(w: CyclicRingElt) -> bool:
    """delta(w) = 1 modulo (1 - eps), tested through Z[eps]/(1 - eps) = F_p."""
    y = w.evaluate_at_eps()
    return sum(int(c) for c in y.coeffs) % w.p == 1


def bass_unit(p: int, k: int, m: int) -> CyclicRingElt:
    """(1 + t + ... + t^(k-1))^m + ((1 - k^m)/p) * sigma."""
    require_odd_prime(p)
    if not 1 < k < p:
        raise PreconditionError(f"need 1 < k < p, got k={k}")
    if m < 1 or pow(k, m, p) != 1:
        raise PreconditionError(f"{k}^{m} is not 1 mod {p}")
    base = CyclicRingElt.from_list(p, [1] * k)
    return base**m + CyclicRingElt.sigma(p) * ((1 - k**m) // p)


def bass_parameters(p: int, max_m=None):
    """All valid (k, m) with m a multiple of ord_p(k) and m <= max_m (default 2(p-1))."""
    from .density import mult_order

    max_m = 2 * (p - 1) if max_m is None else max_m
    out = []
    for k in range(2, p - 1):
        order = mult_order(k, p)
        out.extend((k, m) for m in range(order, max_m + 1, order))
    return out
