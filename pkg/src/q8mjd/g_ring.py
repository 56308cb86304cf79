"""The group ring D[Q8 x C_p] and its maps theta, phi (abelianization) and rho.

An element is stored as eight D[C_p] components f_g(t), one per quaternion
element, in the fixed order 1, a, b, c, z, az, bz, cz.  The quaternion
multiplication table is generated from the normal form a^i b^j using only the
defining relations b a = a^-1 b and b^2 = a^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Mapping, Optional, Tuple

from .cyclic_ring import CyclicRingElt, augmentation
from .cyclotomic import CyclotomicElt, solve_r_s
from .errors import DomainMismatch, NotAUnit, PreconditionError
from .exact import normalize, require_odd_prime
from .linalg import solve_integral, solve_rational

Q8_NAMES = ("1", "a", "b", "c", "z", "az", "bz", "cz")
IDX = {name: i for i, name in enumerate(Q8_NAMES)}

# normal forms a^i b^j
_NORMAL_FORM = {
    "1": (0, 0),
    "a": (1, 0),
    "b": (0, 1),
    "c": (1, 1),
    "z": (2, 0),
    "az": (3, 0),
    "bz": (2, 1),
    "cz": (3, 1),
}
_FROM_NORMAL = {v: k for k, v in _NORMAL_FORM.items()}


def _nf_mul(x: Tuple[int, int], y: Tuple[int, int]) -> Tuple[int, int]:
    i, j = x
    k, l = y
    # b^j a^k = a^((-1)^j k) b^j
    i = i + (k if j == 0 else -k)
    j = j + l
    if j == 2:  # b^2 = a^2
        j = 0
        i += 2
    return i % 4, j


def _build_table():
    table = [[0] * 8 for _ in range(8)]
    for g, h in product(Q8_NAMES, repeat=2):
        table[IDX[g]][IDX[h]] = IDX[_FROM_NORMAL[_nf_mul(_NORMAL_FORM[g], _NORMAL_FORM[h])]]
    return tuple(tuple(row) for row in table)


Q8_MUL = _build_table()
Q8_INV = tuple(next(h for h in range(8) if Q8_MUL[g][h] == 0) for g in range(8))


def q8_mul(g: str, h: str) -> str:
    return Q8_NAMES[Q8_MUL[IDX[g]][IDX[h]]]


def q8_inverse(g: str) -> str:
    return Q8_NAMES[Q8_INV[IDX[g]]]


def verify_q8_table() -> None:
    """Check associativity and the presentation; raises AssertionError on failure."""
    for x, y, w in product(range(8), repeat=3):
        assert Q8_MUL[Q8_MUL[x][y]][w] == Q8_MUL[x][Q8_MUL[y][w]], (x, y, w)
    m = q8_mul
    a, b, z = "a", "b", "z"
    assert m(m(a, a), m(a, a)) == "1"
    assert m(a, a) == m(b, b) == z
    assert m(m(b, a), q8_inverse(b)) == q8_inverse(a)
    assert m(a, b) == "c" and m(b, a) == "cz"
    assert m("c", "c") == z
    for g in Q8_NAMES:
        assert m(g, z) == m(z, g)


verify_q8_table()


def _gz(g: str) -> str:
    return q8_mul(g, "z")


# the element ---------------------------------------------------------------


@dataclass(frozen=True)
class GRingElt:
    p: int
    domain: str
    components: Tuple[CyclicRingElt, ...]

    def __post_init__(self):
        if len(self.components) != 8:
            raise PreconditionError("need exactly 8 components")
        for comp in self.components:
            if comp.p != self.p or comp.domain != self.domain:
                raise DomainMismatch("components disagree on p or domain")

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p: int, domain: str = "Z") -> "GRingElt":
        z = CyclicRingElt.zero(p, domain)
        return cls(p, domain, (z,) * 8)

    @classmethod
    def one(cls, p: int, domain: str = "Z") -> "GRingElt":
        return cls.from_components(p, {"1": CyclicRingElt.one(p, domain)}, domain)

    @classmethod
    def from_components(cls, p: int, comps: Mapping[str, CyclicRingElt], domain: str = "Z") -> "GRingElt":
        zero = CyclicRingElt.zero(p, domain)
        unknown = set(comps) - set(Q8_NAMES)
        if unknown:
            raise PreconditionError(f"unknown group elements {sorted(unknown)}")
        return cls(p, domain, tuple(comps.get(g, zero) for g in Q8_NAMES))

    @classmethod
    def group_element(cls, p: int, g: str, k: int = 0, domain: str = "Z") -> "GRingElt":
        """The basis element g * t^k."""
        return cls.from_components(p, {g: CyclicRingElt.t_power(p, k, domain)}, domain)

    @classmethod
    def central(cls, x: CyclicRingElt) -> "GRingElt":
        """Z[C_p] embedded as x * 1."""
        return cls.from_components(x.p, {"1": x}, x.domain)

    # access -------------------------------------------------------------

    def __getitem__(self, g: str) -> CyclicRingElt:
        return self.components[IDX[g]]

    def as_dict(self) -> Dict[str, CyclicRingElt]:
        return dict(zip(Q8_NAMES, self.components))

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "GRingElt") -> None:
        if other.p != self.p or other.domain != self.domain:
            raise DomainMismatch(f"({self.p}, {self.domain}) vs ({other.p}, {other.domain})")

    def __add__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = GRingElt.one(self.p, self.domain) * other
        if not isinstance(other, GRingElt):
            return NotImplemented
        self._check(other)
        return GRingElt(self.p, self.domain, tuple(x + y for x, y in zip(self.components, other.components)))

    __radd__ = __add__

    def __neg__(self):
        return GRingElt(self.p, self.domain, tuple(-x for x in self.components))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GRingElt(self.p, self.domain, tuple(x * other for x in self.components))
        if isinstance(other, CyclicRingElt):
            other = GRingElt.central(other)
        if not isinstance(other, GRingElt):
            return NotImplemented
        self._check(other)
        out = [None] * 8
        left = [(g, f) for g, f in enumerate(self.components) if not f.is_zero()]
        right = [(h, f) for h, f in enumerate(other.components) if not f.is_zero()]
        for g, fg in left:
            row = Q8_MUL[g]
            for h, fh in right:
                k = row[h]
                prod = fg * fh
                out[k] = prod if out[k] is None else out[k] + prod
        zero = CyclicRingElt.zero(self.p, self.domain)
        return GRingElt(self.p, self.domain, tuple(zero if c is None else c for c in out))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * other
        if isinstance(other, CyclicRingElt):
            return GRingElt.central(other) * self
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return g_invert(self) ** (-n)
        result = GRingElt.one(self.p, self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.components)

    def coerce(self, domain: str) -> "GRingElt":
        return GRingElt(self.p, domain, tuple(c.coerce(domain) for c in self.components))

    def augmentation(self):
        return normalize(sum(augmentation(c) for c in self.components))

    def star(self) -> "GRingElt":
        """Extend g -> g^-1 linearly; an anti-automorphism."""
        comps = [None] * 8
        for g, f in enumerate(self.components):
            comps[Q8_INV[g]] = f.star()
        return GRingElt(self.p, self.domain, tuple(comps))

    def is_central(self) -> bool:
        for g in ("a", "b"):
            x = GRingElt.group_element(self.p, g, domain=self.domain)
            if x * self != self * x:
                return False
        return True

    def denominators(self) -> set:
        return {Fraction(c).denominator for comp in self.components for c in comp.coeffs}

    # serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "domain": self.domain,
            "components": {g: c.to_json()["coeffs"] for g, c in zip(Q8_NAMES, self.components)},
        }

    @classmethod
    def from_json(cls, data: dict) -> "GRingElt":
        p = int(data["p"])
        require_odd_prime(p)
        domain = data.get("domain", "Z")
        comps = data["components"]
        unknown = set(comps) - set(Q8_NAMES)
        if unknown:
            raise PreconditionError(f"unknown group elements {sorted(unknown)}")
        return cls.from_components(
            p, {g: CyclicRingElt(p, domain, tuple(normalize(c) for c in v)) for g, v in comps.items()}, domain
        )

    def __repr__(self) -> str:
        parts = [f"({c!r})*{g}" for g, c in zip(Q8_NAMES, self.components) if not c.is_zero()]
        return f"G{self.p}[{self.domain}](" + " + ".join(parts or ["0"]) + ")"


def g_ring_ops(x: GRingElt, y: GRingElt, op: str = "mul") -> GRingElt:
    return {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__}[op](y)


# homomorphisms ---------------------------------------------------------------


def theta_map(x: GRingElt) -> GRingElt:
    """Q[G] -> Q[Q8], t -> 1, kept inside Q[G] with constant components."""
    return GRingElt(
        x.p,
        x.domain,
        tuple(CyclicRingElt.scalar(x.p, augmentation(c), x.domain) for c in x.components),
    )


def abelian_parts(x: GRingElt) -> Tuple[CyclicRingElt, CyclicRingElt, CyclicRingElt, CyclicRingElt]:
    """F_g = f_g + f_gz for g in 1, a, b, c: the image in Q[G/<z>]."""
    return tuple(x[g] + x[_gz(g)] for g in ("1", "a", "b", "c"))


def project_abelian(x: GRingElt):
    """The four characters of C2 x C2 applied to the abelianization: (w1, wa, wb, wc)."""
    F1, Fa, Fb, Fc = abelian_parts(x)
    return (
        F1 + Fa + Fb + Fc,
        F1 + Fa - Fb - Fc,
        F1 - Fa + Fb - Fc,
        F1 - Fa - Fb + Fc,
    )


@dataclass(frozen=True)
class Mat2Cyc:
    """2x2 matrix over Q(eps): entries (m00, m01, m10, m11)."""

    m00: CyclotomicElt
    m01: CyclotomicElt
    m10: CyclotomicElt
    m11: CyclotomicElt

    @classmethod
    def scalar(cls, p: int, x) -> "Mat2Cyc":
        if not isinstance(x, CyclotomicElt):
            x = CyclotomicElt.from_int(p, x)
        zero = CyclotomicElt.zero(p)
        return cls(x, zero, zero, x)

    @classmethod
    def from_ints(cls, p: int, rows) -> "Mat2Cyc":
        (a, b), (c, d) = rows
        f = CyclotomicElt.from_int
        return cls(f(p, a), f(p, b), f(p, c), f(p, d))

    def __add__(self, other: "Mat2Cyc") -> "Mat2Cyc":
        return Mat2Cyc(self.m00 + other.m00, self.m01 + other.m01, self.m10 + other.m10, self.m11 + other.m11)

    def __sub__(self, other: "Mat2Cyc") -> "Mat2Cyc":
        return Mat2Cyc(self.m00 - other.m00, self.m01 - other.m01, self.m10 - other.m10, self.m11 - other.m11)

    def __mul__(self, other):
        if isinstance(other, (CyclotomicElt, int, Fraction)):
            return Mat2Cyc(self.m00 * other, self.m01 * other, self.m10 * other, self.m11 * other)
        return Mat2Cyc(
            self.m00 * other.m00 + self.m01 * other.m10,
            self.m00 * other.m01 + self.m01 * other.m11,
            self.m10 * other.m00 + self.m11 * other.m10,
            self.m10 * other.m01 + self.m11 * other.m11,
        )

    __rmul__ = __mul__

    def trace(self) -> CyclotomicElt:
        return self.m00 + self.m11

    def det(self) -> CyclotomicElt:
        return self.m00 * self.m11 - self.m01 * self.m10

    def is_scalar(self) -> bool:
        return self.m01.is_zero() and self.m10.is_zero() and self.m00 == self.m11

    def is_nilpotent(self) -> bool:
        return self.trace().is_zero() and self.det().is_zero()

    def to_json(self) -> dict:
        return {"rows": [[self.m00.to_json()["coeffs"], self.m01.to_json()["coeffs"]],
                         [self.m10.to_json()["coeffs"], self.m11.to_json()["coeffs"]]]}


def rho_generators(p: int) -> Dict[str, Mat2Cyc]:
    """rho(g) for all g in Q8, as products of the images of a and b."""
    r, s = solve_r_s(p)
    A = Mat2Cyc.from_ints(p, ((0, 1), (-1, 0)))
    B = Mat2Cyc(r, s, s, -r)
    one = Mat2Cyc.scalar(p, 1)
    images = {}
    for g, (i, j) in _NORMAL_FORM.items():
        m = one
        for _ in range(i):
            m = m * A
        for _ in range(j):
            m = m * B
        images[g] = m
    return images


def rho_map(x: GRingElt) -> Mat2Cyc:
    """rho(x) = sum_g f_g(eps) rho(g), built from generator images."""
    images = rho_generators(x.p)
    total = Mat2Cyc.scalar(x.p, 0)
    for g, f in x.as_dict().items():
        if not f.is_zero():
            total = total + images[g] * f.evaluate_at_eps()
    return total


def xi_values(x: GRingElt) -> Dict[str, CyclotomicElt]:
    """xi_g = f_g(eps) - f_gz(eps) for g in 1, a, b, c."""
    return {g: (x[g] - x[_gz(g)]).evaluate_at_eps() for g in ("1", "a", "b", "c")}


def rho_closed_form(x: GRingElt) -> Mat2Cyc:
    """rho(x) through the xi values only; independent of rho_generators."""
    r, s = solve_r_s(x.p)
    xi = xi_values(x)
    x1, xa, xb, xc = xi["1"], xi["a"], xi["b"], xi["c"]
    return Mat2Cyc(
        x1 + r * xb + s * xc,
        xa + s * xb - r * xc,
        -xa + s * xb - r * xc,
        x1 - r * xb - s * xc,
    )


# nilpotents --------------------------------------------------------------------


def nilpotent_witness(x: GRingElt) -> Optional[Tuple[CyclicRingElt, CyclicRingElt, CyclicRingElt]]:
    """(alpha_a, alpha_b, alpha_c) when x = sum alpha_g g (1 - z) with sum alpha_g^2 = 0."""
    if x.domain not in ("Z", "Q"):
        raise DomainMismatch("nilpotency is decided over Q")
    if not (x["1"].is_zero() and x["z"].is_zero()):
        return None
    alphas = []
    for g in ("a", "b", "c"):
        if x[_gz(g)] != -x[g]:
            return None
        alphas.append(x[g])
    if not (alphas[0] * alphas[0] + alphas[1] * alphas[1] + alphas[2] * alphas[2]).is_zero():
        return None
    return tuple(alphas)


def is_nilpotent(x: GRingElt) -> bool:
    return nilpotent_witness(x) is not None


def nilpotent_from_triple(alpha_a: CyclicRingElt, alpha_b: CyclicRingElt, alpha_c: CyclicRingElt) -> GRingElt:
    """sum alpha_g g (1 - z) over g in a, b, c."""
    comps = {}
    for g, alpha in zip(("a", "b", "c"), (alpha_a, alpha_b, alpha_c)):
        comps[g] = alpha
        comps[_gz(g)] = -alpha
    return GRingElt.from_components(alpha_a.p, comps, alpha_a.domain)


def base_triple(p: int) -> Tuple[CyclicRingElt, CyclicRingElt, CyclicRingElt]:
    """(1 - t, (1 - t) R, (1 - t) S) with R, S the coefficient lifts of r, s."""
    r, s = solve_r_s(p)
    one_minus_t = CyclicRingElt.one(p) - CyclicRingElt.t_power(p, 1)
    R = CyclicRingElt.from_list(p, r.coeffs)
    S = CyclicRingElt.from_list(p, s.coeffs)
    return one_minus_t, one_minus_t * R, one_minus_t * S


def make_nilpotent(p: int) -> GRingElt:
    require_odd_prime(p)
    return nilpotent_from_triple(*base_triple(p))


# inversion -----------------------------------------------------------------


def multiplication_matrix(u: GRingElt) -> list:
    """Matrix of y -> u*y in the basis g t^j, ordered (g, j) lexicographically."""
    p = u.p
    n = 8 * p
    M = [[0] * n for _ in range(n)]
    for g, f in enumerate(u.components):
        if f.is_zero():
            continue
        coeffs = f.coeffs
        for h in range(8):
            out = Q8_MUL[g][h]
            for j in range(p):
                col = h * p + j
                for i, c in enumerate(coeffs):
                    if c:
                        M[out * p + (i + j) % p][col] += c
    return M


def _unit_vector(p: int) -> list:
    rhs = [0] * (8 * p)
    rhs[0] = 1
    return rhs


def _from_vector(p: int, domain: str, sol) -> GRingElt:
    return GRingElt(p, domain, tuple(CyclicRingElt(p, domain, tuple(sol[g * p : (g + 1) * p])) for g in range(8)))


def g_invert(u: GRingElt) -> GRingElt:
    """Inverse in Z[G], or NotAUnit."""
    if u.domain == "Q":
        if not u.is_integral():
            raise NotAUnit("element has non-integer coefficients")
        u = u.coerce("Z")
    if u.domain != "Z":
        raise DomainMismatch("g_invert works over Z")
    if u.augmentation() not in (1, -1):
        raise NotAUnit(f"augmentation {u.augmentation()} is not +-1")
    sol = solve_integral(multiplication_matrix(u), _unit_vector(u.p))
    if sol is None:
        raise NotAUnit("no integral inverse")
    v = _from_vector(u.p, "Z", sol)
    one = GRingElt.one(u.p)
    if u * v != one or v * u != one:
        raise AssertionError("inverse failed verification")
    return v


def g_inverse_rational(x: GRingElt) -> GRingElt:
    """Inverse in Q[G]; raises NotAUnit when x is a zero divisor."""
    sol = solve_rational(multiplication_matrix(x), _unit_vector(x.p))
    if sol is None:
        raise NotAUnit("element is not invertible in Q[G]")
    v = _from_vector(x.p, "Q", sol)
    xq = x.coerce("Q") if x.domain == "Z" else x
    assert xq * v == GRingElt.one(x.p, "Q")
    return v


def is_unit(u: GRingElt) -> bool:
    try:
        g_invert(u)
    except NotAUnit:
        return False
    return True
