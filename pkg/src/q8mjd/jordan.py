"""Jordan decomposition of units of Z[Q8 x C_p] and the MJD congruence checks.

For a unit u = sum f_g(t) g of augmentation 1 the semisimple and nilpotent
parts have closed forms in terms of f_g +- f_gz, so nothing here iterates
or factors minimal polynomials.  Everything returned is checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .cyclic_ring import (
    CyclicRingElt,
    augmentation,
    in_U2_congruence,
    invert_unit,
    is_unit as cyc_is_unit,
    phi_auto,
    star,
)
from .density import mult_order
from .errors import (
    CertificateDisagreement,
    NotAUnit,
    NotInV,
    PreconditionError,
    SemisimpleInput,
    WrongPrime,
)
from .g_ring import (
    GRingElt,
    abelian_parts,
    base_triple,
    g_invert,
    is_nilpotent,
    nilpotent_from_triple,
    project_abelian,
    rho_map,
)

HALF = Fraction(1, 2)
_NONCENTRAL = ("a", "b", "c")


def _gz(g: str) -> str:
    return {"1": "z", "a": "az", "b": "bz", "c": "cz"}[g]


def _differences(u: GRingElt) -> List[CyclicRingElt]:
    return [u[g] - u[_gz(g)] for g in _NONCENTRAL]


def _require_unit(u: GRingElt) -> GRingElt:
    """Return u^-1, raising NotAUnit."""
    return g_invert(u)


def satisfies_nilpotency_criterion(u: GRingElt) -> bool:
    """Some f_g - f_gz (g in a, b, c) is nonzero and their squares sum to zero."""
    diffs = _differences(u)
    if all(d.is_zero() for d in diffs):
        return False
    return (diffs[0] * diffs[0] + diffs[1] * diffs[1] + diffs[2] * diffs[2]).is_zero()


def is_non_semisimple(u: GRingElt, check_unit: bool = True) -> bool:
    """Decide non-semisimplicity of a unit of augmentation 1."""
    if check_unit:
        _require_unit(u)
        if u.augmentation() != 1:
            raise PreconditionError(f"augmentation is {u.augmentation()}, expected 1")
    return satisfies_nilpotency_criterion(u)


@dataclass(frozen=True)
class JordanPair:
    u_s: GRingElt
    u_n: GRingElt

    def semisimple_is_integral(self) -> bool:
        return self.u_s.is_integral()

    def to_json(self) -> dict:
        return {"u_s": self.u_s.to_json(), "u_n": self.u_n.to_json()}


def jordan_decompose(u: GRingElt, check_unit: bool = False) -> JordanPair:
    """u_s = f_1 + f_z z + 1/2 sum (f_g + f_gz) g (1 + z), u_n = u - u_s."""
    if check_unit:
        _require_unit(u)
    if not satisfies_nilpotency_criterion(u):
        raise SemisimpleInput("u is semisimple: its nilpotent part is zero")
    uq = u.coerce("Q") if u.domain == "Z" else u
    semi = {"1": uq["1"], "z": uq["z"]}
    nil = {}
    for g in _NONCENTRAL:
        s = (uq[g] + uq[_gz(g)]) * HALF
        d = (uq[g] - uq[_gz(g)]) * HALF
        semi[g] = semi[_gz(g)] = s
        nil[g], nil[_gz(g)] = d, -d
    u_s = GRingElt.from_components(u.p, semi, "Q")
    u_n = GRingElt.from_components(u.p, nil, "Q")
    if not u_s.denominators() <= {1, 2} or not u_n.denominators() <= {1, 2}:
        raise AssertionError("Jordan parts must have denominators dividing 2")
    return JordanPair(u_s, u_n)


def verify_jordan_pair(u: GRingElt, pair: JordanPair) -> dict:
    """Every defining property of the decomposition, each checked exactly."""
    uq = u.coerce("Q") if u.domain == "Z" else u
    u_s, u_n = pair.u_s, pair.u_n
    return {
        "sum": u_s + u_n == uq,
        "commute": u_s * u_n == u_n * u_s,
        "nilpotent_square_zero": (u_n * u_n).is_zero(),
        "nilpotent_nonzero": not u_n.is_zero(),
        "nilpotent_normal_form": is_nilpotent(u_n),
        "semisimple_central": u_s.is_central(),
        "rho_semisimple_scalar": rho_map(u_s).is_scalar(),
    }


def side_conditions(u: GRingElt) -> dict:
    """(f_1(1), f_z(1)) in {(1,0), (0,1)}, f_g(1) = 0 otherwise, f_1 - f_z a unit."""
    aug = {g: augmentation(c) for g, c in u.as_dict().items()}
    return {
        "aug_pair": (aug["1"], aug["z"]) in ((1, 0), (0, 1)),
        "aug_rest_zero": all(aug[g] == 0 for g in ("a", "b", "c", "az", "bz", "cz")),
        "f1_minus_fz_unit": cyc_is_unit(u["1"] - u["z"]),
    }


def in_V(u: GRingElt) -> bool:
    """Non-semisimple unit of augmentation 1 with f_1 - f_z = 1."""
    if u.augmentation() != 1:
        return False
    if u["1"] - u["z"] != CyclicRingElt.one(u.p, u.domain):
        return False
    if not satisfies_nilpotency_criterion(u):
        return False
    try:
        _require_unit(u)
    except NotAUnit:
        return False
    return True


def normalize_to_V(u: GRingElt) -> Tuple[GRingElt, GRingElt]:
    """Return (v, w) with w a central unit of augmentation 1 and v = u w in V."""
    if u.augmentation() != 1:
        raise PreconditionError(f"augmentation is {u.augmentation()}, expected 1")
    if not satisfies_nilpotency_criterion(u):
        raise SemisimpleInput("u is semisimple")
    f1_aug, fz_aug = augmentation(u["1"]), augmentation(u["z"])
    inv = GRingElt.central(invert_unit(u["1"] - u["z"]))
    if (f1_aug, fz_aug) == (1, 0):
        w = inv
    elif (f1_aug, fz_aug) == (0, 1):
        w = -GRingElt.group_element(u.p, "z") * inv
    else:
        raise NotAUnit(f"(f_1(1), f_z(1)) = ({f1_aug}, {fz_aug}) is impossible for a non-semisimple unit")
    v = u * w
    if v["1"] - v["z"] != CyclicRingElt.one(u.p):
        raise AssertionError("normalization failed")
    return v, w


# reports -------------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: Optional[bool]  # None: not applicable for this p
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    title: str
    checks: List[Check] = field(default_factory=list)

    def add(self, name: str, passed: Optional[bool], **detail) -> None:
        self.checks.append(Check(name, passed, detail))

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.passed is False]

    def to_json(self) -> dict:
        return {"title": self.title, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _residues(x: CyclicRingElt, n: int) -> list:
    return list(x.mod(n).coeffs)


# MJD certificate -------------------------------------------------------------


@dataclass(frozen=True)
class MJDCertificate:
    F_a: CyclicRingElt
    F_b: CyclicRingElt
    F_c: CyclicRingElt
    passed: bool
    residues: Tuple[CyclicRingElt, CyclicRingElt, CyclicRingElt]

    def to_json(self) -> dict:
        out = {"passed": self.passed}
        for g, F, r in zip(_NONCENTRAL, (self.F_a, self.F_b, self.F_c), self.residues):
            out[f"F_{g}"] = F.to_json()["coeffs"]
            out[f"F_{g}_mod2"] = list(r.coeffs)
        return out


def mjd_certificate(u: GRingElt) -> MJDCertificate:
    """Check F_g = f_g + f_gz in 2 Z[C_p] (g = a, b, c) after normalizing u into V.

    The parity test on the normalized unit and the integrality of u_s for u
    itself are computed separately; they must agree.
    """
    v, _ = normalize_to_V(u)
    _, F_a, F_b, F_c = abelian_parts(v)
    residues = tuple(F.mod(2) for F in (F_a, F_b, F_c))
    passed = all(r.is_zero() for r in residues)
    integral = jordan_decompose(u).semisimple_is_integral()
    if passed != integral:
        raise CertificateDisagreement(
            f"parity test says {passed}, integrality of u_s says {integral}"
        )
    return MJDCertificate(F_a, F_b, F_c, passed, residues)


# congruences in V ---------------------------------------------------------------


def frobenius_holds(F: CyclicRingElt, k: int) -> bool:
    """F^(2^k) = sum F_i t^(2^k i) modulo 2."""
    F2 = F.mod(2)
    power = F2
    for _ in range(k):
        power = power * power
    return power == phi_auto(pow(2, k, F.p), F2)


def congruence_suite(u: GRingElt) -> Report:
    if not in_V(u):
        raise NotInV("congruence checks need u in V")
    p = u.p
    F1, Fa, Fb, Fc = abelian_parts(u)
    ws = project_abelian(u)
    report = Report(f"congruences p={p}")

    a4, b4, c4 = (F.mod(4) for F in (Fa, Fb, Fc))
    squares = a4 * a4 + b4 * b4 + c4 * c4
    report.add("sum_of_squares_mod_4", squares.is_zero(), residues=list(squares.coeffs))

    total = (Fa + Fb + Fc).mod(2)
    report.add("sum_mod_2", total.is_zero(), residues=list(total.coeffs))

    for name, w in zip(("w1", "wa", "wb", "wc"), ws):
        report.add(
            f"{name}_in_U2",
            in_U2_congruence(w) and cyc_is_unit(w) and star(w) == w,
            augmentation=augmentation(w),
        )

    F = (F1, Fa, Fb, Fc)
    w1, wa, wb, wc = ws
    recovered = (
        w1 + wa + wb + wc,
        w1 + wa - wb - wc,
        w1 - wa + wb - wc,
        w1 - wa - wb + wc,
    )
    inverse_ok = all(r == G * 4 for r, G in zip(recovered, F))
    report.add("F_star_invariant", inverse_ok and all(star(G) == G for G in F))

    a2, b2 = Fa.mod(2), Fb.mod(2)
    report.add("cubes_mod_2", a2 * a2 * a2 == b2 * b2 * b2)

    order = mult_order(2, p)
    frob = all(frobenius_holds(G, k) for G in (Fa, Fb, Fc) for k in range(1, order + 1))
    report.add("frobenius_mod_2", frob, max_k=order)

    if order % 4 == 2:
        even = [G.divisible_by(2) for G in (Fa, Fb, Fc)]
        report.add("F_even_when_in_P", all(even), residues={g: _residues(G, 2) for g, G in zip(_NONCENTRAL, (Fa, Fb, Fc))})
    else:
        report.add("F_even_when_in_P", None, reason=f"ord_{p}(2) = {order} is not 2 mod 4")
    return report


def remark_triple(p: int = 5):
    """alpha = t + t^-1, beta = t^2 + t^-2, gamma = alpha + beta (all *-invariant)."""
    t = CyclicRingElt.t_power
    alpha = t(p, 1) + t(p, -1)
    beta = t(p, 2) + t(p, -2)
    return alpha, beta, alpha + beta


def remark_counterexample(p: int = 5) -> Report:
    """Squares summing to 0 mod 4 without the elements being even."""
    alpha, beta, gamma = remark_triple(p)
    report = Report(f"star-invariant triple p={p}")
    s = alpha.mod(4) ** 2 + beta.mod(4) ** 2 + gamma.mod(4) ** 2
    report.add("squares_sum_zero_mod_4", s.is_zero(), residues=list(s.coeffs))
    for name, x in zip(("alpha", "beta", "gamma"), (alpha, beta, gamma)):
        report.add(f"{name}_star_invariant", star(x) == x)
        report.add(f"{name}_not_even", not x.mod(2).is_zero(), residues=list(x.mod(2).coeffs))
    return report


# p = 5 ---------------------------------------------------------------------------


def p5_relations(u: GRingElt) -> Report:
    if u.p != 5:
        raise WrongPrime(f"these relations are specific to p = 5, got p = {u.p}")
    if not in_V(u):
        raise NotInV("p = 5 relations need u in V")
    u_inv = g_invert(u)
    pair = jordan_decompose(u)
    F = abelian_parts(u)
    H = abelian_parts(u_inv)
    report = Report("p=5 relations")
    for g, Fg, Hg in zip(("1", "a", "b", "c"), F, H):
        report.add(f"H_{g}_is_phi2_F_{g}", Hg == phi_auto(2, Fg))
    # checked as a product: (u^-1 + u_n) is the inverse of u_s
    s_inv = u_inv.coerce("Q") + pair.u_n
    one = GRingElt.one(u.p, "Q")
    report.add("inverse_is_s_inverse_minus_n", pair.u_s * s_inv == one and s_inv * pair.u_s == one)
    report.add("s_plus_s_inverse_integral", (pair.u_s + s_inv).is_integral())
    for g, Fg, Hg in zip(("a", "b", "c"), F[1:], H[1:]):
        report.add(f"F_{g}_plus_H_{g}_even", (Fg + Hg).divisible_by(2))
    for name, w in zip(("w1", "wa", "wb", "wc"), project_abelian(u)):
        report.add(f"{name}_times_phi2_is_one", w * phi_auto(2, w) == CyclicRingElt.one(5))
    return report


# the non-unit example --------------------------------------------------------------


def non_unit_example(p: int) -> GRingElt:
    """sum_g [sigma + alpha_g] g - alpha_g gz with a nilpotent triple alpha."""
    alphas = base_triple(p)
    sigma = CyclicRingElt.sigma(p)
    comps = {}
    for g, alpha in zip(_NONCENTRAL, alphas):
        comps[g] = sigma + alpha
        comps[_gz(g)] = -alpha
    return GRingElt.from_components(p, comps)


def non_unit_example_parts(p: int) -> JordanPair:
    """The additive decomposition of the non-unit example: sigma (a + b + c) plus a nilpotent."""
    sigma = CyclicRingElt.sigma(p)
    u_s = GRingElt.from_components(p, {g: sigma for g in _NONCENTRAL})
    u_n = nilpotent_from_triple(*base_triple(p))
    return JordanPair(u_s.coerce("Q"), u_n.coerce("Q"))
