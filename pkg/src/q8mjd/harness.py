"""Reproducible families of certified non-semisimple units in Z[Q8 x C_p].

Units are built as  g * w * v (1 + nu) v^-1  where
  g   is 1 or z,
  w   is a central unit: a short word in t^i, Bass units and their inverses,
      optionally times a "split" central unit with nonzero F_a,
  nu  is beta * nu0 for a random beta in Z[C_p] and nu0 from make_nilpotent,
      or a Q8-conjugate of such an element,
  v   is a short word in group elements and unipotents 1 + nu'.
Each candidate is accepted only after g_invert succeeds and the nilpotency
criterion holds, so every returned unit is certified.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

from .cyclic_ring import CyclicRingElt, bass_parameters, bass_unit, invert_unit
from .g_ring import GRingElt, Q8_NAMES, g_invert, make_nilpotent, q8_inverse
from .jordan import satisfies_nilpotency_criterion

# coefficient bound for units kept in the central pool
_POOL_BOUND = 10**11


@dataclass(frozen=True)
class GeneratedUnit:
    u: GRingElt
    inverse: GRingElt
    recipe: str


@lru_cache(maxsize=None)
def central_pool(p: int) -> Tuple[Tuple[CyclicRingElt, CyclicRingElt, str], ...]:
    """(unit, inverse, label) for t^i and every Bass unit with m <= 2(p-1)."""
    pool = []
    for i in range(1, p):
        pool.append((CyclicRingElt.t_power(p, i), CyclicRingElt.t_power(p, -i), f"t^{i}"))
    for k, m in bass_parameters(p):
        w = bass_unit(p, k, m)
        w_inv = invert_unit(w)
        pool.append((w, w_inv, f"bass({k},{m})"))
        pool.append((w_inv, w, f"bass({k},{m})^-1"))
    return tuple(pool)


def split_central_unit(v: CyclicRingElt, v2: CyclicRingElt) -> GRingElt:
    """Central unit of Z[G] with (1 - z)-part v and abelian images (v, v, v2, v2).

    Needs v = v2 mod 4; then F_1 = (v + v2)/2 and F_a = (v - v2)/2.
    """
    diff = v - v2
    if not diff.divisible_by(4):
        raise ValueError("units must agree modulo 4")
    q = lambda x: CyclicRingElt(x.p, "Z", tuple(c // 4 for c in x.coeffs))
    f1 = q(v * 3 + v2)
    fz = q(v2 - v)
    fa = q(diff)
    return GRingElt.from_components(v.p, {"1": f1, "z": fz, "a": fa, "az": fa})


@lru_cache(maxsize=None)
def split_pairs(p: int, limit: int = 8) -> Tuple[Tuple[GRingElt, GRingElt], ...]:
    """A few split central units (and inverses) from pool elements congruent mod 4."""
    singles = [(CyclicRingElt.t_power(p, i), CyclicRingElt.t_power(p, -i)) for i in range(p)]
    for w, w_inv, label in central_pool(p):
        if label.startswith("bass"):
            for i in range(p):
                t = CyclicRingElt.t_power(p, i)
                singles.append((t * w, CyclicRingElt.t_power(p, -i) * w_inv))
    size = lambda x: max(abs(c) for c in x.coeffs)
    singles = [s for s in singles if size(s[0]) <= _POOL_BOUND and size(s[1]) <= _POOL_BOUND]
    seen = {}
    pairs = []
    for w, w_inv in singles:
        key = w.mod(4).coeffs
        if key in seen and seen[key][0] != w:
            v, v_inv = seen[key]
            pairs.append((max(size(v), size(w)), v, v_inv, w, w_inv))
        seen.setdefault(key, (w, w_inv))
    pairs.sort(key=lambda e: e[0])
    out = []
    for _, v, v_inv, w, w_inv in pairs[:limit]:
        x = split_central_unit(v, w)
        x_inv = split_central_unit(v_inv, w_inv)
        assert x * x_inv == GRingElt.one(p)
        out.append((x, x_inv))
    return tuple(out)


def _random_beta(rng: random.Random, p: int) -> CyclicRingElt:
    while True:
        beta = CyclicRingElt(p, "Z", tuple(rng.randint(-2, 2) for _ in range(p)))
        # beta * (1 - t) = 0 exactly when beta is a multiple of sigma
        if len(set(beta.coeffs)) > 1:
            return beta


def _random_nilpotent(rng: random.Random, p: int, nu0: GRingElt) -> GRingElt:
    nu = GRingElt.central(_random_beta(rng, p)) * nu0
    if rng.random() < 0.5:
        g = rng.choice(Q8_NAMES)
        x = GRingElt.group_element(p, g)
        nu = x * nu * GRingElt.group_element(p, q8_inverse(g))
    return nu


def generate_units(p: int, count: int, seed: int = 0, split_probability: float = 0.3) -> List[GeneratedUnit]:
    """``count`` certified non-semisimple units of augmentation 1."""
    rng = random.Random(seed)
    nu0 = make_nilpotent(p)
    pool = central_pool(p)
    splits = split_pairs(p)
    one = GRingElt.one(p)
    out: List[GeneratedUnit] = []
    while len(out) < count:
        recipe = []
        # central part
        w, w_inv = one, one
        for _ in range(rng.randint(0, 4)):
            c, c_inv, label = rng.choice(pool)
            w, w_inv = w * GRingElt.central(c), w_inv * GRingElt.central(c_inv)
            recipe.append(label)
        if splits and rng.random() < split_probability:
            x, x_inv = rng.choice(splits)
            w, w_inv = w * x, w_inv * x_inv
            recipe.append("split")
        g = rng.choice(("1", "z"))
        gz = GRingElt.group_element(p, g)
        recipe.append(g)
        # unipotent part and conjugator
        nu = _random_nilpotent(rng, p, nu0)
        core, core_inv = one + nu, one - nu
        for _ in range(rng.randint(0, 2)):
            if rng.random() < 0.5:
                h = rng.choice(Q8_NAMES)
                v, v_inv = GRingElt.group_element(p, h), GRingElt.group_element(p, q8_inverse(h))
                recipe.append(f"conj {h}")
            else:
                mu = _random_nilpotent(rng, p, nu0)
                v, v_inv = one + mu, one - mu
                recipe.append("conj 1+nu'")
            core, core_inv = v * core * v_inv, v * core_inv * v_inv
        u = gz * w * core
        u_inv = core_inv * w_inv * gz  # z and 1 are self-inverse
        if not satisfies_nilpotency_criterion(u):
            continue
        certified = g_invert(u)
        assert certified == u_inv
        out.append(GeneratedUnit(u, certified, " * ".join(recipe)))
    return out


def random_element(rng: random.Random, p: int, bound: int = 2, density: float = 0.5) -> GRingElt:
    """Random small element of Z[G]; used for homomorphism checks."""
    comps = tuple(
        CyclicRingElt(p, "Z", tuple(rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(p)))
        for _ in range(8)
    )
    return GRingElt(p, "Z", comps)
