import hypothesis.strategies as st
from hypothesis import settings

from q8mjd.cyclic_ring import CyclicRingElt
from q8mjd.cyclotomic import CyclotomicElt
from q8mjd.g_ring import GRingElt

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_PRIMES = (3, 5, 7, 11, 13)


def small_ints(bound=3):
    return st.integers(min_value=-bound, max_value=bound)


@st.composite
def cyclotomic_elts(draw, p, bound=3):
    return CyclotomicElt(p, tuple(draw(st.lists(small_ints(bound), min_size=p - 1, max_size=p - 1))))


@st.composite
def cyclic_elts(draw, p, bound=3, domain="Z"):
    coeffs = draw(st.lists(small_ints(bound), min_size=p, max_size=p))
    return CyclicRingElt.from_list(p, coeffs, domain)


@st.composite
def g_elts(draw, p, bound=2):
    comps = tuple(draw(cyclic_elts(p, bound)) for _ in range(8))
    return GRingElt(p, "Z", comps)
