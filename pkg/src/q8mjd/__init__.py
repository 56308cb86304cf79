"""Exact arithmetic and Jordan decomposition in Z[Q8 x C_p], with MJD checks
and the density of primes p where ord_p(2) = 2 (mod 4)."""

from .cyclic_ring import CyclicRingElt, bass_unit, invert_unit
from .cyclotomic import CyclotomicElt, solve_r_s
from .density import density_of_P, in_P, mult_order, odoni_lambda, OdoniParams, scan_primes
from .errors import (
    DomainMismatch,
    NoSolution,
    NotAUnit,
    NotInV,
    PreconditionError,
    Q8MJDError,
    SemisimpleInput,
    UnsupportedBranch,
    WrongPrime,
)
from .g_ring import GRingElt, g_invert, is_nilpotent, make_nilpotent, rho_map
from .jordan import JordanPair, jordan_decompose, mjd_certificate, normalize_to_V

__all__ = [
    "CyclicRingElt", "bass_unit", "invert_unit",
    "CyclotomicElt", "solve_r_s",
    "density_of_P", "in_P", "mult_order", "odoni_lambda", "OdoniParams", "scan_primes",
    "DomainMismatch", "NoSolution", "NotAUnit", "NotInV", "PreconditionError", "Q8MJDError",
    "SemisimpleInput", "UnsupportedBranch", "WrongPrime",
    "GRingElt", "g_invert", "is_nilpotent", "make_nilpotent", "rho_map",
    "JordanPair", "jordan_decompose", "mjd_certificate", "normalize_to_V",
]

__version__ = "0.1.0"
