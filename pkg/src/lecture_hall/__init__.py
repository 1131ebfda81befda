"""Exact combinatorics of s-lecture hall simplices, s-derangement polynomials
and s-lecture hall order polytopes.
"""

from .errors import LectureHallError
from .inversions import (
    InversionSequence,
    SSequence,
    enumerate_restricted,
    interlacing_certificate,
    s_derangement_enum,
    s_derangement_recursive,
    s_eulerian,
)
from .lattice import LatticeSimplex, hstar, lecture_hall_simplex, local_hstar
from .permutations import ColoredPermutation, Permutation, derangement_poly, eulerian_poly
from .polynomial import IntPolynomial, gamma_vector, is_symmetric, symmetric_decomposition
from .posets import OrderPolytope, Poset, betke_mcmullen_hstar, ehrhart_hstar
from .roots import interlaces, is_real_rooted

__version__ = "0.1.0"

__all__ = [
    "LectureHallError",
    "InversionSequence",
    "SSequence",
    "enumerate_restricted",
    "interlacing_certificate",
    "s_derangement_enum",
    "s_derangement_recursive",
    "s_eulerian",
    "LatticeSimplex",
    "hstar",
    "lecture_hall_simplex",
    "local_hstar",
    "ColoredPermutation",
    "Permutation",
    "derangement_poly",
    "eulerian_poly",
    "IntPolynomial",
    "gamma_vector",
    "is_symmetric",
    "symmetric_decomposition",
    "OrderPolytope",
    "Poset",
    "betke_mcmullen_hstar",
    "ehrhart_hstar",
    "interlaces",
    "is_real_rooted",
]
