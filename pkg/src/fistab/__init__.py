"""Exact invariants of truncated FI-modules over finite fields and the rationals."""

from .exactlin import KERNEL, FieldSpec
from .fimod import (
    INF,
    CertifiedValue,
    FIMorphism,
    HorizonExhausted,
    InvalidModule,
    TruncatedFIModule,
    degree,
    derivative,
    direct_sum,
    h0_degree,
    is_torsion,
    kernel_K,
    shift,
    tensor,
    torsion_H0,
    validate,
)
from .fihom import FBModule, build_resolution, fi_homology, induce, is_semi_induced, regularity_from_syzygies, t_i
from .fixtures import atomic_torsion, diamond_V, fixture, free, random_module, syzygy_Z
from .localcoh import crit, h_table, hmax, local_cohomology
from .polystab import check_theorem_A, check_theorem_B, in_poly1, in_poly2, stable_degree
from .ranges import RangePair, congruence_range, mpp_range, putman_range, reg_bound_poly1, rw_range, thmC_range
from .symstab import check_k0_stability, coinvariants, stabilization_map

__version__ = "0.1.0"

__all__ = [
    "KERNEL",
    "FieldSpec",
    "INF",
    "CertifiedValue",
    "FIMorphism",
    "HorizonExhausted",
    "InvalidModule",
    "TruncatedFIModule",
    "degree",
    "derivative",
    "direct_sum",
    "h0_degree",
    "is_torsion",
    "kernel_K",
    "shift",
    "tensor",
    "torsion_H0",
    "validate",
    "FBModule",
    "build_resolution",
    "fi_homology",
    "induce",
    "is_semi_induced",
    "regularity_from_syzygies",
    "t_i",
    "atomic_torsion",
    "diamond_V",
    "fixture",
    "free",
    "random_module",
    "syzygy_Z",
    "crit",
    "h_table",
    "hmax",
    "local_cohomology",
    "check_theorem_A",
    "check_theorem_B",
    "in_poly1",
    "in_poly2",
    "stable_degree",
    "RangePair",
    "congruence_range",
    "mpp_range",
    "putman_range",
    "reg_bound_poly1",
    "rw_range",
    "thmC_range",
    "check_k0_stability",
    "coinvariants",
    "stabilization_map",
    "__version__",
]
