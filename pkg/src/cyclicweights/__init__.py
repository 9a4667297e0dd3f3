"""Orbit-count bounds on the number of nonzero weights of cyclic codes.

Closed-form bounds live in :mod:`.bounds`; the two brute-force oracles
(weight enumeration and orbit enumeration) in :mod:`.codes` and
:mod:`.orbits`.
"""

from .bounds import BoundReport, BugTrap, Inapplicable, bound_report
from .codes import (
    CapExceeded,
    CodeError,
    CodeSpec,
    CyclicCode,
    WeightDistribution,
    build_code,
    make_spec,
    num_nonzero_weights,
    weight_distribution,
)
from .gf import FieldError, FieldTable, PrimePower, build_field
from .orbits import OrbitError, OrbitPartition, burnside_count, named_group, orbit_count
from .search import SearchConfig, SearchRecord, audit_spec, run_search, verify_record
from .zn import ZnError, cyclotomic_cosets

__all__ = [
    "BoundReport",
    "BugTrap",
    "Inapplicable",
    "bound_report",
    "CapExceeded",
    "CodeError",
    "CodeSpec",
    "CyclicCode",
    "WeightDistribution",
    "build_code",
    "make_spec",
    "num_nonzero_weights",
    "weight_distribution",
    "FieldError",
    "FieldTable",
    "PrimePower",
    "build_field",
    "OrbitError",
    "OrbitPartition",
    "burnside_count",
    "named_group",
    "orbit_count",
    "SearchConfig",
    "SearchRecord",
    "audit_spec",
    "run_search",
    "verify_record",
    "ZnError",
    "cyclotomic_cosets",
]

__version__ = "0.1.0"
