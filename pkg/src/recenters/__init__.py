"""Exact verification of centrality in generalized reflection-equation algebras."""

__version__ = "0.1.0"

from ._kernels import BACKEND_NAME
from .baxterize import RATIONAL, TRIGONOMETRIC, CurrentR, PoleError
from .birank import BiRank, compute_birank
from .rs_algebra import (
    AlgebraSpec,
    Session,
    centrality_condition,
    check_commutator_identity,
    check_first_central,
    check_higher_central,
    check_push_through,
    critical_charge,
    power_sum,
    quantum_power,
)
from .scalars import ParamPoint, PointRegistry, Scalar, format_scalar, to_scalar
from .symmetry import Braiding, check_suite, from_name, r_trace
from .tensor import TensorOp

__all__ = [
    "__version__",
    "BACKEND_NAME",
    "RATIONAL",
    "TRIGONOMETRIC",
    "CurrentR",
    "PoleError",
    "BiRank",
    "compute_birank",
    "AlgebraSpec",
    "Session",
    "centrality_condition",
    "check_commutator_identity",
    "check_first_central",
    "check_higher_central",
    "check_push_through",
    "critical_charge",
    "power_sum",
    "quantum_power",
    "ParamPoint",
    "PointRegistry",
    "Scalar",
    "format_scalar",
    "to_scalar",
    "Braiding",
    "check_suite",
    "from_name",
    "r_trace",
    "TensorOp",
]
