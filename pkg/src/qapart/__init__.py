"""Quotient-algebra partitions of su(2^p) over bit-string spinors."""

from .pauli_core import SignedSpinor, Spinor
from .partition import QAPartition, SubspaceLabel, build_partition
from .subalgebra import (
    BiSubalgebra,
    CartanSubalgebra,
    SpinorSet,
    canonical_generator,
    intrinsic_cartan,
    intrinsic_generator,
)

__all__ = [
    "BiSubalgebra",
    "CartanSubalgebra",
    "QAPartition",
    "SignedSpinor",
    "Spinor",
    "SpinorSet",
    "SubspaceLabel",
    "build_partition",
    "canonical_generator",
    "intrinsic_cartan",
    "intrinsic_generator",
]
