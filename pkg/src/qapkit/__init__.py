"""Quotient-algebra partitions of su(2^p) and their Cartan decompositions."""

from .spinor import SpinorIndex, bi_add, commutes, epsilon_parity, matrix_of
from .bisubalgebra import (
    BiSubalgebra,
    commutant,
    cosets_of,
    enumerate_maximal,
    extend_to_cartan,
    intrinsic_cartan,
    span_of,
    sqcap,
    stabilizer_of,
)
from .partition import (
    check_duality,
    commutator_partition,
    coset_partition,
    refine_by_coset_rule,
)
from .qap import (
    CartanFrame,
    CoQuotientAlgebra,
    QAPartition,
    build_coquotient,
    build_qap,
    detach_coquotient,
    intrinsic_qap,
    merge_coquotient,
    tri_add,
)

__all__ = [
    "SpinorIndex",
    "bi_add",
    "commutes",
    "epsilon_parity",
    "matrix_of",
    "BiSubalgebra",
    "span_of",
    "sqcap",
    "enumerate_maximal",
    "commutant",
    "stabilizer_of",
    "cosets_of",
    "extend_to_cartan",
    "intrinsic_cartan",
    "commutator_partition",
    "coset_partition",
    "check_duality",
    "refine_by_coset_rule",
    "CartanFrame",
    "QAPartition",
    "CoQuotientAlgebra",
    "build_qap",
    "intrinsic_qap",
    "build_coquotient",
    "merge_coquotient",
    "detach_coquotient",
    "tri_add",
]
