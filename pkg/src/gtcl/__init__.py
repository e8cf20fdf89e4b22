"""Exact Gelfand-Tsetlin and Chari-Loktev bases of irreducible sl(r+1)-modules."""

from .clbasis import ClMonomial, cl_monomial, cl_vector, divided_power_apply
from .gtrep import (
    CartanDiff,
    GtVector,
    MatrixUnit,
    act,
    act_cartan,
    act_lower,
    act_raise,
    commutator,
    highest_weight_vector,
    parse_operator,
)
from .patterns import (
    BoundingTuple,
    Pattern,
    PatternError,
    WeightTuple,
    apply_delta,
    dominates,
    enumerate_patterns,
    highest_pattern,
    is_valid_pattern,
    length,
    parse_pattern,
    shifted_entry,
    weight,
    weight_multiplicities,
    weyl_dimension,
)
from .transition import (
    TransitionMatrix,
    check_diagonal,
    check_triangular,
    determinant,
    diagonal_predicted,
    lemma_coefficient_oracle,
    transition_matrix,
)

__version__ = "0.1.0"
