"""Dimension-free matrix algebra over exact rationals.

Semi-tensor products, Γ-equivalence with minimal representatives, quotient
classes and the Lie structure (bracket, trace, adjoint, Killing form) on
square classes.
"""

from dfmat.equivalence import (
    LEFT_IDENTITY,
    LEFT_MEAN,
    RIGHT_IDENTITY,
    RIGHT_MEAN,
    EquivalenceKind,
    LatticePair,
    are_equivalent,
    hasse_dot,
    lattice_bounds,
    minimal_representative,
    precedes,
    slice_lattice_bounds,
)
from dfmat.errors import DfmError
from dfmat.lie import (
    SL,
    SubalgebraSpec,
    ad_matrix,
    bracket,
    class_ad,
    class_trace,
    df_trace,
    killing_form,
    stabilizer,
    subalgebra_contains,
)
from dfmat.matrix_core import (
    EXACT,
    FLOAT,
    Matrix,
    MuRatio,
    canonical_column,
    identity_cofactor,
    inverse,
    kron,
    mat_add,
    mat_mul,
    mu_of,
    scalar_mul,
    swap_matrix,
    trace,
    transpose,
)
from dfmat.multipliers import (
    BottomRight,
    Identity,
    MeanOnes,
    MultiplierFamily,
    TopLeft,
    gamma,
    spectrum_check,
    verify_multiplier_axioms,
)
from dfmat.quotient import (
    MatrixClass,
    SeriesSpec,
    class_add,
    class_analytic,
    class_exp,
    class_inverse,
    class_mul,
    class_of,
    class_scale,
    class_sub,
    class_transpose,
    classes_congruent,
    classes_equivalent,
    classes_similar,
)
from dfmat.stp import StpVariant, stp, stp_add, stp_mul, stp_sub

__version__ = "0.1.0"
