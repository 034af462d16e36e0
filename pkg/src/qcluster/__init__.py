"""Exact symbolic computation for quantum cluster superalgebras.

Public surface re-exported here: scalars (QScalar), the supertorus
(GradedShape, SkewForm, SuperPoly and its operations), extended quivers and
their mutation, compatibility checks, quantum super-seeds with mutation and
Laurent certification, and the two built-in worked configurations.
"""

from .coeff import QScalar
from .compat import CompatReport, check_compatible, e_matrix, f_matrix, mutate_lambda
from .errors import (
    ClusterError,
    DimensionMismatch,
    DivisionByZero,
    Incompatible,
    MalformedInput,
    MutationOnFrozen,
    NegativePowerOfPolynomialVariable,
    NotAllowed,
    NotDivisible,
    ShapeMismatch,
    ZeroDivisor,
)
from .laurent import (
    LaurentCertificate,
    adjacent_membership,
    d_direction,
    divisibility_check,
    laurent_certify,
    p_element,
)
from .quiver import (
    ExtQuiver,
    TwoPath,
    b_matrix,
    is_allowed_def,
    is_allowed_lemma,
    mutate_quiver,
    two_paths,
)
from .seed import (
    QuantumSeed,
    TraceStep,
    classical_exchange,
    double_mutation_check,
    exchange_element,
    frame_monomial,
    initial_seed,
    mutate_seed,
    mutate_sequence,
)
from .torus import (
    GradedShape,
    SkewForm,
    SuperPoly,
    exact_div_right,
    expand_in_direction,
    factor_ordered,
    mono_mul,
    poly_mul,
    poly_pow,
    reassemble,
    tau,
)

__version__ = "0.1.0"
