"""fermice: exact computer algebra for free-fermion evolution and six-vertex models."""

from .ring import (
    MultiPoly,
    NotDivisible,
    SeriesTruncation,
    VarId,
    coefficient_extract,
    exact_divide,
    poly_det,
    series_exp,
    series_expand,
    tvar,
    xvar,
    yvar,
    zvar,
)
from .fock import (
    FockState,
    FockVector,
    apply_J,
    apply_annihilate,
    apply_create,
    inner,
    state_from_partition,
    state_from_strict,
    vacuum,
)
from .evolution import (
    EvolutionSpec,
    StepStatistics,
    apply_exp_phi,
    chain_bracket,
    factorized_bracket,
    interleave_statistics,
    one_step_closed_minus,
    one_step_closed_plus,
    one_step_oracle_minus,
    one_step_oracle_plus,
    s_coeff,
)
from .symfun import complete_h, elementary_e, pieri_e, schur_jt, schur_tableaux
from .ice import (
    BendIceState,
    GTPattern,
    IceState,
    enumerate_nn_states,
    enumerate_states,
    ice_to_pattern,
    nn_row_factorization_check,
    partition_function,
    pattern_to_ice,
)

__version__ = "0.1.0"
