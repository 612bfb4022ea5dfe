"""Winding numbers of prime geodesics on the modular orbifold.

Exact Rademacher/Dedekind symbols on SL(2,Z) by several independent routes,
enumeration of all oriented primitive closed geodesics up to a length bound,
numerical winding indices of the discriminant form, and the counting
statistics of the winding numbers.
"""

from .errors import (
    CapExceeded,
    DomainError,
    InsufficientData,
    ModwindError,
    NonIntegralPhi,
    NonPositiveEntry,
    NonPositiveImaginary,
    NonPositiveModulus,
    NotHyperbolic,
    NotPrimitive,
    NumericalAmbiguity,
    OddLength,
    Overflow,
    QuadratureFailure,
    ResidualTooLarge,
    StepTooCoarse,
)
from .geodesics import (
    CyclicWord,
    EnumerationConfig,
    GeodesicRecord,
    brute_force_classes,
    canonical_form,
    enumerate_by_trace,
    enumerate_geodesics,
    is_primitive,
    matrix_to_word,
    trace_cap_for_length,
    word_to_matrix,
)
from .matrices import (
    IDENTITY,
    Mat2,
    S,
    T,
    dedekind_sum,
    fixed_points,
    geodesic_length,
    omega,
    sign0,
)
from .rademacher import (
    MultiplierValue,
    SymbolValues,
    chi_r,
    phi_closed,
    phi_word,
    psi,
    psi_cf,
    psi_cocycle,
    s_symbol,
    symbol_values,
    ts_factors,
)
from .stats import (
    DistributionReport,
    TwistedSumReport,
    WindingHistogram,
    cauchy_compare,
    density_table,
    equidistribution,
    li,
    predicted_pi_n,
    limiting_density,
    twisted_sum,
    winding_histogram,
)
from .verify import run_all
from .winding import (
    LogDeltaValue,
    WindingResult,
    axis_point,
    delta_eval,
    e2_completed,
    e2_period,
    reduce_to_fundamental,
    winding_index,
)

__version__ = "0.1.0"
