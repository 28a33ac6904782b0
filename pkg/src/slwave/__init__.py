"""Numerical laboratory for lifespan scaling of 1D semilinear wave equations."""

from .exponents import (
    ExponentSource,
    LifespanLaw,
    ModelParams,
    Regime,
    RegimeTag,
    classify_regime,
    general_theory_exponent,
    highdim_reference_exponent,
    improvement_gap,
    lifespan_exponent,
    remark_identities,
)
from .blowup import (
    BlowupSequences,
    FCheckReport,
    ZhouReport,
    c41_constant,
    check_pointwise_seed,
    f_functional_checks,
    in_sigma,
    s_constant,
    s_constant_series,
    sequence_closed_form,
    sequences,
    upper_bound_T,
    z_function,
    z_root_on_ray,
    zhou_characteristic,
    zhou_x_star,
)
from .picard import (
    APRIORI_KINDS,
    IterationTrace,
    PicardDivergence,
    apriori_constant,
    consistency_wu,
    measured_E,
    picard_nonzero,
    picard_zero,
    zero_scheme_constant_N,
)
from .profiles import FAMILIES, InitialData, make_data
from .solver import (
    NO_BLOWUP,
    EvolveResult,
    LifespanMeasurement,
    default_threshold,
    evolve,
    measure_lifespan,
)
from .sweep import (
    FitError,
    FitResult,
    SweepConfig,
    expected_exponent,
    fit_powerlaw,
    run_sweep,
    synthetic_fit_check,
    write_fit_txt,
    write_plot_dat,
    write_sweep_csv,
)
from .wave_core import (
    Field,
    export_field_csv,
    support_cone_violation,
    Lattice,
    NormReport,
    field_norms,
    free_solution,
    free_solution_lattice,
    huygens_residual,
    make_lattice,
    norms,
    op_L,
    op_L_lattice,
    op_Lbar,
    op_Lbar_lattice,
    op_Lprime,
    op_Lprime_lattice,
)

__all__ = [name for name in dir() if not name.startswith("_")]
