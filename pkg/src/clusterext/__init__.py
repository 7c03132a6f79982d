"""Cluster-functional statistics and extremogram estimation for weakly
dependent time series: seeded model generators, threshold normalization,
block empirical processes, the extremogram with exact closed forms for the
base-b AR(1) model, and a replicated Monte Carlo harness with confidence
bands."""

from .clusters import (
    ClusterFunctional,
    core,
    half_line,
    make_extremogram_functional,
    make_max_functional,
    make_sum_functional,
    norm_ball_complement,
)
from .empirical import BlockScheme, block_covariance, check_block_scheme, empirical_process, partition_blocks
from .extremogram import (
    ExtremogramConfig,
    asymptotic_error_vector,
    covariance_matrix_estimate,
    decompose_pair_counts,
    estimate_extremogram,
    pa_extremogram_ar1,
    theoretical_extremogram_ar1,
)
from .montecarlo import ExperimentSpec, coverage_check, normality_diagnostic, run_experiment
from .normalize import exceedance_rate, normalize_hard_threshold, normalize_pot
from .processes import (
    ModelSpec,
    TimeSeries,
    generate,
    generate_ar1_base_b,
    generate_causal_linear,
    generate_gaussian_ar1,
)

__version__ = "0.1.0"
