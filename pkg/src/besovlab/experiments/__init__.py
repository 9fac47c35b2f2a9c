from .fitting import ScalingFit, fit_scaling_exponent
from .generators import (
    ExtremalSpec,
    bump_train,
    lacunary_wavelet_series,
    multiplier_pair,
    smooth_bump,
    standard_family,
)
from .operators import algebra_ratio_suite, equivalence_suite, multiplier_norm_estimate
from .suites import SUITES, SuiteResult, run_suite
