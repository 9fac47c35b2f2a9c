"""Numerical Besov quasi-norms on a periodic dyadic grid."""

from .bands import (
    DyadicPartition,
    PeetreParams,
    band_decompose,
    besov_norm_fourier,
    build_partition,
    peetre_maximal,
)
from .errors import BesovError, FormatError, GridError, ParameterError, PlacementError
from .grid import Grid, SampledFunction, difference, forward_spectrum, inverse_spectrum, lp_norm, product
from .localization import (
    Budget,
    CoeffSeq,
    LocalizationParams,
    PartitionOfUnity,
    besov_norm_localized,
    besov_norm_unif,
    build_pou,
    m_norm_sup,
    m_objective,
)
from .params import NormBreakdown, SmoothnessParams
from .smoothness import besov_norm_difference, modulus, modulus_profile
from .wavelet import WaveletCoeffs, WaveletSystem, analyze, besov_norm_wavelet, synthesize

__version__ = "0.1.0"
