"""Autocorrelation and diffraction of weighted Dirac combs on Euclidean lattices.

Core objects: :class:`~difflat.lattice.Lattice` (with dual, enumeration and
fundamental-domain reduction), :class:`~difflat.comb.WeightedComb` (tabulated
bounded complex weights inside a cutoff ball), autocorrelation tables and
their smooth regularization, and dual-space intensity/Bragg estimators.

Hot kernels run on a compiled extension when available, with a numpy
fallback selected at import (``difflat.backend_name()`` reports which).
"""

from ._backend import BACKEND as _BACKEND
from .autocorr import (
    AutocorrTable,
    BumpConfig,
    autocorr_coefficient,
    autocorrelation,
    bump_eval,
    bump_pair_convolution,
    convergence_scan,
    gram_matrix,
    make_bump_config,
    regularized_autocorr,
    variant_gap,
)
from .comb import (
    WeightRule,
    WeightedComb,
    complement,
    empirical_density,
    generate,
    load_comb,
    make_comb,
    save_comb,
)
from .diffraction import (
    BraggTable,
    DiffractionGrid,
    bragg_amplitude,
    bragg_table,
    complement_autocorr_check,
    complement_bragg_check,
    diffraction_grid,
    dual_coords,
    dual_point,
    exp_sum,
    exp_sums,
    homometry_check,
    intensities,
    intensity,
    profiled_intensity,
    windowed_bragg_amplitudes,
)
from .errors import (
    BallTooLarge,
    ConfigError,
    DensityNotHalf,
    DifflatError,
    EpsilonTooLarge,
    MalformedCombFile,
    MalformedLatticeFile,
    NotADualLatticePoint,
    NotAnIndicatorComb,
    RuleDimensionMismatch,
    SingularBasis,
    ZRangeExceedsData,
)
from .lattice import (
    FundamentalDomainSpec,
    Lattice,
    ball_volume,
    closest_lattice_vector,
    covering_radius_estimate,
    density,
    dual,
    enumerate_ball,
    fundamental_domain_grid,
    load_lattice,
    make_lattice,
    reduce_to_fundamental_domain,
    save_lattice,
    shell_count_check,
)

__version__ = "0.1.0"


def backend_name() -> str:
    """Which kernel backend this process selected at import."""
    return _BACKEND
