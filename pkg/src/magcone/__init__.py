"""Magnetic Schrodinger operator with a flux line on a flat product cone.

Exact spectrum, heat / Schrodinger / half-wave propagator kernels in
independent representations, Littlewood-Paley norms, and a certification
harness for the decay estimates they satisfy.
"""

from .errors import (
    ConfigError,
    DomainError,
    GammaOutOfRangeError,
    MagconeError,
    NonconvergenceError,
    QuadratureError,
    SingularTimeError,
    WindowTooSmallError,
)
from .geometry import (
    ConeConfig,
    ConePoint,
    FluxDistance,
    angular_difference,
    cone_distance,
    flux_distance,
    make_point,
)
from .specfun import (
    SeriesResult,
    bessel_i,
    bessel_j,
    kummer_m,
    laguerre,
    normalized_laguerre,
    pochhammer,
    tricomi_u,
)
from .spectrum import (
    ModeData,
    ModeIndex,
    ModeWindow,
    QuadratureSpec,
    SpectralField,
    eigenfunction,
    eigenvalue,
    eigenvalue_table,
    expand,
    field_on_grid,
    mode_data,
    random_field,
    spectral_apply,
    synthesize,
)
from .kernels import (
    KernelValue,
    TruncationSpec,
    halfwave_kernel_truncated,
    heat_kernel_closed,
    heat_kernel_series,
    reduced_kernel,
    schrodinger_kernel_closed,
    schrodinger_kernel_series,
    spectral_kernel,
)
from .lpbesov import DyadicCutoff, bernstein_ratio, besov_norm, make_cutoff, sobolev_norm
from .verify import REFERENCE_CONFIGS, SweepGrids, SweepReport, run_suite

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
