"""Modes, medians, means and their analytic bounds for the generalized
hyperbolic, variance-gamma, McKay Type I and gamma distributions."""

__version__ = "0.1.0"

from ._backend import NAME as backend
from .bessel import (bessel_i, bessel_k, half_integer_k, log_bessel_i, log_bessel_k,
                     ratio_i, ratio_i_bounds, ratio_k, ratio_k_bounds)
from .distributions import (GHParams, GammaParams, McKayParams, VG2Params, VGParams,
                            convert_vg2_to_vg, convert_vg_to_vg2, from_kv, log_pdf,
                            mean, pdf, to_kv)
from .errors import (BesselRangeError, BracketError, ConvergenceError, DomainError,
                     QuadratureError)
from .intervals import BoundEntry, Interval
from .median import (MedianReport, asym_laplace_median, cdf, conjectured_median_bounds,
                     gamma_median_bounds, median)
from .mode import (ModeReport, gh_mean_bounds, gh_mode, mckay_mode, mean_mode_gap_bounds,
                   mode, mode_bounds, product_mean_mode_bounds, vg_mode)
