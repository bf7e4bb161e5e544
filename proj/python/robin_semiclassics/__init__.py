"""Robin-Laplacian spectra, Riesz means and two-term semiclassical asymptotics."""

from ._core import (
    InvalidArgument,
    NumericalError,
    __version__,
    c_d,
    count_below,
    i_b,
    i_b_integral,
    interval_spectrum,
    l1,
    l2,
    psi,
    psi_bound,
    riesz_mean,
    sweep,
    unit_ball_volume,
)

__all__ = [
    "InvalidArgument",
    "NumericalError",
    "__version__",
    "c_d",
    "count_below",
    "i_b",
    "i_b_integral",
    "interval_spectrum",
    "l1",
    "l2",
    "psi",
    "psi_bound",
    "riesz_mean",
    "sweep",
    "unit_ball_volume",
]
