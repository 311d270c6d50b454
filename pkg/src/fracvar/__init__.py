"""p-th variation of fractal functions f(t) = sum_m alpha**m phi(b**m t)."""

__version__ = "0.1.0"

from .analysis import (  # noqa: E402
    classify,
    convergence_report,
    hurst_sweep,
    signed_variation_limit,
    variation_slope,
)
from .base_functions import (  # noqa: E402
    Degenerate,
    PiecewiseLinear,
    Sine,
    SkewedTent,
    Tent,
    check_admissible,
    check_sufficient_condition,
    eval_phi,
)
from .fractal import FractalSpec, eval_f, eval_f_badic, hurst, q_exponent  # noqa: E402
from .increments import (  # noqa: E402
    exact_partial_sum_distribution,
    iid_params,
    increment_law_value,
    markov_params,
    mc_estimate,
)
from .moments import abs_moment_truncated, moments_recursive, odd_moment_sign  # noqa: E402
from .variation import partition_sum, signed_partition_sum, variation_series  # noqa: E402
