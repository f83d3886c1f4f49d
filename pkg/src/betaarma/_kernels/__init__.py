"""Numerical kernels with backend selection.

The compiled Cython extension is preferred; the pure-NumPy module is a
drop-in fallback so the package works without a C toolchain.  Set
``BETAARMA_BACKEND=python`` (or ``c``) to force a backend; forcing ``c``
raises if the extension is missing.
"""

import os

_requested = os.environ.get("BETAARMA_BACKEND", "").strip().lower()

if _requested in ("", "c", "compiled"):
    try:
        from . import _ckernels as _impl

        BACKEND = "c"
    except ImportError:
        if _requested:
            raise
        from . import _pykernels as _impl

        BACKEND = "python"
elif _requested in ("py", "python", "pure"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    raise ImportError(f"unknown BETAARMA_BACKEND value: {_requested!r}")

KALMAN_VAR_FLOOR = _impl.KALMAN_VAR_FLOOR

lgamma = _impl.lgamma
lgamma_arr = _impl.lgamma_arr
betainc = _impl.betainc
betainc_arr = _impl.betainc_arr
betaincinv = _impl.betaincinv
betaincinv_arr = _impl.betaincinv_arr
beta_logpdf = _impl.beta_logpdf
beta_logpdf_arr = _impl.beta_logpdf_arr
erfc = _impl.erfc
norm_cdf = _impl.norm_cdf
norm_cdf_arr = _impl.norm_cdf_arr
norm_ppf = _impl.norm_ppf
norm_ppf_arr = _impl.norm_ppf_arr
kalman_filter = _impl.kalman_filter
copula_loglik = _impl.copula_loglik

__all__ = [
    "BACKEND",
    "KALMAN_VAR_FLOOR",
    "lgamma",
    "lgamma_arr",
    "betainc",
    "betainc_arr",
    "betaincinv",
    "betaincinv_arr",
    "beta_logpdf",
    "beta_logpdf_arr",
    "erfc",
    "norm_cdf",
    "norm_cdf_arr",
    "norm_ppf",
    "norm_ppf_arr",
    "kalman_filter",
    "copula_loglik",
]
