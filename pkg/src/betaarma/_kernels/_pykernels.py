"""Pure NumPy implementation of the numerical kernels.

This module is the reference backend.  ``_ckernels.pyx`` mirrors every public
function here with identical semantics; ``betaarma._kernels`` picks whichever
is importable.  All functions operate on float64 and speak the (a, b) shape
parametrization of the beta law; translating mean/precision to shapes is the
caller's job.

Conventions shared by both backends:

* scalar special functions return ``nan`` instead of raising when an internal
  iteration fails; wrappers decide whether that is an error,
* ``kalman_filter`` raises :class:`FloatingPointError` when a predictive
  variance collapses below ``KALMAN_VAR_FLOOR``,
* ``copula_loglik`` never raises: any numerical trouble yields ``nan``.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

# Iteration limits / tolerances for the incomplete beta machinery.
_CF_EPS = 1e-15
_CF_MAXIT = 500
_CF_TINY = 1e-300
_PPF_MAXIT = 200
_PPF_FTOL = 5e-13

KALMAN_VAR_FLOOR = 1e-12

_LN_SQRT_2PI = 0.9189385332046727417803297364056176
_SQRT_2PI = 2.5066282746310005024157652848110453
_SQRT_2 = 1.4142135623730950488016887242096981
_INV_SQRT_PI = 0.5641895835477562869480794515607726

# Lanczos approximation, g = 7, 9 terms.
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# ---------------------------------------------------------------------------
# log-gamma


def lgamma(x: float) -> float:
    """Natural log of |Gamma(x)| for x > 0 (Lanczos, g=7)."""
    if x != x or x <= 0.0:
        return np.nan
    if x < 0.5:
        # reflection keeps the series argument >= 0.5
        return np.log(np.pi / np.sin(np.pi * x)) - lgamma(1.0 - x)
    z = x - 1.0
    s = _LANCZOS[0]
    for i in range(1, 9):
        s += _LANCZOS[i] / (z + i)
    t = z + 7.5
    return _LN_SQRT_2PI + (z + 0.5) * np.log(t) - t + np.log(s)


def lgamma_arr(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    refl = x < 0.5
    z = np.where(refl, 1.0 - x, x) - 1.0
    s = np.full(z.shape, _LANCZOS[0])
    for i in range(1, 9):
        s += _LANCZOS[i] / (z + i)
    t = z + 7.5
    out = _LN_SQRT_2PI + (z + 0.5) * np.log(t) - t + np.log(s)
    if np.any(refl):
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(refl, np.log(np.pi / np.sin(np.pi * x)) - out, out)
    return out


# ---------------------------------------------------------------------------
# regularized incomplete beta


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for betainc via the modified Lentz algorithm."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    return np.nan


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b) for a, b > 0."""
    if not (a > 0.0 and b > 0.0) or x != x:
        return np.nan
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    lbt = lgamma(a + b) - lgamma(a) - lgamma(b) + a * np.log(x) + b * np.log1p(-x)
    bt = np.exp(lbt)
    # evaluate the continued fraction on the small side of the mean
    if x < a / (a + b):
        return bt * _betacf(a, b, x) / a
    return 1.0 - bt * _betacf(b, a, 1.0 - x) / b


def _betacf_arr(a: np.ndarray, b: np.ndarray, x: np.ndarray) -> np.ndarray:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    np.copyto(d, _CF_TINY, where=np.abs(d) < _CF_TINY)
    d = 1.0 / d
    h = d.copy()
    done = np.zeros(x.shape, dtype=bool)
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2.0 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        np.copyto(d, _CF_TINY, where=np.abs(d) < _CF_TINY)
        c = 1.0 + aa / c
        np.copyto(c, _CF_TINY, where=np.abs(c) < _CF_TINY)
        d = 1.0 / d
        h = np.where(done, h, h * d * c)
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        np.copyto(d, _CF_TINY, where=np.abs(d) < _CF_TINY)
        c = 1.0 + aa / c
        np.copyto(c, _CF_TINY, where=np.abs(c) < _CF_TINY)
        d = 1.0 / d
        delta = d * c
        h = np.where(done, h, h * delta)
        done |= np.abs(delta - 1.0) < _CF_EPS
        if done.all():
            return h
    h = np.where(done, h, np.nan)
    return h


def betainc_arr(a: np.ndarray, b: np.ndarray, x: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    out = np.empty(np.broadcast(a, b, x).shape)
    a, b, x = np.broadcast_arrays(a, b, x)
    swap = x >= a / (a + b)
    aa = np.where(swap, b, a)
    bb = np.where(swap, a, b)
    xx = np.where(swap, 1.0 - x, x)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        lbt = (
            lgamma_arr(aa + bb)
            - lgamma_arr(aa)
            - lgamma_arr(bb)
            + aa * np.log(xx)
            + bb * np.log1p(-xx)
        )
        small = np.exp(lbt) * _betacf_arr(aa, bb, xx) / aa
    out = np.where(swap, 1.0 - small, small)
    out = np.where(x <= 0.0, 0.0, out)
    out = np.where(x >= 1.0, 1.0, out)
    bad = ~((a > 0.0) & (b > 0.0)) | np.isnan(x)
    if bad.any():
        out = np.where(bad, np.nan, out)
    return out


def beta_logpdf(a: float, b: float, y: float) -> float:
    """Log density of Beta(a, b) at y in (0, 1)."""
    if not (a > 0.0 and b > 0.0 and 0.0 < y < 1.0):
        return np.nan
    return (
        lgamma(a + b)
        - lgamma(a)
        - lgamma(b)
        + (a - 1.0) * np.log(y)
        + (b - 1.0) * np.log1p(-y)
    )


def beta_logpdf_arr(a: np.ndarray, b: np.ndarray, y: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (
            lgamma_arr(a + b)
            - lgamma_arr(a)
            - lgamma_arr(b)
            + (a - 1.0) * np.log(y)
            + (b - 1.0) * np.log1p(-y)
        )
    bad = ~((a > 0.0) & (b > 0.0) & (y > 0.0) & (y < 1.0))
    if bad.any():
        out = np.where(bad, np.nan, out)
    return out


# ---------------------------------------------------------------------------
# inverse incomplete beta


def _betaincinv_guess(a: float, b: float, p: float) -> float:
    """Initial point for the Newton iteration (Abramowitz & Stegun 26.5.22)."""
    if a >= 1.0 and b >= 1.0:
        pp = p if p < 0.5 else 1.0 - p
        t = np.sqrt(-2.0 * np.log(pp))
        x = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t
        if p < 0.5:
            x = -x
        al = (x * x - 3.0) / 6.0
        h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0))
        w = (x * np.sqrt(al + h) / h) - (1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0)) * (
            al + 5.0 / 6.0 - 2.0 / (3.0 * h)
        )
        return a / (a + b * np.exp(2.0 * w))
    lna = np.log(a / (a + b))
    lnb = np.log(b / (a + b))
    t = np.exp(a * lna) / a
    u = np.exp(b * lnb) / b
    w = t + u
    if p < t / w:
        return (a * w * p) ** (1.0 / a)
    return 1.0 - (b * w * (1.0 - p)) ** (1.0 / b)


def betaincinv(a: float, b: float, p: float) -> float:
    """Inverse of ``betainc`` in its third argument.

    Safeguarded Newton iteration: a bisection bracket is maintained so the
    iterate can never escape (0, 1); stalls return ``nan``.
    """
    if not (a > 0.0 and b > 0.0 and 0.0 < p < 1.0):
        if p == 0.0:
            return 0.0
        if p == 1.0:
            return 1.0
        return np.nan
    lo, hi = _CF_TINY, 1.0 - 1e-16
    x = _betaincinv_guess(a, b, p)
    if not (lo < x < hi):
        x = 0.5 * (lo + hi)
    lbeta = lgamma(a + b) - lgamma(a) - lgamma(b)
    for _ in range(_PPF_MAXIT):
        f = betainc(a, b, x) - p
        if f != f:
            return np.nan
        if abs(f) <= _PPF_FTOL:
            return x
        if f > 0.0:
            hi = x
        else:
            lo = x
        logpdf = lbeta + (a - 1.0) * np.log(x) + (b - 1.0) * np.log1p(-x)
        step_ok = False
        if logpdf > -700.0:
            xn = x - f / np.exp(logpdf)
            if lo < xn < hi:
                x = xn
                step_ok = True
        if not step_ok:
            x = 0.5 * (lo + hi)
        if hi - lo <= 1e-15 * max(abs(x), 1e-30):
            return x
    return np.nan


def betaincinv_arr(a: np.ndarray, b: np.ndarray, p: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    a, b, p = np.broadcast_arrays(a, b, p)
    shape = p.shape
    a, b, p = a.ravel(), b.ravel(), p.ravel()
    ok = (a > 0.0) & (b > 0.0) & (p > 0.0) & (p < 1.0)

    lo = np.full(p.shape, _CF_TINY)
    hi = np.full(p.shape, 1.0 - 1e-16)
    x = np.empty_like(p)
    for i in range(p.size):  # the A&S guess does not vectorize cleanly
        x[i] = _betaincinv_guess(a[i], b[i], p[i]) if ok[i] else 0.5
    np.copyto(x, 0.5, where=~((lo < x) & (x < hi)))

    lbeta = lgamma_arr(a + b) - lgamma_arr(a) - lgamma_arr(b)
    done = ~ok
    for _ in range(_PPF_MAXIT):
        f = betainc_arr(a, b, x) - p
        stalled = np.isnan(f) & ~done
        done |= stalled
        conv = (np.abs(f) <= _PPF_FTOL) & ~done
        done |= conv
        if done.all():
            break
        hi = np.where(~done & (f > 0.0), x, hi)
        lo = np.where(~done & (f <= 0.0), x, lo)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            logpdf = lbeta + (a - 1.0) * np.log(x) + (b - 1.0) * np.log1p(-x)
            xn = x - f / np.exp(logpdf)
        good = (logpdf > -700.0) & (lo < xn) & (xn < hi) & np.isfinite(xn)
        x = np.where(done, x, np.where(good, xn, 0.5 * (lo + hi)))
        width_done = (hi - lo) <= 1e-15 * np.maximum(np.abs(x), 1e-30)
        done |= width_done
        if done.all():
            break
    x = np.where(ok & done, x, np.nan)
    x = np.where(p == 0.0, 0.0, x)
    x = np.where(p == 1.0, 1.0, x)
    return x.reshape(shape)


# ---------------------------------------------------------------------------
# standard normal distribution (Cody's erf, Acklam's inverse)

_CODY_A = (
    3.16112374387056560,
    1.13864154151050156e2,
    3.77485237685302021e2,
    3.20937758913846947e3,
    1.85777706184603153e-1,
)
_CODY_B = (
    2.36012909523441209e1,
    2.44024637934444173e2,
    1.28261652607737228e3,
    2.84423683343917062e3,
)
_CODY_C = (
    5.64188496988670089e-1,
    8.88314979438837594,
    6.61191906371416295e1,
    2.98635138197400131e2,
    8.81952221241769090e2,
    1.71204761263407058e3,
    2.05107837782607147e3,
    1.23033935479799725e3,
    2.15311535474403846e-8,
)
_CODY_D = (
    1.57449261107098347e1,
    1.17693950891312499e2,
    5.37181101862009858e2,
    1.62138957456669019e3,
    3.29079923573345963e3,
    4.36261909014324716e3,
    3.43936767414372164e3,
    1.23033935480374942e3,
)
_CODY_P = (
    3.05326634961232344e-1,
    3.60344899949804439e-1,
    1.25781726111229246e-1,
    1.60837851487422766e-2,
    6.58749161529837803e-4,
    1.63153871373020978e-2,
)
_CODY_Q = (
    2.56852019228982242,
    1.87295284992346047,
    5.27905102951428412e-1,
    6.05183413124413191e-2,
    2.33520497626869185e-3,
)


def _erfc_positive(y: float) -> float:
    """erfc(y) for y >= 0.46875 (Cody's rational approximations)."""
    if y > 26.6:
        return 0.0
    if y <= 4.0:
        xnum = _CODY_C[8] * y
        xden = y
        for i in range(7):
            xnum = (xnum + _CODY_C[i]) * y
            xden = (xden + _CODY_D[i]) * y
        result = (xnum + _CODY_C[7]) / (xden + _CODY_D[7])
    else:
        z = 1.0 / (y * y)
        xnum = _CODY_P[5] * z
        xden = z
        for i in range(4):
            xnum = (xnum + _CODY_P[i]) * z
            xden = (xden + _CODY_Q[i]) * z
        result = z * (xnum + _CODY_P[4]) / (xden + _CODY_Q[4])
        result = (_INV_SQRT_PI - result) / y
    # split exp(-y^2) for accuracy, per Cody
    ysq = np.floor(y * 16.0) / 16.0
    dely = (y - ysq) * (y + ysq)
    return np.exp(-ysq * ysq) * np.exp(-dely) * result


def erfc(x: float) -> float:
    ax = abs(x)
    if ax < 0.46875:
        z = ax * ax
        xnum = _CODY_A[4] * z
        xden = z
        for i in range(3):
            xnum = (xnum + _CODY_A[i]) * z
            xden = (xden + _CODY_B[i]) * z
        return 1.0 - x * (xnum + _CODY_A[3]) / (xden + _CODY_B[3])
    r = _erfc_positive(ax)
    return 2.0 - r if x < 0.0 else r


def norm_cdf(x: float) -> float:
    """Standard normal CDF."""
    return 0.5 * erfc(-x / _SQRT_2)


def norm_cdf_arr(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    y = np.abs(x) / _SQRT_2
    out = np.empty_like(y)

    central = y < 0.46875
    z = np.where(central, y * y, 0.0)
    xnum = _CODY_A[4] * z
    xden = z.copy()
    for i in range(3):
        xnum = (xnum + _CODY_A[i]) * z
        xden = (xden + _CODY_B[i]) * z
    erf_c = y * (xnum + _CODY_A[3]) / (xden + _CODY_B[3])

    mid = (~central) & (y <= 4.0)
    ym = np.where(mid, y, 1.0)
    xnum = _CODY_C[8] * ym
    xden = ym.copy()
    for i in range(7):
        xnum = (xnum + _CODY_C[i]) * ym
        xden = (xden + _CODY_D[i]) * ym
    res_mid = (xnum + _CODY_C[7]) / (xden + _CODY_D[7])

    far = y > 4.0
    yf = np.where(far, y, 5.0)
    z = 1.0 / (yf * yf)
    xnum = _CODY_P[5] * z
    xden = z.copy()
    for i in range(4):
        xnum = (xnum + _CODY_P[i]) * z
        xden = (xden + _CODY_Q[i]) * z
    res_far = z * (xnum + _CODY_P[4]) / (xden + _CODY_Q[4])
    res_far = (_INV_SQRT_PI - res_far) / yf

    res = np.where(far, res_far, res_mid)
    yy = np.where(central, 1.0, y)
    ysq = np.floor(yy * 16.0) / 16.0
    dely = (yy - ysq) * (yy + ysq)
    erfc_tail = np.exp(-ysq * ysq) * np.exp(-dely) * res
    erfc_tail = np.where(y > 26.6, 0.0, erfc_tail)

    erfc_y = np.where(central, 1.0 - erf_c, erfc_tail)
    # cdf(x) = erfc(|x|/sqrt2)/2 for x<0, 1 - erfc(|x|/sqrt2)/2 for x>=0
    out = np.where(x < 0.0, 0.5 * erfc_y, 1.0 - 0.5 * erfc_y)
    return out


_ACKLAM_A = (
    -3.969683028665376e1,
    2.209460984245205e2,
    -2.759285104469687e2,
    1.383577518672690e2,
    -3.066479806614716e1,
    2.506628277459239,
)
_ACKLAM_B = (
    -5.447609879822406e1,
    1.615858368580409e2,
    -1.556989798598866e2,
    6.680131188771972e1,
    -1.328068155288572e1,
)
_ACKLAM_C = (
    -7.784894002430293e-3,
    -3.223964580411365e-1,
    -2.400758277161838,
    -2.549732539343734,
    4.374664141464968,
    2.938163982698783,
)
_ACKLAM_D = (
    7.784695709041462e-3,
    3.224671290700398e-1,
    2.445134137142996,
    3.754408661907416,
)
_ACKLAM_PLOW = 0.02425


def _norm_ppf_raw(p: float) -> float:
    if p < _ACKLAM_PLOW:
        q = np.sqrt(-2.0 * np.log(p))
        return (
            ((((_ACKLAM_C[0] * q + _ACKLAM_C[1]) * q + _ACKLAM_C[2]) * q + _ACKLAM_C[3]) * q + _ACKLAM_C[4]) * q
            + _ACKLAM_C[5]
        ) / ((((_ACKLAM_D[0] * q + _ACKLAM_D[1]) * q + _ACKLAM_D[2]) * q + _ACKLAM_D[3]) * q + 1.0)
    if p > 1.0 - _ACKLAM_PLOW:
        q = np.sqrt(-2.0 * np.log1p(-p))
        return -(
            ((((_ACKLAM_C[0] * q + _ACKLAM_C[1]) * q + _ACKLAM_C[2]) * q + _ACKLAM_C[3]) * q + _ACKLAM_C[4]) * q
            + _ACKLAM_C[5]
        ) / ((((_ACKLAM_D[0] * q + _ACKLAM_D[1]) * q + _ACKLAM_D[2]) * q + _ACKLAM_D[3]) * q + 1.0)
    q = p - 0.5
    r = q * q
    return (
        (((((_ACKLAM_A[0] * r + _ACKLAM_A[1]) * r + _ACKLAM_A[2]) * r + _ACKLAM_A[3]) * r + _ACKLAM_A[4]) * r + _ACKLAM_A[5])
        * q
        / (((((_ACKLAM_B[0] * r + _ACKLAM_B[1]) * r + _ACKLAM_B[2]) * r + _ACKLAM_B[3]) * r + _ACKLAM_B[4]) * r + 1.0)
    )


def norm_ppf(p: float) -> float:
    """Standard normal quantile: rational approximation plus one Halley step."""
    if not 0.0 < p < 1.0:
        return np.nan
    x = _norm_ppf_raw(p)
    if abs(x) < 8.0:  # exp(x^2/2) overflows long before x = 38
        e = norm_cdf(x) - p
        u = e * _SQRT_2PI * np.exp(0.5 * x * x)
        x -= u / (1.0 + 0.5 * x * u)
    return x


def norm_ppf_arr(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    ok = (p > 0.0) & (p < 1.0)
    pc = np.where(ok, p, 0.5)

    low = pc < _ACKLAM_PLOW
    high = pc > 1.0 - _ACKLAM_PLOW
    with np.errstate(divide="ignore", invalid="ignore"):
        qt = np.where(low, pc, np.where(high, 1.0 - pc, 0.5))
        q = np.sqrt(-2.0 * np.log(qt))
    tail = (
        ((((_ACKLAM_C[0] * q + _ACKLAM_C[1]) * q + _ACKLAM_C[2]) * q + _ACKLAM_C[3]) * q + _ACKLAM_C[4]) * q
        + _ACKLAM_C[5]
    ) / ((((_ACKLAM_D[0] * q + _ACKLAM_D[1]) * q + _ACKLAM_D[2]) * q + _ACKLAM_D[3]) * q + 1.0)

    qc = pc - 0.5
    r = qc * qc
    central = (
        (((((_ACKLAM_A[0] * r + _ACKLAM_A[1]) * r + _ACKLAM_A[2]) * r + _ACKLAM_A[3]) * r + _ACKLAM_A[4]) * r + _ACKLAM_A[5])
        * qc
        / (((((_ACKLAM_B[0] * r + _ACKLAM_B[1]) * r + _ACKLAM_B[2]) * r + _ACKLAM_B[3]) * r + _ACKLAM_B[4]) * r + 1.0)
    )
    x = np.where(low, tail, np.where(high, -tail, central))

    refine = np.abs(x) < 8.0
    e = norm_cdf_arr(x) - pc
    u = np.where(refine, e * _SQRT_2PI * np.exp(0.5 * x * x), 0.0)
    x = x - np.where(refine, u / (1.0 + 0.5 * x * u), 0.0)
    return np.where(ok, x, np.nan)


# ---------------------------------------------------------------------------
# Kalman recursions for the zero-mean state space
#   alpha_{t+1} = T alpha_t + R eta_{t+1},   eps_t = alpha_t[0]


def kalman_filter(
    T: np.ndarray,
    RQR: np.ndarray,
    P0: np.ndarray,
    eps: np.ndarray,
    seg_starts: np.ndarray,
):
    """One-step predictive moments of eps_t given its past.

    ``seg_starts[t]`` nonzero resets the state to the stationary law before
    processing t (used for gapped series).  Returns ``(m, s, a, P)`` with the
    final one-step-ahead state (a, P) for forecasting past the last point.
    """
    T = np.asarray(T, dtype=np.float64)
    RQR = np.asarray(RQR, dtype=np.float64)
    P0 = np.asarray(P0, dtype=np.float64)
    eps = np.asarray(eps, dtype=np.float64)
    n = eps.shape[0]
    r = T.shape[0]
    m = np.empty(n)
    s = np.empty(n)
    a = np.zeros(r)
    P = P0.copy()
    for t in range(n):
        if seg_starts[t]:
            a = np.zeros(r)
            P = P0.copy()
        s2 = P[0, 0]
        if not s2 >= KALMAN_VAR_FLOOR:
            raise FloatingPointError(
                f"predictive variance {s2:.3e} below {KALMAN_VAR_FLOOR:g} at t={t}"
            )
        m[t] = a[0]
        s[t] = np.sqrt(s2)
        v = eps[t] - a[0]
        TP = T @ P
        K = TP[:, 0] / s2
        a = T @ a + K * v
        P = TP @ T.T - np.outer(K, TP[0, :]) + RQR
        P = 0.5 * (P + P.T)
    return m, s, a, P


def copula_loglik(
    y: np.ndarray,
    a_shape: np.ndarray,
    b_shape: np.ndarray,
    T: np.ndarray,
    RQR: np.ndarray,
    P0: np.ndarray,
    seg_starts: np.ndarray,
) -> float:
    """Fused Gaussian-copula beta log-likelihood; nan on numerical trouble."""
    lpdf = beta_logpdf_arr(a_shape, b_shape, y)
    if not np.all(np.isfinite(lpdf)):
        return np.nan
    u = betainc_arr(a_shape, b_shape, y)
    if not np.all((u > 0.0) & (u < 1.0)):
        return np.nan
    eps = norm_ppf_arr(u)
    if not np.all(np.isfinite(eps)):
        return np.nan
    try:
        m, s, _, _ = kalman_filter(T, RQR, P0, eps, seg_starts)
    except FloatingPointError:
        return np.nan
    z = (eps - m) / s
    calib = -0.5 * z * z - np.log(s) + 0.5 * eps * eps
    total = float(np.sum(lpdf) + np.sum(calib))
    return total if np.isfinite(total) else np.nan
