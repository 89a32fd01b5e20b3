"""Univariate composite normality tests: Anderson-Darling and Shapiro-Wilk.

Both are location-scale invariant tests of the composite hypothesis that a
sample is Gaussian with unspecified mean and variance, and both return a
statistic together with an approximate p-value:

* Anderson-Darling: the classic A^2 statistic on values standardized by the
  sample mean and standard deviation (divisor k-1), with Stephens'
  small-sample correction and the D'Agostino-Stephens piecewise-exponential
  p-value for the estimated-parameters case (D'Agostino & Stephens,
  "Goodness-of-Fit Techniques", 1986, Table 4.9).
* Shapiro-Wilk: Royston's AS R94 algorithm (Royston 1995, Applied
  Statistics 44), with the exact p-value at k=3 and Royston's normalizing
  transforms elsewhere.

Weight vectors and p-value constants depend only on the sample size, so
they are cached; repeated calls at a fixed size cost one sort plus a few
dot products.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import log_ndtr, ndtri

from .errors import ConfigError, ConstantSampleError, SampleSizeError

__all__ = [
    "UnivariateTestResult",
    "anderson_darling",
    "shapiro_wilk",
    "resolve_method",
    "method_size_range",
    "METHOD_FUNCS",
]

AD_MIN_SIZE = 8
SW_MIN_SIZE = 3
SW_MAX_SIZE = 5000

# p-values are clamped away from zero so downstream Bonferroni minima never
# underflow to an exact 0.
P_FLOOR = 1e-300


@dataclass(frozen=True)
class UnivariateTestResult:
    statistic: float
    p_value: float
    method: str
    sample_size: int


def _polyval(coeffs, x: float) -> float:
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _validate(x: np.ndarray, method: str) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if not np.isfinite(x).all():
        raise SampleSizeError(f"{method}: sample contains non-finite values")
    return x


# ---------------------------------------------------------------------------
# Anderson-Darling

def anderson_darling(x: np.ndarray) -> UnivariateTestResult:
    """Composite-normality Anderson-Darling test.

    Returns the uncorrected A^2 statistic; the p-value is computed from the
    Stephens-corrected A^2 (1 + 0.75/k + 2.25/k^2).  Requires k >= 8, the
    validity floor of the p-value approximation.
    """
    x = _validate(x, "anderson_darling")
    k = x.size
    if k < AD_MIN_SIZE:
        raise SampleSizeError(f"anderson_darling needs at least {AD_MIN_SIZE} values, got {k}")
    xs = np.sort(x)
    if xs[0] == xs[-1]:
        raise ConstantSampleError("anderson_darling: sample is constant")
    mean = xs.mean()
    sd = xs.std(ddof=1)
    z = (xs - mean) / sd
    logcdf = log_ndtr(z)
    logsf = log_ndtr(-z)
    odd = 2.0 * np.arange(1, k + 1) - 1.0
    a2 = -k - float(odd @ (logcdf + logsf[::-1])) / k
    corrected = a2 * (1.0 + 0.75 / k + 2.25 / (k * k))
    return UnivariateTestResult(a2, _ad_pvalue(corrected), "anderson_darling", k)


def _ad_pvalue(a: float) -> float:
    if a < 0.2:
        p = 1.0 - math.exp(-13.436 + 101.14 * a - 223.73 * a * a)
    elif a < 0.34:
        p = 1.0 - math.exp(-8.318 + 42.796 * a - 59.938 * a * a)
    elif a < 0.6:
        p = math.exp(0.9177 - 4.279 * a - 1.38 * a * a)
    elif a <= 13.0:
        p = math.exp(1.2937 - 5.709 * a + 0.0186 * a * a)
    else:
        p = 0.0
    return min(max(p, P_FLOOR), 1.0)


# ---------------------------------------------------------------------------
# Shapiro-Wilk (AS R94)

_SW_C1 = (-2.706056, 4.434685, -2.07119, -0.147981, 0.221157, 0.0)
_SW_C2 = (-3.582633, 5.682633, -1.752461, -0.293762, 0.042981, 0.0)
_SW_C3 = (-0.0006714, 0.025054, -0.39978, 0.544)
_SW_C4 = (-0.0020322, 0.062767, -0.77857, 1.3822)
_SW_C5 = (0.0038915, -0.083751, -0.31082, -1.5861)
_SW_C6 = (0.0030302, -0.082676, -0.4803)

_SW_PI6 = 6.0 / math.pi
_SW_STQR = math.asin(math.sqrt(0.75))  # = pi/3
_SW_SQRTH = math.sqrt(0.5)


@lru_cache(maxsize=256)
def _sw_weights(k: int) -> np.ndarray:
    """Full antisymmetric AS R94 weight vector for sample size k."""
    if k == 3:
        a = np.array([-_SW_SQRTH, 0.0, _SW_SQRTH])
        a.setflags(write=False)
        return a
    half = k // 2
    i = np.arange(1, half + 1)
    m = ndtri((i - 0.375) / (k + 0.25))  # lower-half normal scores, negative
    summ2 = 2.0 * float(m @ m)
    ssumm2 = math.sqrt(summ2)
    rsn = 1.0 / math.sqrt(k)
    a1 = _polyval(_SW_C1, rsn) - m[0] / ssumm2
    a = np.zeros(k)
    if k > 5:
        a2 = _polyval(_SW_C2, rsn) - m[1] / ssumm2
        fac = math.sqrt(
            (summ2 - 2.0 * m[0] ** 2 - 2.0 * m[1] ** 2)
            / (1.0 - 2.0 * a1 ** 2 - 2.0 * a2 ** 2)
        )
        a[0], a[1] = -a1, -a2
        a[2:half] = m[2:] / fac
    else:
        fac = math.sqrt((summ2 - 2.0 * m[0] ** 2) / (1.0 - 2.0 * a1 ** 2))
        a[0] = -a1
        a[1:half] = m[1:] / fac
    a[k - half:] = -a[:half][::-1]
    a.setflags(write=False)
    return a


def shapiro_wilk(x: np.ndarray) -> UnivariateTestResult:
    """Shapiro-Wilk W test per Royston's AS R94 approximation.

    Valid for 3 <= k <= 5000.
    """
    x = _validate(x, "shapiro_wilk")
    k = x.size
    if not SW_MIN_SIZE <= k <= SW_MAX_SIZE:
        raise SampleSizeError(
            f"shapiro_wilk needs {SW_MIN_SIZE} <= k <= {SW_MAX_SIZE}, got {k}"
        )
    xs = np.sort(x)
    if xs[0] == xs[-1]:
        raise ConstantSampleError("shapiro_wilk: sample is constant")
    centered = xs - xs.mean()
    ssq = float(centered @ centered)
    # The weights sum to zero, so a @ xs is already translation invariant.
    w = float(_sw_weights(k) @ xs) ** 2 / ssq
    w = min(w, 1.0)
    return UnivariateTestResult(w, _sw_pvalue(w, k), "shapiro_wilk", k)


def _sw_pvalue(w: float, k: float) -> float:
    if k == 3:
        p = _SW_PI6 * (math.asin(math.sqrt(w)) - _SW_STQR)
        return min(max(p, P_FLOOR), 1.0)
    w1 = 1.0 - w
    if w1 <= 0.0:
        return 1.0
    y = math.log(w1)
    if k <= 11:
        gamma = 0.459 * k - 2.273
        if y >= gamma:
            return P_FLOOR
        y = -math.log(gamma - y)
        mu = _polyval(_SW_C3, k)
        sigma = math.exp(_polyval(_SW_C4, k))
    else:
        ln_k = math.log(k)
        mu = _polyval(_SW_C5, ln_k)
        sigma = math.exp(_polyval(_SW_C6, ln_k))
    # Upper-tail normal probability of the transformed statistic.
    p = 0.5 * math.erfc((y - mu) / (sigma * math.sqrt(2.0)))
    return min(max(p, P_FLOOR), 1.0)


# ---------------------------------------------------------------------------
# Method registry

METHOD_FUNCS = {
    "anderson_darling": anderson_darling,
    "shapiro_wilk": shapiro_wilk,
}

_METHOD_ALIASES = {
    "ad": "anderson_darling",
    "sw": "shapiro_wilk",
    "anderson-darling": "anderson_darling",
    "shapiro-wilk": "shapiro_wilk",
}

_METHOD_RANGES = {
    "anderson_darling": (AD_MIN_SIZE, None),
    "shapiro_wilk": (SW_MIN_SIZE, SW_MAX_SIZE),
}


def resolve_method(name: str) -> str:
    """Canonical method name for ``name``, accepting ad/sw shorthands."""
    key = name.strip().lower()
    key = _METHOD_ALIASES.get(key, key)
    if key not in METHOD_FUNCS:
        known = ", ".join(sorted(METHOD_FUNCS) + sorted(_METHOD_ALIASES))
        raise ConfigError(f"unknown method {name!r}; expected one of: {known}")
    return key


def method_size_range(name: str) -> tuple[int, int | None]:
    """(min, max) admissible sample size for a method; max None = unbounded."""
    return _METHOD_RANGES[resolve_method(name)]
