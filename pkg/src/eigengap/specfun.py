"""Bessel functions of the first kind and their positive zeros.

``J_p(x)`` is evaluated with the ascending power series while ``x**2 <=
2(p+1)`` (every term is then at most half the previous one, so the alternating
sum loses no digits) and with Miller's backward recurrence otherwise.  The
recurrence is normalised through the Neumann series

    (x/2)**nu = sum_k (nu + 2k) Gamma(nu + k) / k! * J_{nu+2k}(x),

which covers integer, half-integer and general real orders uniformly.

Zeros are located by a sign-change walk whose step is shorter than the
smallest possible zero spacing, then polished with Newton's method kept
inside the bracket.  McMahon's expansion supplies the starting point.
"""
from __future__ import annotations

import math
from functools import lru_cache

from .errors import NumericError, ParameterError

_SERIES_EPS = 1e-17
_RESCALE = 1e250
_MAX_RECURRENCE = 200_000
# Consecutive zeros of J_p, p >= 0, are at least 3.07 apart (Sturm comparison
# with sin on [j_{0,1}, oo)); for p = -1/2 the spacing is exactly pi.
_SAFE_GAP = 3.0
_WALK_STEP = 1.0


def _check_order(p: float) -> float:
    p = float(p)
    if not math.isfinite(p):
        raise ParameterError(f"Bessel order must be finite, got {p}")
    if p < 0 and p != -0.5:
        raise ParameterError(f"Bessel order must be >= 0 (or exactly -1/2), got {p}")
    return p


def _series(p: float, x: float) -> float:
    log_pref = p * math.log(x / 2.0) - math.lgamma(p + 1.0)
    if log_pref < -744.0:
        raise NumericError(f"J_{p}({x}) underflows double precision (log10 ~ {log_pref / math.log(10):.0f})")
    if log_pref > 709.0:
        raise NumericError(f"J_{p}({x}) overflows double precision")
    q = -0.25 * x * x
    term = 1.0
    total = 1.0
    m = 0
    while True:
        m += 1
        term *= q / (m * (m + p))
        total += term
        if abs(term) <= _SERIES_EPS * abs(total):
            break
        if m > 10_000:
            raise NumericError(f"power series for J_{p}({x}) did not converge")
    return math.exp(log_pref) * total


def _miller(p: float, x: float) -> tuple[float, float]:
    """(J_p(x), J_{p+1}(x)) by backward recurrence."""
    n0 = int(math.floor(p))
    nu = p - n0
    top = max(n0 + 1, x)
    start = int(top) + 30 + int(math.sqrt(60.0 * top))
    if start % 2:
        start += 1
    if start > _MAX_RECURRENCE:
        raise NumericError(f"argument x={x} too large for the recurrence")

    f_hi, f = 0.0, 1e-300
    got_p = got_p1 = None
    norm = 0.0
    # g_k = Gamma(nu + k) / k!, built downward from k = start/2.
    kmax = start // 2
    g = _gamma_ratio(nu, kmax)
    for k in range(start, 0, -1):
        if k == n0 + 1:
            got_p1 = f
        if k == n0:
            got_p = f
        if k % 2 == 0:
            kk = k // 2
            norm += (nu + 2 * kk) * g * f
            g *= kk / (nu + kk - 1) if kk > 1 else 1.0
        f_lo = (2.0 * (nu + k) / x) * f - f_hi
        f_hi, f = f, f_lo
        if abs(f) > _RESCALE:
            f /= _RESCALE
            f_hi /= _RESCALE
            norm /= _RESCALE
            if got_p is not None:
                got_p /= _RESCALE
            if got_p1 is not None:
                got_p1 /= _RESCALE
    # k = 0 term: Gamma(nu + 1) * J_nu
    if n0 == 0:
        got_p = f
    if n0 + 1 == 0:
        got_p1 = f
    norm += math.gamma(nu + 1.0) * f
    scale = (x / 2.0) ** nu / norm
    jp = got_p * scale
    jp1 = got_p1 * scale
    return jp, jp1


def _gamma_ratio(nu: float, k: int) -> float:
    """Gamma(nu + k) / k! for k >= 1, computed in log space."""
    return math.exp(math.lgamma(nu + k) - math.lgamma(k + 1.0))


def _pair(p: float, x: float) -> tuple[float, float]:
    """(J_p(x), J_{p+1}(x)) for x > 0."""
    if p == -0.5 or p == 0.5:
        c = math.sqrt(2.0 / (math.pi * x))
        s, co = math.sin(x), math.cos(x)
        if p == -0.5:
            return c * co, c * s
        return c * s, c * (s / x - co)
    if x * x <= 2.0 * (p + 1.0):
        return _series(p, x), _series(p + 1.0, x)
    if (p - 0.5).is_integer() and x >= p + 1.0:
        return _half_integer_upward(int(p - 0.5), x)
    return _miller(p, x)


def _half_integer_upward(ell: int, x: float) -> tuple[float, float]:
    """(J_{ell+1/2}(x), J_{ell+3/2}(x)) from sin/cos; stable for ell + 1 <= x."""
    s, c = math.sin(x), math.cos(x)
    a, b = s / x, s / (x * x) - c / x  # spherical j_0, j_1
    for m in range(1, ell + 1):
        a, b = b, (2 * m + 1) / x * b - a
    scale = math.sqrt(2.0 * x / math.pi)
    return scale * a, scale * b


def bessel_j(p: float, x: float) -> float:
    """Bessel function of the first kind ``J_p(x)`` for ``x >= 0``.

    Orders must be nonnegative; ``p = -1/2`` is also accepted since it is
    needed for the one-dimensional ratio.
    """
    p = _check_order(p)
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise ParameterError(f"Bessel argument must be finite and >= 0, got {x}")
    if x == 0.0:
        if p == 0.0:
            return 1.0
        if p < 0:
            raise NumericError("J_{-1/2} is singular at x = 0")
        return 0.0
    return _pair(p, x)[0]


def _mcmahon(p: float, m: int) -> float:
    mu = 4.0 * p * p
    beta = (m + 0.5 * p - 0.25) * math.pi
    b8 = 8.0 * beta
    return (
        beta
        - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8**3)
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8**5)
    )


def _polish(p: float, lo: float, hi: float, guess: float) -> float:
    """Safeguarded Newton on a bracket [lo, hi] with J_p(lo) J_p(hi) < 0."""
    f_lo = _pair(p, lo)[0]
    x = guess if lo < guess < hi else 0.5 * (lo + hi)
    for _ in range(200):
        j, j1 = _pair(p, x)
        if j == 0.0:
            return x
        if (j > 0) == (f_lo > 0):
            lo, f_lo = x, j
        else:
            hi = x
        deriv = (p / x) * j - j1
        step = j / deriv if deriv != 0.0 else math.inf
        x_new = x - step
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
            step = x - x_new
        if abs(step) <= 4.0 * math.ulp(x) or hi - lo <= 4.0 * math.ulp(x):
            return x_new
        x = x_new
    raise NumericError(f"zero of J_{p} in [{lo}, {hi}] did not converge")


def _walk(p: float, start: float, sign: float, limit: float | None = None) -> tuple[float, float] | None:
    """Step right from ``start`` until J_p changes sign away from ``sign``."""
    a = start
    for _ in range(1_000_000):
        b = a + _WALK_STEP
        if limit is not None and a > limit:
            return None
        fb = _pair(p, b)[0]
        if fb == 0.0 or (fb > 0) != (sign > 0):
            return a, b
        a = b
    raise NumericError(f"no sign change of J_{p} found after {start}")


def _next_zero(p: float, m: int, prev: float | None, limit: float | None = None) -> float | None:
    """The m-th zero given the (m-1)-th one (``prev``); None if past ``limit``."""
    sign = 1.0 if m % 2 == 1 else -1.0
    if prev is None:
        start = max(p, 0.0)
    else:
        start = prev + _SAFE_GAP
        f = _pair(p, start)[0]
        if f != 0.0 and (f > 0) != (sign > 0):
            # spacing guarantee violated numerically; bracket directly
            return _polish(p, prev + 1e-12, start, 0.5 * (prev + start))
    br = _walk(p, start, sign, limit)
    if br is None:
        return None
    lo, hi = br
    return _polish(p, lo, hi, _mcmahon(p, m))


@lru_cache(maxsize=512)
def _zero_table(p: float, count: int) -> tuple[float, ...]:
    out: list[float] = []
    prev = None
    for m in range(1, count + 1):
        prev = _next_zero(p, m, prev)
        out.append(prev)
    return tuple(out)


def bessel_zeros(p: float, count: int) -> tuple[float, ...]:
    """The first ``count`` positive zeros of J_p, in increasing order."""
    p = _check_order(p)
    if count < 0:
        raise ParameterError("count must be >= 0")
    if count == 0:
        return ()
    bucket = 16 * ((count + 15) // 16)
    return _zero_table(p, bucket)[:count]


def bessel_zero(p: float, k: int) -> float:
    """The k-th positive zero ``j_{p,k}`` of J_p (k >= 1)."""
    if int(k) != k or k < 1:
        raise ParameterError(f"zero index must be a positive integer, got {k}")
    return bessel_zeros(p, int(k))[int(k) - 1]


def bessel_zeros_below(p: float, xmax: float) -> list[float]:
    """All positive zeros of J_p not exceeding ``xmax``."""
    p = _check_order(p)
    out: list[float] = []
    if xmax <= max(p, 0.0):
        return out
    prev = None
    m = 1
    while True:
        z = _next_zero(p, m, prev, limit=xmax)
        if z is None or z > xmax:
            return out
        out.append(z)
        prev = z
        m += 1


def ppw_ratio(n: int) -> float:
    """``(j_{n/2,1} / j_{n/2-1,1})**2``: lambda_2/lambda_1 of the n-ball."""
    if int(n) != n or n < 1:
        raise ParameterError(f"dimension must be a positive integer, got {n}")
    return (bessel_zero(n / 2.0, 1) / bessel_zero(n / 2.0 - 1.0, 1)) ** 2
