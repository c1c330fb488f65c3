"""
The piecewise-linear Peano kernels K(x) and M(y) of the lambda-family rule.

Both are evaluated elementwise on numpy input. At the midpoint the left
branch applies.
"""
import numpy as np

from core.domain import Rectangle, RuleParams
from core.exceptions import OutOfDomain


def _piecewise(t, lo: float, hi: float, lam: float):
    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)
    outside = (t < lo) | (t > hi) | np.isnan(t)
    if np.any(outside):
        raise OutOfDomain(float(t[outside][0]) if t.ndim else float(t), lo, hi)
    length = hi - lo
    mid = (lo + hi) / 2
    value = np.where(t <= mid, t - (lo + lam * length / 2), t - (hi - lam * length / 2))
    return float(value) if scalar else value


def kernel_K(x, r: Rectangle, params: RuleParams):
    """x - (a + lam(b-a)/2) on [a, mid], x - (b - lam(b-a)/2) on (mid, b]."""
    return _piecewise(x, r.a, r.b, params.lam)


def kernel_M(y, r: Rectangle, params: RuleParams):
    """The same construction as kernel_K in the y direction over [c, d]."""
    return _piecewise(y, r.c, r.d, params.lam)


def lambda_factor(params: RuleParams) -> float:
    """(2 lam^2 - 2 lam + 1)^2, the lambda dependence of every bound constant."""
    lam = params.lam
    return (2 * lam * lam - 2 * lam + 1) ** 2


def abs_kernel_integral(length: float, params: RuleParams) -> float:
    # closed form of the integral of |K| over an interval of the given length
    lam = params.lam
    return length * length * (2 * lam * lam - 2 * lam + 1) / 4


def kernel_abs_mass(r: Rectangle, params: RuleParams) -> float:
    """
    Average over the rectangle of |K(x) M(y)|, i.e.
    (b-a)(d-c) (2 lam^2 - 2 lam + 1)^2 / 16.
    """
    return abs_kernel_integral(r.width, params) * abs_kernel_integral(r.height, params) / r.area
