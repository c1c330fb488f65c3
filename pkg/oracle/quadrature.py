"""
Reference quadrature: globally adaptive Gauss-Legendre in one and two
dimensions, plus the kernel-weighted double integral of the mixed partial.

Each panel is integrated with n and 2n nodes; the 2n result is kept and
|Q_2n - Q_n| is its error estimate. The panel with the largest estimate is
bisected until the total estimate meets the configured tolerance.
"""
import heapq
import logging
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from core.conf import cubature_setting
from core.domain import Rectangle, RuleParams
from core.exceptions import InvalidParameter, ToleranceNotMet
from cubature.kernels import kernel_K, kernel_M
from exprmodel.calculus import evaluate
from exprmodel.nodes import Expr

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps
MIN_ABS_TOL = 1e-14
MAX_DEPTH_LIMIT = 60
NODE_COUNTS = (8, 16, 32)
# estimates below this multiple of eps * integral of |g| are round-off
ROUNDOFF_FACTOR = 50


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_depth: int = 50
    nodes_per_panel: int = 16

    def __post_init__(self):
        if not (math.isfinite(self.abs_tol) and self.abs_tol >= MIN_ABS_TOL):
            raise InvalidParameter('abs_tol', self.abs_tol, f'a finite real >= {MIN_ABS_TOL}')
        if not (math.isfinite(self.rel_tol) and self.rel_tol > 0):
            raise InvalidParameter('rel_tol', self.rel_tol, 'a finite real > 0')
        if not (isinstance(self.max_depth, int) and 1 <= self.max_depth <= MAX_DEPTH_LIMIT):
            raise InvalidParameter('max_depth', self.max_depth, f'an integer in [1, {MAX_DEPTH_LIMIT}]')
        if self.nodes_per_panel not in NODE_COUNTS:
            raise InvalidParameter('nodes_per_panel', self.nodes_per_panel, f'one of {NODE_COUNTS}')

    @classmethod
    def from_settings(cls) -> 'QuadConfig':
        return cls(
            abs_tol=float(cubature_setting('QUAD_ABS_TOL')),
            rel_tol=float(cubature_setting('QUAD_REL_TOL')),
            max_depth=int(cubature_setting('QUAD_MAX_DEPTH')),
            nodes_per_panel=int(cubature_setting('QUAD_NODES')),
        )

    def tightened(self, factor: float) -> 'QuadConfig':
        """Both tolerances divided by ``factor``; abs_tol stays at or above its floor."""
        return replace(
            self,
            abs_tol=max(self.abs_tol / factor, MIN_ABS_TOL),
            rel_tol=self.rel_tol / factor,
        )


class QuadResult(NamedTuple):
    value: float
    err_est: float


@lru_cache(maxsize=None)
def gauss_legendre(n: int):
    """Nodes and weights of the n-point rule on [-1, 1]."""
    nodes, weights = leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _target(cfg: QuadConfig, value, resabs):
    return np.maximum(
        np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(value)),
        ROUNDOFF_FACTOR * EPS * resabs,
    )


# One dimension

class _Panel(NamedTuple):
    lo: float
    hi: float
    depth: int
    value: float
    err: float
    resabs: float


def _panel_1d(g: Callable, lo: float, hi: float, depth: int, n: int) -> _Panel:
    xn, wn = gauss_legendre(n)
    x2n, w2n = gauss_legendre(2 * n)
    half, centre = (hi - lo) / 2, (hi + lo) / 2
    values = np.asarray(g(centre + half * np.concatenate([xn, x2n])), dtype=float)
    fn, f2n = values[:n], values[n:]
    coarse = half * float(np.dot(wn, fn))
    fine = half * float(np.dot(w2n, f2n))
    resabs = half * float(np.dot(w2n, np.abs(f2n)))
    return _Panel(lo, hi, depth, fine, abs(fine - coarse), resabs)


def integrate_1d(g: Callable, lo: float, hi: float, cfg: QuadConfig = None) -> QuadResult:
    """
    Integral of ``g`` over [lo, hi]. ``g`` must accept a numpy array of
    abscissae and return the values elementwise.
    """
    cfg = cfg or QuadConfig.from_settings()
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise InvalidParameter('interval', (lo, hi), 'finite bounds with lo < hi')
    n = cfg.nodes_per_panel
    root = _panel_1d(g, lo, hi, 0, n)
    heap = [(-root.err, root.lo, root)]
    while True:
        panels = [entry[2] for entry in heap]
        total = math.fsum(p.value for p in panels)
        error = math.fsum(p.err for p in panels)
        resabs = math.fsum(p.resabs for p in panels)
        target = float(_target(cfg, total, resabs))
        if error <= target:
            return QuadResult(total, error)
        worst = heapq.heappop(heap)[2]
        if worst.depth >= cfg.max_depth:
            logger.warning('1-D quadrature on [%r, %r] stopped at depth %d', lo, hi, worst.depth)
            raise ToleranceNotMet(total, error, target)
        mid = (worst.lo + worst.hi) / 2
        for child in (_panel_1d(g, worst.lo, mid, worst.depth + 1, n),
                      _panel_1d(g, mid, worst.hi, worst.depth + 1, n)):
            heapq.heappush(heap, (-child.err, child.lo, child))


# Two dimensions

def as_surface(f) -> Callable:
    """A vectorised (X, Y) -> values callable from a FunctionModel, an Expr or a callable."""
    if isinstance(f, Expr):
        return lambda X, Y: evaluate(f, X, Y)
    if hasattr(f, 'evaluate'):
        return f.evaluate
    return f


class _Slab(NamedTuple):
    lo: float
    hi: float
    depth: int
    value: float
    err: float
    resabs: float


def _inner_integrals(F: Callable, xs: np.ndarray, c: float, d: float, cfg: QuadConfig):
    """
    Integrals over [c, d] in y for every x in ``xs`` at once, on a y-partition
    shared by all of them. Returns (values, errors, resabs) arrays, resabs
    being the integrals of |F|.
    """
    n = cfg.nodes_per_panel
    yn, wn = gauss_legendre(n)
    y2n, w2n = gauss_legendre(2 * n)
    offsets = np.concatenate([yn, y2n])

    def panel(lo, hi, depth):
        half, centre = (hi - lo) / 2, (hi + lo) / 2
        values = np.asarray(F(xs[:, None], (centre + half * offsets)[None, :]), dtype=float)
        coarse = half * values[:, :n] @ wn
        fine = half * values[:, n:] @ w2n
        resabs = half * np.abs(values[:, n:]) @ w2n
        return _Slab(lo, hi, depth, fine, np.abs(fine - coarse), resabs)

    slabs = [panel(c, d, 0)]
    while True:
        values = np.sum([s.value for s in slabs], axis=0)
        errors = np.sum([s.err for s in slabs], axis=0)
        resabs = np.sum([s.resabs for s in slabs], axis=0)
        failing = errors > _target(cfg, values, resabs)
        if not np.any(failing):
            return values, errors, resabs
        index = max(range(len(slabs)), key=lambda i: (float(np.max(slabs[i].err[failing])), -slabs[i].lo))
        worst = slabs[index]
        if worst.depth >= cfg.max_depth:
            break
        mid = (worst.lo + worst.hi) / 2
        slabs[index:index + 1] = [panel(worst.lo, mid, worst.depth + 1),
                                  panel(mid, worst.hi, worst.depth + 1)]

    # The shared partition could not serve every x; finish those one at a time.
    values, errors = values.copy(), errors.copy()
    for i in np.flatnonzero(failing):
        x = float(xs[i])
        values[i], errors[i] = integrate_1d(lambda Y: F(np.full_like(Y, x), Y), c, d, cfg)
    return values, errors, resabs


class _Strip(NamedTuple):
    lo: float
    hi: float
    depth: int
    value: float
    err: float
    inner_err: float
    resabs: float


def _at_floor(cfg: QuadConfig) -> bool:
    return cfg.abs_tol <= MIN_ABS_TOL and cfg.rel_tol <= EPS


def integrate_2d(f, r: Rectangle, cfg: QuadConfig = None) -> QuadResult:
    """
    Double integral of ``f`` over ``r``: adaptive in x, with the inner y
    integrals at all outer nodes of a strip computed together to a
    tolerance tightened by INNER_TOLERANCE_FACTOR.

    When the x-partition is fine enough but the propagated inner error is
    not, the inner integrals are redone with tolerances tightened by the
    excess, down to the MIN_ABS_TOL floor.
    """
    cfg = cfg or QuadConfig.from_settings()
    F = as_surface(f)
    # the inner errors are summed over a width of b - a
    inner_cfg = cfg.tightened(cubature_setting('INNER_TOLERANCE_FACTOR') * max(1.0, r.width))
    n = cfg.nodes_per_panel
    xn, wn = gauss_legendre(n)
    x2n, w2n = gauss_legendre(2 * n)

    def strip(lo, hi, depth):
        half, centre = (hi - lo) / 2, (hi + lo) / 2
        xs = centre + half * np.concatenate([xn, x2n])
        inner, inner_err, inner_abs = _inner_integrals(F, xs, r.c, r.d, inner_cfg)
        coarse = half * float(np.dot(wn, inner[:n]))
        fine = half * float(np.dot(w2n, inner[n:]))
        propagated = half * float(np.dot(w2n, inner_err[n:]))
        # integral of |f| over the strip, so the round-off floor covers the inner sums
        resabs = half * float(np.dot(w2n, inner_abs[n:]))
        return _Strip(lo, hi, depth, fine, abs(fine - coarse), propagated, resabs)

    root = strip(r.a, r.b, 0)
    heap = [(-root.err, root.lo, root)]
    while True:
        strips = [entry[2] for entry in heap]
        total = math.fsum(s.value for s in strips)
        outer = math.fsum(s.err for s in strips)
        inner = math.fsum(s.inner_err for s in strips)
        error = outer + inner
        target = float(_target(cfg, total, math.fsum(s.resabs for s in strips)))
        if error <= target:
            return QuadResult(total, error)
        if outer <= target / 2 and inner > target / 2:
            if _at_floor(inner_cfg):
                logger.warning('2-D quadrature on %s: inner integrals at the tolerance floor', r.as_list())
                raise ToleranceNotMet(total, error, target, reason='inner integrals at the tolerance floor')
            excess = inner / max(target - outer, target / 2)
            inner_cfg = replace(
                inner_cfg,
                abs_tol=max(inner_cfg.abs_tol / (2 * excess), MIN_ABS_TOL),
                rel_tol=max(inner_cfg.rel_tol / (2 * excess), EPS),
            )
            logger.debug('2-D quadrature on %s: inner tolerance tightened to %.3e', r.as_list(), inner_cfg.abs_tol)
            heap = [(-s.err, s.lo, s) for s in (strip(s.lo, s.hi, s.depth) for s in strips)]
            heapq.heapify(heap)
            continue
        worst = heapq.heappop(heap)[2]
        if worst.depth >= cfg.max_depth:
            logger.warning('2-D quadrature on %s stopped at depth %d', r.as_list(), worst.depth)
            raise ToleranceNotMet(total, error, target)
        mid = (worst.lo + worst.hi) / 2
        for child in (strip(worst.lo, mid, worst.depth + 1), strip(mid, worst.hi, worst.depth + 1)):
            heapq.heappush(heap, (-child.err, child.lo, child))


# Kernel-weighted integral

def kernel_weighted_estimate(fxy, r: Rectangle, params: RuleParams, cfg: QuadConfig = None) -> QuadResult:
    """
    (1/area) times the double integral of K(x) M(y) fxy(x, y) over ``r``,
    summed over the four quadrants so each kernel branch is linear on its panel.
    """
    cfg = cfg or QuadConfig.from_settings()
    G = as_surface(fxy)

    def integrand(X, Y):
        return kernel_K(X, r, params) * kernel_M(Y, r, params) * G(X, Y)

    parts = [integrate_2d(integrand, quadrant, cfg) for quadrant in r.quadrants()]
    value = math.fsum(p.value for p in parts) / r.area
    error = math.fsum(p.err_est for p in parts) / r.area
    return QuadResult(value, error)


def kernel_weighted_integral(fxy, r: Rectangle, params: RuleParams, cfg: QuadConfig = None) -> float:
    return kernel_weighted_estimate(fxy, r, params, cfg).value
