"""
The lambda-family cubature rule on a rectangle.

For lambda in [0, 1] the rule is Q = line_term - point_term, where the point
term weights nine nodes (centre, four corners, four edge midpoints) and the
line term weights six averaged line integrals (two midlines, four edges).
Q estimates the average of f over the rectangle; its error is exactly the
kernel-weighted integral of the mixed partial.
"""
import logging
import math
from typing import NamedTuple, Tuple

import numpy as np

from core.conf import cubature_setting
from core.domain import Rectangle, RuleParams
from exprmodel.function_model import FunctionModel
from oracle.quadrature import (
    QuadConfig, QuadResult, integrate_1d, integrate_2d, kernel_weighted_estimate,
)

logger = logging.getLogger(__name__)


class WeightedNode(NamedTuple):
    x: float
    y: float
    weight: float
    value: float


class LineAverages(NamedTuple):
    """Averaged line integrals of f, with the summed quadrature error of all six."""
    mid_y: float    # over y at x = (a+b)/2
    mid_x: float    # over x at y = (c+d)/2
    bottom: float   # y = c
    top: float      # y = d
    left: float     # x = a
    right: float    # x = b
    error: float


class RuleBreakdown(NamedTuple):
    point_term: float
    line_term: float
    lam: float
    rect: Rectangle
    nodes: Tuple[WeightedNode, ...]
    lines: LineAverages
    line_error: float

    @property
    def average(self) -> float:
        return self.line_term - self.point_term

    @property
    def integral(self) -> float:
        return self.average * self.rect.area


def node_weights(r: Rectangle, params: RuleParams):
    """The nine (x, y, weight) triples; zero weights are kept."""
    lam = params.lam
    centre = (1 - lam) ** 2
    corner = lam * lam / 4
    edge = lam * (1 - lam) / 2
    xm, ym = r.x_mid, r.y_mid
    return (
        (xm, ym, centre),
        (r.a, r.c, corner), (r.a, r.d, corner), (r.b, r.c, corner), (r.b, r.d, corner),
        (xm, r.c, edge), (xm, r.d, edge), (r.a, ym, edge), (r.b, ym, edge),
    )


def weighted_nodes(f: FunctionModel, r: Rectangle, params: RuleParams) -> Tuple[WeightedNode, ...]:
    triples = node_weights(r, params)
    xs = np.array([t[0] for t in triples])
    ys = np.array([t[1] for t in triples])
    values = f.evaluate(xs, ys)
    return tuple(WeightedNode(x, y, w, float(v)) for (x, y, w), v in zip(triples, values))


def point_term(f: FunctionModel, r: Rectangle, params: RuleParams) -> float:
    return math.fsum(node.weight * node.value for node in weighted_nodes(f, r, params))


def line_averages(f: FunctionModel, r: Rectangle, cfg: QuadConfig = None) -> LineAverages:
    cfg = cfg or QuadConfig.from_settings()

    def along_x(y):
        return integrate_1d(lambda X: f.evaluate(X, np.full_like(X, y)), r.a, r.b, cfg)

    def along_y(x):
        return integrate_1d(lambda Y: f.evaluate(np.full_like(Y, x), Y), r.c, r.d, cfg)

    mid_y, mid_x = along_y(r.x_mid), along_x(r.y_mid)
    bottom, top = along_x(r.c), along_x(r.d)
    left, right = along_y(r.a), along_y(r.b)
    w, h = r.width, r.height
    return LineAverages(
        mid_y=mid_y.value / h,
        mid_x=mid_x.value / w,
        bottom=bottom.value / w,
        top=top.value / w,
        left=left.value / h,
        right=right.value / h,
        error=math.fsum([
            (mid_x.err_est + bottom.err_est + top.err_est) / w,
            (mid_y.err_est + left.err_est + right.err_est) / h,
        ]),
    )


def _line_cfg(cfg: QuadConfig) -> QuadConfig:
    return cfg.tightened(cubature_setting('LINE_TOLERANCE_FACTOR'))


def _combine_lines(lines: LineAverages, params: RuleParams) -> float:
    lam = params.lam
    return math.fsum([
        (1 - lam) * lines.mid_y,
        (1 - lam) * lines.mid_x,
        lam / 2 * lines.bottom,
        lam / 2 * lines.top,
        lam / 2 * lines.left,
        lam / 2 * lines.right,
    ])


def line_term(f: FunctionModel, r: Rectangle, params: RuleParams, cfg: QuadConfig = None) -> float:
    cfg = cfg or QuadConfig.from_settings()
    return _combine_lines(line_averages(f, r, _line_cfg(cfg)), params)


def rule_breakdown(f: FunctionModel, r: Rectangle, params: RuleParams,
                   cfg: QuadConfig = None) -> RuleBreakdown:
    """Every term of the rule, with line integrals to a tightened tolerance."""
    cfg = cfg or QuadConfig.from_settings()
    nodes = weighted_nodes(f, r, params)
    lines = line_averages(f, r, _line_cfg(cfg))
    # each line average enters with weight at most max(1 - lam, lam / 2) <= 1
    line_error = max(1 - params.lam, params.lam / 2) * lines.error
    breakdown = RuleBreakdown(
        point_term=math.fsum(n.weight * n.value for n in nodes),
        line_term=_combine_lines(lines, params),
        lam=params.lam,
        rect=r,
        nodes=nodes,
        lines=lines,
        line_error=line_error,
    )
    logger.debug('rule lam=%r on %s: point=%r line=%r', params.lam, r.as_list(),
                 breakdown.point_term, breakdown.line_term)
    return breakdown


def approximate_integral(f: FunctionModel, r: Rectangle, params: RuleParams,
                         cfg: QuadConfig = None) -> float:
    """Q = line_term - point_term, an estimate of the average of f over ``r``."""
    return rule_breakdown(f, r, params, cfg).average


class IdentityCheck(NamedTuple):
    lam: float
    lhs: float
    rhs: float
    residual: float
    err_est: float


def identity_check(f: FunctionModel, r: Rectangle, params: RuleParams,
                   cfg: QuadConfig = None) -> IdentityCheck:
    """
    Both sides of the kernel identity, computed independently:
    point - line + average of f on the left, the kernel-weighted average of
    fxy on the right. ``err_est`` combines every quadrature estimate involved.
    """
    cfg = cfg or QuadConfig.from_settings()
    breakdown = rule_breakdown(f, r, params, cfg)
    total: QuadResult = integrate_2d(f, r, cfg)
    kernel = kernel_weighted_estimate(f.fxy, r, params, cfg)
    lhs = math.fsum([breakdown.point_term, -breakdown.line_term, total.value / r.area])
    return IdentityCheck(
        lam=params.lam,
        lhs=lhs,
        rhs=kernel.value,
        residual=lhs - kernel.value,
        err_est=breakdown.line_error + total.err_est / r.area + kernel.err_est,
    )


def identity_residual(f: FunctionModel, r: Rectangle, params: RuleParams,
                      cfg: QuadConfig = None) -> float:
    return identity_check(f, r, params, cfg).residual
