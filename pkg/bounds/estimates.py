"""
A-priori bounds on |average of f - Q| for the lambda-family rule.

All bounds are pure formulas in the rectangle, lambda and the corner values
of |fxy| (or |fxy|^q). They hold when that corner quantity comes from a
function convex on the co-ordinates; callers that need the hypothesis
checked pair them with ``verify.convexity.is_coordinate_convex``.
"""
import enum
import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional

import numpy as np

from core.conf import cubature_setting
from core.domain import CornerData, HolderExponents, Rectangle, RuleParams
from core.exceptions import InvalidExponents
from cubature.kernels import lambda_factor
from exprmodel.function_model import FunctionModel

logger = logging.getLogger(__name__)

TIE_RTOL = 1e-12


class Theorem(str, enum.Enum):
    T5 = 'T5'
    T6 = 'T6'
    T7 = 'T7'
    T6_RELAXED = 'T6_relaxed'

    @property
    def preference(self) -> int:
        # simpler hypotheses win ties
        return {'T5': 0, 'T7': 1, 'T6': 2, 'T6_relaxed': 3}[self.value]


@dataclass(frozen=True)
class BoundReport:
    theorem: Theorem
    value: float
    lam: float
    p: Optional[float] = None
    q: Optional[float] = None

    def __post_init__(self):
        if not self.value >= 0:
            raise ValueError(f"bound value must be non-negative, got {self.value!r}")
        wants_p = self.theorem in (Theorem.T6, Theorem.T6_RELAXED)
        wants_q = self.theorem is not Theorem.T5
        if (self.p is not None) != wants_p or (self.q is not None) != wants_q:
            raise ValueError(f"{self.theorem.value} report with p={self.p!r}, q={self.q!r}")


def holder_coefficient(p: float) -> float:
    """1 / (4 (p+1)^(2/p)); lies strictly between 1/16 and 1/4 for p > 1."""
    return 1.0 / (4.0 * (p + 1.0) ** (2.0 / p))


def kernel_power_coefficient(params: RuleParams, p: float) -> float:
    """
    (lam^(p+1) + (1-lam)^(p+1))^(2/p) / (4 (p+1)^(2/p)): times (b-a)(d-c) this is
    the product of the averaged L^p norms of K and M, the sharp Hölder constant.
    """
    lam = params.lam
    spread = lam ** (p + 1) + (1 - lam) ** (p + 1)
    return spread ** (2.0 / p) * holder_coefficient(p)


def corner_values(f: FunctionModel, r: Rectangle, q: float = 1.0) -> CornerData:
    """|fxy|^q at (a,c), (a,d), (b,c), (b,d), evaluated symbolically."""
    xs, ys = zip(*r.corners())
    values = np.abs(f.evaluate_fxy(np.array(xs), np.array(ys))) ** q
    return CornerData(*(float(v) for v in values))


def _q_mean(corners_q: CornerData, q: float) -> float:
    return corners_q.mean() ** (1.0 / q)


def bound_t5(corners: CornerData, r: Rectangle, params: RuleParams) -> BoundReport:
    value = r.area / 16 * lambda_factor(params) * corners.mean()
    return BoundReport(Theorem.T5, value, params.lam)


def bound_t6(corners_q: CornerData, r: Rectangle, params: RuleParams,
             he: HolderExponents) -> BoundReport:
    value = r.area * holder_coefficient(he.p) * lambda_factor(params) * _q_mean(corners_q, he.q)
    return BoundReport(Theorem.T6, value, params.lam, p=he.p, q=he.q)


def bound_t6_relaxed(corners_q: CornerData, r: Rectangle, params: RuleParams,
                     q: float) -> BoundReport:
    he = HolderExponents.from_q(q)
    value = r.area / 4 * lambda_factor(params) * _q_mean(corners_q, he.q)
    return BoundReport(Theorem.T6_RELAXED, value, params.lam, p=he.p, q=he.q)


def bound_t7(corners_q: CornerData, r: Rectangle, params: RuleParams, q: float) -> BoundReport:
    if not (math.isfinite(q) and q >= 1):
        raise InvalidExponents(None, q, 'q must be a finite real >= 1')
    value = r.area / 16 * lambda_factor(params) * _q_mean(corners_q, q)
    return BoundReport(Theorem.T7, value, params.lam, q=float(q))


def all_bounds(f: FunctionModel, r: Rectangle, params: RuleParams,
               q_grid: Iterable[float] = None, relaxed: bool = True) -> List[BoundReport]:
    """T5 first, then T7(q) and, for q > 1, T6(p, q) and its relaxation, in grid order."""
    if q_grid is None:
        q_grid = cubature_setting('Q_GRID')
    reports = [bound_t5(corner_values(f, r), r, params)]
    for q in q_grid:
        corners_q = corner_values(f, r, q)
        reports.append(bound_t7(corners_q, r, params, q))
        if q > 1:
            reports.append(bound_t6(corners_q, r, params, HolderExponents.from_q(q)))
            if relaxed:
                reports.append(bound_t6_relaxed(corners_q, r, params, q))
    return reports


def best_bound(f: FunctionModel, r: Rectangle, params: RuleParams,
               q_grid: Iterable[float] = None) -> BoundReport:
    """
    The smallest of T5, T7(q) and T6(p, q) over the grid. Values equal to
    within a relative 1e-12 count as ties and go to T5, then T7, then T6.
    """
    candidates = all_bounds(f, r, params, q_grid, relaxed=False)
    smallest = min(report.value for report in candidates)
    tied = [
        report for report in candidates
        if report.value <= smallest + TIE_RTOL * abs(smallest)
    ]
    best = min(tied, key=lambda report: report.theorem.preference)
    logger.debug('best bound %s=%r among %d candidates', best.theorem.value, best.value, len(candidates))
    return best
