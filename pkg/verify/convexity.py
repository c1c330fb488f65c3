"""Grid check of convexity on the co-ordinates via the midpoint inequality."""
import logging
from typing import NamedTuple, Optional

import numpy as np

from core.conf import cubature_setting
from core.domain import Rectangle
from core.exceptions import InvalidParameter
from exprmodel.calculus import evaluate
from exprmodel.nodes import Expr, to_text

logger = logging.getLogger(__name__)

AXES = ('x', 'y')


class ConvexityWitness(NamedTuple):
    """g((t1+t2)/2) exceeds (g(t1)+g(t2))/2 by ``violation`` along ``axis`` at ``fixed_coord``."""
    axis: str
    fixed_coord: float
    t1: float
    t2: float
    violation: float


class ConvexityReport(NamedTuple):
    passed: bool
    witness: Optional[ConvexityWitness]
    grid_n: int
    expression: str
    tol: float


def midpoint_excess(g: Expr, axis: str, fixed: float, t1: float, t2: float) -> float:
    """g at the midpoint minus the mean of g at t1 and t2, along ``axis``."""
    def at(t):
        return evaluate(g, t, fixed) if axis == 'x' else evaluate(g, fixed, t)
    return at((t1 + t2) / 2) - (at(t1) + at(t2)) / 2


def _first_violation(g: Expr, axis: str, free: np.ndarray, fixed: np.ndarray, tol: float):
    mids = (free[:, None] + free[None, :]) / 2
    if axis == 'x':
        ends = evaluate(g, free[None, :], fixed[:, None])
        centre = evaluate(g, mids[None, :, :], fixed[:, None, None])
    else:
        ends = evaluate(g, fixed[:, None], free[None, :])
        centre = evaluate(g, fixed[:, None, None], mids[None, :, :])
    g1, g2 = ends[:, :, None], ends[:, None, :]
    excess = centre - (g1 + g2) / 2
    allowed = tol * np.maximum(1.0, (np.abs(g1) + np.abs(g2)) / 2)
    n = free.size
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    hits = np.argwhere((excess > allowed) & upper[None, :, :])
    if hits.size == 0:
        return None
    k, i, j = hits[0]
    return ConvexityWitness(axis, float(fixed[k]), float(free[i]), float(free[j]), float(excess[k, i, j]))


def is_coordinate_convex(g: Expr, r: Rectangle, grid_n: int = None, tol: float = None) -> ConvexityReport:
    """
    Midpoint convexity of u -> g(u, y) and v -> g(x, v) for grid_n fixed values
    per axis and every pair of grid_n lattice points on the other axis. The
    witness, if any, is the first violation in (axis, fixed, t1, t2) order.
    """
    grid_n = grid_n if grid_n is not None else cubature_setting('CONVEXITY_GRID_N')
    tol = tol if tol is not None else cubature_setting('CONVEXITY_TOL')
    if not (isinstance(grid_n, int) and grid_n >= 3):
        raise InvalidParameter('grid_n', grid_n, 'an integer >= 3')
    if not tol >= 0:
        raise InvalidParameter('tol', tol, 'a non-negative real')
    xs = np.linspace(r.a, r.b, grid_n)
    ys = np.linspace(r.c, r.d, grid_n)
    witness = (_first_violation(g, 'x', xs, ys, tol)
               or _first_violation(g, 'y', ys, xs, tol))
    report = ConvexityReport(witness is None, witness, grid_n, to_text(g), tol)
    if witness is not None:
        logger.info('%s is not convex on the co-ordinates: %s', report.expression, witness)
    return report
