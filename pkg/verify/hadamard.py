"""The five-term Hadamard chain of a function on a rectangle."""
import logging
import math
from typing import NamedTuple

from core.domain import Rectangle
from cubature.rule import line_averages
from exprmodel.function_model import FunctionModel
from oracle.quadrature import QuadConfig, integrate_2d

logger = logging.getLogger(__name__)

# equality cases are compared at this relative scale
EQUALITY_RTOL = 1e-12


class HadamardChain(NamedTuple):
    v1: float   # value at the centre
    v2: float   # half-sum of the two midline averages
    v3: float   # average over the rectangle
    v4: float   # quarter-sum of the four edge averages
    v5: float   # corner mean
    err_est: float

    @property
    def values(self):
        return (self.v1, self.v2, self.v3, self.v4, self.v5)

    def slack(self) -> float:
        scale = max(1.0, max(abs(v) for v in self.values))
        return max(10 * self.err_est, EQUALITY_RTOL * scale)

    def is_monotone(self) -> bool:
        allowance = self.slack()
        values = self.values
        return all(lo <= hi + allowance for lo, hi in zip(values, values[1:]))

    def first_decrease(self):
        """Index i (1-based) of the first v_i > v_{i+1} beyond the slack, or None."""
        allowance = self.slack()
        for i, (lo, hi) in enumerate(zip(self.values, self.values[1:]), start=1):
            if lo > hi + allowance:
                return i
        return None


def hadamard_chain(f: FunctionModel, r: Rectangle, cfg: QuadConfig = None) -> HadamardChain:
    cfg = cfg or QuadConfig.from_settings()
    lines = line_averages(f, r, cfg)
    total = integrate_2d(f, r, cfg)
    corners = [f(x, y) for x, y in r.corners()]
    chain = HadamardChain(
        v1=f(r.x_mid, r.y_mid),
        v2=(lines.mid_x + lines.mid_y) / 2,
        v3=total.value / r.area,
        v4=math.fsum([lines.bottom, lines.top, lines.left, lines.right]) / 4,
        v5=math.fsum(corners) / 4,
        err_est=lines.error + total.err_est / r.area,
    )
    logger.debug('hadamard chain for %s: %r', f.source_text, chain.values)
    return chain
