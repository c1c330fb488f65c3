"""
Certified integration by quartering.

Every panel carries the a-priori T5 bound built from |fxy| at its own
corners. The panel with the largest area-weighted certificate is split
into four until the summed certificate drops below the tolerance; the rule
is then applied on each leaf and the panel integrals are summed.
"""
import heapq
import logging
import math
from typing import List, NamedTuple, Optional, Tuple

from core.conf import cubature_setting
from core.domain import Rectangle, RuleParams
from core.exceptions import BudgetExhausted, InvalidParameter
from bounds.estimates import bound_t5, corner_values
from cubature.rule import rule_breakdown
from exprmodel.function_model import FunctionModel
from oracle.quadrature import QuadConfig
from verify.convexity import is_coordinate_convex

logger = logging.getLogger(__name__)


class Panel(NamedTuple):
    rect: Rectangle
    estimate: float      # rule value, averaged over the panel
    certificate: float   # T5 bound on the panel average
    depth: int
    line_error: float = 0.0

    @property
    def integral(self) -> float:
        return self.estimate * self.rect.area


class CertifiedResult(NamedTuple):
    integral: float
    total_certificate: float
    panels: int
    lam: float
    hypothesis_checked: bool
    leaves: Tuple[Panel, ...] = ()
    line_error: float = 0.0
    tol: Optional[float] = None


class _Node(NamedTuple):
    rect: Rectangle
    depth: int
    certificate: float

    @property
    def raw(self) -> float:
        return self.certificate * self.rect.area


def _node(f: FunctionModel, r: Rectangle, params: RuleParams, depth: int) -> _Node:
    return _Node(r, depth, bound_t5(corner_values(f, r), r, params).value)


def _entry(node: _Node):
    # worst certificate first, then the lowest lower-left corner
    return (-node.raw, node.rect.a, node.rect.c, node)


def _finish(f, nodes: List[_Node], params, cfg, hypothesis, tol) -> CertifiedResult:
    nodes = sorted(nodes, key=lambda n: (n.rect.a, n.rect.c))
    leaves = []
    for node in nodes:
        breakdown = rule_breakdown(f, node.rect, params, cfg)
        leaves.append(Panel(node.rect, breakdown.average, node.certificate, node.depth,
                            breakdown.line_error))
    return CertifiedResult(
        integral=math.fsum(p.integral for p in leaves),
        total_certificate=math.fsum(p.certificate * p.rect.area for p in leaves),
        panels=len(leaves),
        lam=params.lam,
        hypothesis_checked=hypothesis,
        leaves=tuple(leaves),
        line_error=math.fsum(p.line_error * p.rect.area for p in leaves),
        tol=tol,
    )


def integrate_certified(f: FunctionModel, r: Rectangle, params: RuleParams, tol: float,
                        max_depth: int = None, cfg: QuadConfig = None,
                        max_panels: int = None) -> CertifiedResult:
    """
    Integral of ``f`` over ``r`` with |integral - true| <= total_certificate
    (plus the line-quadrature error) whenever |fxy| is convex on the
    co-ordinates of ``r``. The hypothesis is checked once on the root; a
    failing check is recorded as hypothesis_checked=False.

    Raises BudgetExhausted with the best partial result when the worst panel
    is at ``max_depth`` or another split would exceed ``max_panels``.
    """
    cfg = cfg or QuadConfig.from_settings()
    max_depth = max_depth if max_depth is not None else cubature_setting('ADAPTIVE_MAX_DEPTH')
    max_panels = max_panels if max_panels is not None else cubature_setting('ADAPTIVE_MAX_PANELS')
    if not (math.isfinite(tol) and tol >= 0):
        raise InvalidParameter('tol', tol, 'a finite real >= 0')
    if not (isinstance(max_depth, int) and max_depth >= 0):
        raise InvalidParameter('max_depth', max_depth, 'a non-negative integer')

    hypothesis = is_coordinate_convex(f.abs_fxy, r).passed
    if not hypothesis:
        logger.warning('|fxy| of %s is not convex on the co-ordinates of %s; certificate is advisory',
                       f.source_text, r.as_list())

    root = _node(f, r, params, 0)
    heap = [_entry(root)]
    total = root.raw
    while True:
        if total <= tol:
            total = math.fsum(entry[3].raw for entry in heap)
            if total <= tol:
                break
        worst = heap[0][3]
        reason = None
        if worst.depth >= max_depth:
            reason = f'maximum depth {max_depth} reached'
        elif len(heap) + 3 > max_panels:
            reason = f'panel budget {max_panels} exhausted'
        if reason:
            partial = _finish(f, [entry[3] for entry in heap], params, cfg, hypothesis, tol)
            logger.info('certified integration stopped: %s', reason)
            raise BudgetExhausted(partial, reason)
        heapq.heappop(heap)
        children = [_node(f, q, params, worst.depth + 1) for q in worst.rect.quadrants()]
        children_raw = math.fsum(child.raw for child in children)
        if children_raw > worst.raw * (1 + 1e-12):
            logger.warning('quartering %s raised the certificate from %r to %r',
                           worst.rect.as_list(), worst.raw, children_raw)
        logger.debug('split %s at depth %d', worst.rect.as_list(), worst.depth)
        total += children_raw - worst.raw
        for child in children:
            heapq.heappush(heap, _entry(child))

    result = _finish(f, [entry[3] for entry in heap], params, cfg, hypothesis, tol)
    logger.info('certified integral of %s: %r over %d panels, certificate %.3e',
                f.source_text, result.integral, result.panels, result.total_certificate)
    return result
