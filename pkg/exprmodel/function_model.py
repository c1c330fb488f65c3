"""The parsed function f together with its symbolic mixed partial."""
import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

import numpy as np

from core.conf import cubature_setting

from .calculus import differentiate_xy, differentiate_yx, evaluate
from .nodes import Expr, Func, Num, Pow, to_text
from .parser import parse

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class FunctionModel:
    f: Expr
    fxy: Expr
    source_text: str
    fyx: Expr = field(compare=False, repr=False, default=None)

    @classmethod
    def from_text(cls, text: str) -> 'FunctionModel':
        tree = parse(text)
        return cls.from_expr(tree, source_text=text)

    @classmethod
    def from_expr(cls, tree: Expr, source_text: str = None) -> 'FunctionModel':
        fxy = differentiate_xy(tree)
        fyx = differentiate_yx(tree)
        model = cls(tree, fxy, source_text if source_text is not None else to_text(tree), fyx)
        logger.debug('f=%s fxy=%s', model.source_text, to_text(fxy))
        return model

    def __call__(self, x, y):
        return evaluate(self.f, x, y)

    def evaluate(self, x, y):
        return evaluate(self.f, x, y)

    def evaluate_fxy(self, x, y):
        return evaluate(self.fxy, x, y)

    @property
    def abs_fxy(self) -> Expr:
        return Func('abs', self.fxy)

    def abs_fxy_power(self, q: float) -> Expr:
        """|fxy|^q as an expression (built directly, without going through the parser)."""
        if q == 1:
            return self.abs_fxy
        return Pow(self.abs_fxy, Num(float(q)))

    def check_mixed_partial(self, points: Iterable[Tuple[float, float]], step: float = None,
                            rel_tol: float = 1e-5) -> List[Tuple[float, float, float, float]]:
        """
        Compare fxy with the central cross-difference stencil
        [f(x+h,y+h) - f(x+h,y-h) - f(x-h,y+h) + f(x-h,y-h)] / 4h^2.

        Returns the (x, y, symbolic, numeric) rows that disagree beyond
        ``rel_tol`` (relative to max(1, |symbolic|)); an empty list means agreement.
        """
        h = step if step is not None else cubature_setting('FD_STEP')
        pts = np.asarray(list(points), dtype=float).reshape(-1, 2)
        xs, ys = pts[:, 0], pts[:, 1]
        pp, pm = evaluate(self.f, xs + h, ys + h), evaluate(self.f, xs + h, ys - h)
        mp, mm = evaluate(self.f, xs - h, ys + h), evaluate(self.f, xs - h, ys - h)
        stencil = (pp - pm - mp + mm) / (4.0 * h * h)
        exact = evaluate(self.fxy, xs, ys)
        # cancellation in the stencil costs about eps*|f|/h^2
        magnitude = np.max(np.abs([pp, pm, mp, mm]), axis=0)
        allowed = rel_tol * np.maximum(1.0, np.abs(exact)) + 4 * EPS * magnitude / (h * h)
        bad = np.abs(stencil - exact) > allowed
        return [
            (float(x), float(y), float(s), float(n))
            for x, y, s, n in zip(xs[bad], ys[bad], exact[bad], stencil[bad])
        ]
