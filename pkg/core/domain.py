"""
Immutable value objects shared by every module: the rectangle, the rule
parameter, the Hölder pair and the corner data of the mixed partial.
"""
import math
from dataclasses import dataclass
from typing import Iterator, Tuple

from .exceptions import (
    DegenerateRectangle, InvalidExponents, InvalidParameter, NegativeCorner,
    NonFiniteBound,
)

CONJUGACY_TOL = 1e-12


@dataclass(frozen=True)
class Rectangle:
    """Closed rectangle [a, b] x [c, d] with a < b and c < d."""
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        bounds = (self.a, self.b, self.c, self.d)
        if not all(math.isfinite(v) for v in bounds):
            raise NonFiniteBound(*bounds)
        if not (self.a < self.b and self.c < self.d):
            raise DegenerateRectangle(*bounds)

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def height(self) -> float:
        return self.d - self.c

    @property
    def area(self) -> float:
        return (self.b - self.a) * (self.d - self.c)

    @property
    def x_mid(self) -> float:
        return (self.a + self.b) / 2

    @property
    def y_mid(self) -> float:
        return (self.c + self.d) / 2

    def corners(self) -> Tuple[Tuple[float, float], ...]:
        """Corners in the order (a,c), (a,d), (b,c), (b,d)."""
        return ((self.a, self.c), (self.a, self.d), (self.b, self.c), (self.b, self.d))

    def quadrants(self) -> Tuple['Rectangle', ...]:
        """Split at both midlines; ordered by lower-left corner (x, then y)."""
        xm, ym = self.x_mid, self.y_mid
        return (
            Rectangle(self.a, xm, self.c, ym),
            Rectangle(self.a, xm, ym, self.d),
            Rectangle(xm, self.b, self.c, ym),
            Rectangle(xm, self.b, ym, self.d),
        )

    def as_list(self):
        return [self.a, self.b, self.c, self.d]


def validate_rectangle(a, b, c, d) -> Rectangle:
    """Build a Rectangle from raw bounds, raising on degenerate or non-finite input."""
    return Rectangle(float(a), float(b), float(c), float(d))


@dataclass(frozen=True)
class RuleParams:
    """The lambda of the rule family; 0 is midpoint-type, 1/3 Simpson-type, 1 trapezoid-type."""
    lam: float

    def __post_init__(self):
        if not (isinstance(self.lam, (int, float)) and 0.0 <= self.lam <= 1.0):
            raise InvalidParameter('lambda', self.lam, 'a real number in [0, 1]')

    @classmethod
    def midpoint(cls) -> 'RuleParams':
        return cls(0.0)

    @classmethod
    def simpson(cls) -> 'RuleParams':
        return cls(1.0 / 3.0)

    @classmethod
    def trapezoid(cls) -> 'RuleParams':
        return cls(1.0)

    @classmethod
    def named(cls, name: str) -> 'RuleParams':
        factories = {
            'midpoint': cls.midpoint,
            'simpson': cls.simpson,
            'trapezoid': cls.trapezoid,
        }
        try:
            return factories[name]()
        except KeyError:
            raise InvalidParameter('lambda-named', name, 'one of midpoint, simpson, trapezoid')


@dataclass(frozen=True)
class HolderExponents:
    """Conjugate pair 1/p + 1/q = 1 with p, q > 1."""
    p: float
    q: float

    def __post_init__(self):
        if not (self.p > 1 and self.q > 1):
            raise InvalidExponents(self.p, self.q, 'both exponents must exceed 1')
        if not (math.isfinite(self.p) and math.isfinite(self.q)):
            raise InvalidExponents(self.p, self.q, 'exponents must be finite')
        if abs(1.0 / self.p + 1.0 / self.q - 1.0) > CONJUGACY_TOL:
            raise InvalidExponents(self.p, self.q, '1/p + 1/q must equal 1')

    @classmethod
    def from_q(cls, q: float) -> 'HolderExponents':
        """q is primary; p = q / (q - 1)."""
        if not q > 1:
            raise InvalidExponents(None, q, 'q must exceed 1')
        return cls(q / (q - 1.0), q)


@dataclass(frozen=True)
class CornerData:
    """|d2f/dxdy| (or its q-th power) at (a,c), (a,d), (b,c), (b,d)."""
    v_ac: float
    v_ad: float
    v_bc: float
    v_bd: float

    def __post_init__(self):
        values = tuple(self)
        if any(not (v >= 0) for v in values):
            raise NegativeCorner(values)

    def __iter__(self) -> Iterator[float]:
        return iter((self.v_ac, self.v_ad, self.v_bc, self.v_bd))

    def mean(self) -> float:
        return math.fsum(self) / 4.0
