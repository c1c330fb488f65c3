"""
Exception hierarchy shared by every app of the toolkit.

Each class also derives from the closest built-in so that callers who only
know about ``ValueError`` or ``ArithmeticError`` still catch it.
"""


class CubatureError(Exception):
    """Base class for all toolkit errors."""


# Domain construction

class DegenerateRectangle(CubatureError, ValueError):
    def __init__(self, a, b, c, d):
        self.bounds = (a, b, c, d)
        super().__init__(
            f"degenerate rectangle [{a}, {b}] x [{c}, {d}]: need a < b and c < d"
        )


class NonFiniteBound(CubatureError, ValueError):
    def __init__(self, a, b, c, d):
        self.bounds = (a, b, c, d)
        super().__init__(f"rectangle bounds must be finite, got {(a, b, c, d)}")


class InvalidParameter(CubatureError, ValueError):
    def __init__(self, name, value, expected):
        self.name = name
        self.value = value
        super().__init__(f"{name}={value!r} is invalid: expected {expected}")


class InvalidExponents(CubatureError, ValueError):
    def __init__(self, p=None, q=None, reason=''):
        self.p = p
        self.q = q
        super().__init__(f"invalid exponents p={p!r}, q={q!r}: {reason}")


class NegativeCorner(CubatureError, ValueError):
    def __init__(self, values):
        self.values = tuple(values)
        super().__init__(f"corner data must be non-negative, got {self.values}")


# Expressions

class ExpressionSyntaxError(CubatureError, ValueError):
    def __init__(self, message, offset, text=''):
        self.offset = offset
        self.text = text
        super().__init__(f"syntax error at offset {offset}: {message}")


class UnknownIdentifier(ExpressionSyntaxError):
    def __init__(self, name, offset, text=''):
        self.name = name
        super().__init__(f"unknown identifier {name!r}", offset, text)


class NotDifferentiable(CubatureError, ValueError):
    def __init__(self, node_text, reason='abs() of a variable-dependent argument'):
        self.node_text = node_text
        super().__init__(f"cannot differentiate {node_text}: {reason}")


class DomainError(CubatureError, ArithmeticError):
    def __init__(self, node_text, x, y, reason):
        self.node_text = node_text
        self.point = (x, y)
        self.reason = reason
        super().__init__(f"{reason} in {node_text} at (x={x!r}, y={y!r})")


class OutOfDomain(CubatureError, ValueError):
    def __init__(self, coordinate, lo, hi):
        self.coordinate = coordinate
        self.interval = (lo, hi)
        super().__init__(f"{coordinate!r} lies outside [{lo}, {hi}]")


# Integration

class ToleranceNotMet(CubatureError, ArithmeticError):
    def __init__(self, value, err_est, target, reason='maximum depth reached'):
        self.value = value
        self.err_est = err_est
        self.target = target
        self.reason = reason
        super().__init__(
            f"{reason}: best value {value!r} with error estimate "
            f"{err_est:.3e} > requested {target:.3e}"
        )


class BudgetExhausted(CubatureError, ArithmeticError):
    def __init__(self, partial, reason):
        self.partial = partial
        super().__init__(
            f"{reason}: best certificate {partial.total_certificate:.3e} "
            f"over {partial.panels} panels"
        )
