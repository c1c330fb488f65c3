"""Output rows shared by several commands."""
from bounds.estimates import BoundReport, Theorem
from verify.convexity import ConvexityReport, is_coordinate_convex


def hypothesis_holds(model, r, theorem: Theorem, q, cache: dict) -> bool:
    """Coordinate convexity of |fxy| (T5, or q = 1) or |fxy|^q, memoised per power."""
    power = 1.0 if theorem is Theorem.T5 or q is None else float(q)
    if power not in cache:
        cache[power] = is_coordinate_convex(model.abs_fxy_power(power), r).passed
    return cache[power]


def bound_row(report: BoundReport, model, r, cache: dict, actual: float = None, slack: float = 0.0) -> dict:
    row = {'theorem': report.theorem.value, 'lambda': report.lam, 'value': report.value}
    if report.p is not None:
        row['p'] = report.p
    if report.q is not None:
        row['q'] = report.q
    holds = hypothesis_holds(model, r, report.theorem, report.q, cache)
    row['hypothesis'] = 'OK' if holds else 'UNSOUND-HYPOTHESIS'
    if actual is not None:
        row['actual_error'] = actual
        if report.value > 0:
            row['ratio'] = actual / report.value
        # only a bound whose hypothesis holds can be violated
        row['violated'] = holds and actual > report.value + slack
    return row


def convexity_row(target: str, report: ConvexityReport) -> dict:
    return {
        'target': target,
        'expression': report.expression,
        'passed': report.passed,
        'grid_n': report.grid_n,
        'tol': report.tol,
        'witness': report.witness._asdict() if report.witness else None,
    }


def error_slack(exact, area: float, line_error: float) -> float:
    """Quadrature noise allowed on top of a bound before a row counts as violated."""
    average = exact.value / area
    return 10 * exact.err_est / area + 10 * line_error + 1e-12 * max(1.0, abs(average))
