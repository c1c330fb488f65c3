"""Access to the ``CUBATURE`` settings dictionary with built-in fallbacks."""
from django.conf import settings

DEFAULTS = {
    'QUAD_ABS_TOL': 1e-12,
    'QUAD_REL_TOL': 1e-12,
    'QUAD_MAX_DEPTH': 50,
    'QUAD_NODES': 16,
    'LINE_TOLERANCE_FACTOR': 100,
    'INNER_TOLERANCE_FACTOR': 10,
    'CONVEXITY_GRID_N': 33,
    'CONVEXITY_TOL': 1e-10,
    'Q_GRID': [1.0, 2.0, 3.0, 5.0],
    'IDENTITY_LAMBDAS': [0.0, 1.0 / 3.0, 0.5, 1.0],
    'ADAPTIVE_MAX_DEPTH': 12,
    'ADAPTIVE_MAX_PANELS': 4096,
    'FD_STEP': 1e-4,
}


def cubature_setting(name):
    """Return ``settings.CUBATURE[name]``, falling back to the built-in default."""
    overrides = getattr(settings, 'CUBATURE', {})
    if name in overrides:
        return overrides[name]
    return DEFAULTS[name]
