"""
Django settings for the cubature_toolkit project.

For more information on this file, see
https://docs.djangoproject.com/en/5.2/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# The toolkit serves no HTTP traffic; the key only satisfies Django's checks.
SECRET_KEY = os.environ.get('CUBATURE_SECRET_KEY', 'cubature-toolkit-local-only')

DEBUG = os.environ.get('CUBATURE_DEBUG', '') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'rest_framework',
    'core',
    'exprmodel',
    'oracle',
    'cubature',
    'bounds',
    'verify',
    'adaptive',
    'reporting',
]


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases
# Only the optional run log (``--save``) touches it.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# REST Framework configuration (serializers and JSON rendering of run records)
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNAUTHENTICATED_USER': None,
    'COMPACT_JSON': True,
    'STRICT_JSON': True,
}


# Logging: everything goes to standard error so --json output stays clean.
LOG_LEVEL = os.environ.get('CUBATURE_LOG_LEVEL', 'WARNING').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        }
        for app in ('core', 'exprmodel', 'oracle', 'cubature', 'bounds',
                    'verify', 'adaptive', 'reporting')
    },
}


# Cubature toolkit defaults. Explicit arguments always win over these.
CUBATURE = {
    # Reference quadrature (oracle.QuadConfig.from_settings)
    'QUAD_ABS_TOL': 1e-12,
    'QUAD_REL_TOL': 1e-12,
    'QUAD_MAX_DEPTH': 50,
    'QUAD_NODES': 16,
    # Tolerance tightening for line integrals inside the rule and for the
    # inner integrals of the tensor rule
    'LINE_TOLERANCE_FACTOR': 100,
    'INNER_TOLERANCE_FACTOR': 10,
    # Coordinate-convexity check
    'CONVEXITY_GRID_N': 33,
    'CONVEXITY_TOL': 1e-10,
    # Bounds
    'Q_GRID': [1.0, 2.0, 3.0, 5.0],
    # verify-identity default lambda list
    'IDENTITY_LAMBDAS': [0.0, 1.0 / 3.0, 0.5, 1.0],
    # Certified adaptive integration budget
    'ADAPTIVE_MAX_DEPTH': 12,
    'ADAPTIVE_MAX_PANELS': 4096,
    # Finite-difference step of the mixed-partial self-check
    'FD_STEP': 1e-4,
}
