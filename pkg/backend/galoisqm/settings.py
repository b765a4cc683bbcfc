"""
Django settings for galoisqm project.

The project has no HTTP surface and no database; it is driven through the
``gqm`` management command (see reports/management/commands/gqm.py).

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.0/ref/settings/
"""

from pathlib import Path
import environ

from . import __version__

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Environment variables
env = environ.Env()
environ.Env.read_env(BASE_DIR.parent / '.env')


# Only used to satisfy Django's startup checks; nothing is signed.
SECRET_KEY = 'galoisqm-local-only-not-a-secret'

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    # Third party apps
    'rest_framework',

    # Local apps
    'fields',
    'geometry',
    'spin',
    'entanglement',
    'correlations',
    'hidden_variables',
    'symmetry',
    'reports',
]

MIDDLEWARE = []

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'autoescape': False,
        },
    },
]

# No models, no database.
DATABASES = {}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Logging: everything goes to stderr so that reports on stdout stay deterministic.
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
        name: {'handlers': ['console'], 'level': 'WARNING', 'propagate': False}
        for name in (
            'fields', 'geometry', 'spin', 'entanglement', 'correlations',
            'hidden_variables', 'symmetry', 'reports',
        )
    },
}

# REST Framework Configuration (serializers and the JSON renderer only)
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNICODE_JSON': True,
    'COMPACT_JSON': False,
}

# GQM engine configuration
GQM_TOOL_VERSION = __version__

# Largest field order q = p^n for which tables are built
GQM_MAX_FIELD_ORDER = 16

GQM_DEFAULT_THREADS = 1

# Listing caps; totals are always reported in full
GQM_CHSH_ACHIEVER_LIMIT = 2000
GQM_HV_SURVIVOR_LIMIT = 4096

GQM_GOLDEN_DIR = BASE_DIR / 'reports' / 'golden'

# The single environment override: where relative --output paths land
GQM_OUTPUT_DIR = Path(env('GQM_OUTPUT_DIR', default='.'))
