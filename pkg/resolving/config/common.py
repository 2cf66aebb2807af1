"""Common settings for resolving."""
import environ

root = environ.Path(__file__) - 2  # two folders back (/a/b/c/ - 2 = /a/)
BASE_DIR = root()

env = environ.Env(
    DEBUG=(bool, False),
)  # set default values and casting


INSTALLED_APPS = (
    # Your apps
    "core_model",
    "estimators",
    "fluid_lp",
    "policy",
    "simulator",
    "cli",
)

SECRET_KEY = env("DJANGO_SECRET_KEY", default="Not a secret")

# No persistence: experiments write CSV files, nothing is stored in a database.
DATABASES = {}

TIME_ZONE = "UTC"
LANGUAGE_CODE = "en-us"
USE_I18N = False
USE_TZ = True

# Set DEBUG to False as a default for safety
# https://docs.djangoproject.com/en/dev/ref/settings/#debug
DEBUG = env("DEBUG")

##############
# Simulation #
##############
# quadrature points per axis for continuous external factors
RESOLVE_GRID_POINTS = env.int("RESOLVE_GRID_POINTS", default=512)
RESOLVE_KERNEL = env("RESOLVE_KERNEL", default="gaussian4")
RESOLVE_BANDWIDTH_CONSTANT = env.float("RESOLVE_BANDWIDTH_CONSTANT", default=1.0)
RESOLVE_BINDING_TOLERANCE = env.float("RESOLVE_BINDING_TOLERANCE", default=1e-7)
RESOLVE_CONDITION_LIMIT = env.float("RESOLVE_CONDITION_LIMIT", default=1e12)
RESOLVE_WORKERS = env.int("RESOLVE_WORKERS", default=1)

# reduced desk-scale protocol; --paper-protocol restores the full one
RESOLVE_DEFAULT_PROTOCOL = {
    "horizons": [5000, 10000, 20000, 40000],
    "n_estimations": 10,
    "n_trials": 100,
}
RESOLVE_PAPER_PROTOCOL = {
    "horizons": [5000 * 2 ** k for k in range(6)],
    "n_estimations": 50,
    "n_trials": 400,
}

# Logging
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "%(levelname)s %(asctime)s %(module)s %(process)d %(thread)d %(message)s"
        },
        "simple": {"format": "%(levelname)s %(message)s"},
    },
    "handlers": {
        "console": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "formatter": "simple",
        },
    },
    "loggers": {
        "core_model": {"handlers": ["console"], "level": "INFO"},
        "estimators": {"handlers": ["console"], "level": "INFO"},
        "fluid_lp": {"handlers": ["console"], "level": "INFO"},
        "policy": {"handlers": ["console"], "level": "INFO"},
        "simulator": {"handlers": ["console"], "level": "INFO"},
        "cli": {"handlers": ["console"], "level": "INFO"},
    },
}
