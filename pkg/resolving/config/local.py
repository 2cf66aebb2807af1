"""local settings."""
from .common import *  # noqa

DEBUG = env("DEBUG", default=True)

# Testing
TEST_RUNNER = "django.test.runner.DiscoverRunner"

for name in ("core_model", "estimators", "fluid_lp", "policy", "simulator"):
    LOGGING["loggers"][name]["level"] = "DEBUG" if DEBUG else "INFO"
# per-round policy messages drown everything else even in development
LOGGING["loggers"]["policy"]["level"] = "INFO"
