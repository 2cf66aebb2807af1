"""Production settings, used on the batch machines that run full protocols."""
from .common import *  # noqa

DEBUG = False

RESOLVE_WORKERS = env.int("RESOLVE_WORKERS", default=8)

for logger in LOGGING["loggers"].values():
    logger["level"] = "WARNING"
LOGGING["loggers"]["simulator"]["level"] = "INFO"
LOGGING["handlers"]["console"]["formatter"] = "verbose"
