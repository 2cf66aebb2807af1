import logging

from django.apps import AppConfig
from django.core.exceptions import ImproperlyConfigured

logger = logging.getLogger(__name__)


class EstimatorsConfig(AppConfig):
    name = "estimators"
    verbose_name = "Distribution estimators"

    def ready(self):
        from .kernels import SHIPPED_KERNELS, validate_kernel

        for kernel in SHIPPED_KERNELS.values():
            report = validate_kernel(kernel, kernel.order)
            if not report.passed:
                raise ImproperlyConfigured(
                    "kernel {!r} fails its own order conditions: {}".format(kernel.name, report)
                )
            logger.debug("kernel %s validated up to order %d", kernel.name, kernel.order)
