from django.apps import AppConfig


class FluidLpConfig(AppConfig):
    name = "fluid_lp"
    verbose_name = "Fluid linear programs"
