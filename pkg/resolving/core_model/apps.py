from django.apps import AppConfig


class CoreModelConfig(AppConfig):
    name = "core_model"
    verbose_name = "Problem instances"
