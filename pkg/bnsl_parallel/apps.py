from django.apps import AppConfig


class BnslParallelConfig(AppConfig):
    name = "bnsl_parallel"
