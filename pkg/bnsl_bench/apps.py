from django.apps import AppConfig


class BnslBenchConfig(AppConfig):
    name = "bnsl_bench"
