from django.apps import AppConfig


class BnslCitestConfig(AppConfig):
    name = "bnsl_citest"
