from django.apps import AppConfig


class BnslDataConfig(AppConfig):
    name = "bnsl_data"
