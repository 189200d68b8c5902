from django.apps import AppConfig


class BnslLocalConfig(AppConfig):
    name = "bnsl_local"
