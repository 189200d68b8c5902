from django.apps import AppConfig


class BnslStructureConfig(AppConfig):
    name = "bnsl_structure"
