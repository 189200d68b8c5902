from django.apps import AppConfig


class BnslGraphConfig(AppConfig):
    name = "bnsl_graph"
