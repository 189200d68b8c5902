default_app_config = "bnsl_graph.apps.BnslGraphConfig"
