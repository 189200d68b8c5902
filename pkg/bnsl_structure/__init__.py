default_app_config = "bnsl_structure.apps.BnslStructureConfig"
