default_app_config = "bnsl_citest.apps.BnslCitestConfig"
