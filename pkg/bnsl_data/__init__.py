default_app_config = "bnsl_data.apps.BnslDataConfig"
