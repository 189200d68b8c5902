default_app_config = "bnsl_local.apps.BnslLocalConfig"
