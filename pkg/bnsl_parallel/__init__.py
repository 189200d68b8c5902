default_app_config = "bnsl_parallel.apps.BnslParallelConfig"
