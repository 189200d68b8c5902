default_app_config = "bnsl_bench.apps.BnslBenchConfig"
