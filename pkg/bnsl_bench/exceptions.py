from bn_learning.exceptions import BnslError


class ExperimentError(BnslError):
    pass
