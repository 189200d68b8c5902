from bn_learning.exceptions import BnslError


class LocalLearnConfigError(BnslError):
    pass
