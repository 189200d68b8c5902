from bn_learning.exceptions import BnslError


class LearnConfigError(BnslError):
    pass
