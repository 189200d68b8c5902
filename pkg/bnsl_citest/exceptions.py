from bn_learning.exceptions import BnslError


class CiTestError(BnslError):
    pass
