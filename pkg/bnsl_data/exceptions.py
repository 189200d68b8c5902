from bn_learning.exceptions import BnslError


class DataModelError(BnslError):
    pass
