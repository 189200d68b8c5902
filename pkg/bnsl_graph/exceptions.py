from bn_learning.exceptions import BnslError


class GraphError(BnslError):
    pass


class UnknownNodeError(GraphError):
    def __init__(self, name: str):
        super().__init__(f"Unknown node `{name}`.")
        self.name = name
