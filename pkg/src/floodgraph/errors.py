"""Exception hierarchy shared by every module of the package."""


class GraphError(Exception):
    """Base class for all data errors raised by floodgraph."""


class DuplicateEdge(GraphError):
    pass


class DanglingEndpoint(GraphError):
    pass


class PartialWeightMap(GraphError):
    pass


class UnknownNode(GraphError):
    pass


class IsolatedNode(GraphError):
    """Raised when an erosion/dilation needs an incident edge that does not exist."""

    def __init__(self, node: int):
        super().__init__(f"node {node} has no incident edge")
        self.node = node


class NoOutgoingArrow(GraphError):
    def __init__(self, node: int):
        super().__init__(f"node {node} is the origin of no arrow")
        self.node = node


class NotAFloodingGraph(GraphError):
    pass


class NotAPath(GraphError):
    pass


class DoesNotReachMinimum(GraphError):
    pass


class NoMinima(GraphError):
    pass


class MissingDepth(GraphError):
    pass


class InstanceTooLarge(GraphError):
    """Brute-force oracles refuse instances above their size guard."""


class UnsupportedFormat(GraphError):
    pass


class TruncatedData(GraphError):
    pass


class GraphSyntaxError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
