"""Exception hierarchy shared by all analysis modules."""


class CurvatureError(Exception):
    """Base class for every error raised by orcurv."""


class GraphError(CurvatureError):
    pass


class EdgeListParseError(GraphError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DuplicateEdgeError(EdgeListParseError):
    pass


class LoopError(EdgeListParseError):
    pass


class NonPositiveWeightError(EdgeListParseError):
    pass


class NotAdjacentError(CurvatureError):
    pass


class IsolatedVertexError(CurvatureError):
    pass


class DegreeError(CurvatureError):
    """Raised when a vertex degree is too small for the requested quantity."""


class ComponentError(CurvatureError):
    """Vertices or measures live in different connected components."""


class SameVertexError(CurvatureError):
    pass


class SupportTooLargeError(CurvatureError):
    pass


class WeightedGraphError(CurvatureError):
    """An unweighted-only quantity was requested on a graph with non-unit weights."""


class HypothesisError(CurvatureError):
    """Curvature data contradicts the assumption of a conditional bound."""


class DomainError(CurvatureError):
    """A function on a ball does not match the ball it is evaluated on."""


class NumericalError(CurvatureError):
    pass


class FamilySpecError(CurvatureError):
    pass
