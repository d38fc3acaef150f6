"""Exception hierarchy shared by every module."""


class LabconError(Exception):
    """Base class for all errors raised by this package."""


class UnknownLabel(LabconError):
    def __init__(self, label):
        super().__init__(f"unknown vertex label {label}")
        self.label = label


class NonEdge(LabconError):
    def __init__(self, u, v):
        super().__init__(f"({u}, {v}) is not an edge")
        self.u, self.v = u, v


class InvalidStep(LabconError):
    """A contraction sequence names a non-edge at application time."""

    def __init__(self, index, u=None, v=None):
        msg = f"invalid contraction at step {index}"
        if u is not None:
            msg += f": ({u}, {v}) is not an edge of the current graph"
        super().__init__(msg)
        self.index = index
        self.pair = (u, v)


class NotAPartition(LabconError):
    pass


class RepresentativeMismatch(LabconError):
    pass


class NotAContractionToH(LabconError):
    pass


class BudgetExceeded(LabconError):
    def __init__(self, budget, what="steps"):
        super().__init__(f"budget of {budget} {what} exceeded")
        self.budget = budget


class InvalidDecomposition(LabconError):
    pass


class InvalidInstance(LabconError):
    """Input violates an InstancePair invariant (e.g. V(H) not a subset of V(G))."""


class NegativeLiteral(LabconError):
    pass


class VariableOccursTooOften(LabconError):
    pass


class InvalidPartition(LabconError):
    pass


class TooManyVariables(LabconError):
    pass


class AssignmentDoesNotSatisfy(LabconError):
    pass


class ParseError(LabconError):
    def __init__(self, message, line=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.line = line
        self.path = path
