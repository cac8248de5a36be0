class ElectricalLieError(Exception):
    pass


class UnsupportedType(ElectricalLieError, ValueError):
    pass


class NotAPositiveRoot(ElectricalLieError, ValueError):
    pass


class DiagramMismatch(ElectricalLieError, ValueError):
    pass


class MissingAssignment(ElectricalLieError, KeyError):
    pass


class DimensionMismatch(ElectricalLieError, ValueError):
    pass


class NotFaithfulAtThisRank(ElectricalLieError):
    pass


class NotClosed(ElectricalLieError):
    pass


class ClosureDiverged(ElectricalLieError):
    def __init__(self, message: str, steps: int = 0, level: int = 0):
        super().__init__(message)
        self.steps = steps
        self.level = level


class InconsistentPresentation(ElectricalLieError):
    pass


class ExpansionFailed(ElectricalLieError):
    pass


class BasisMismatch(ElectricalLieError):
    pass


class NonDominant(ElectricalLieError, ValueError):
    pass


class Unsupported(ElectricalLieError):
    pass
