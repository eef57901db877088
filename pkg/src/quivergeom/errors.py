"""Exception hierarchy shared by all modules."""


class QuivergeomError(Exception):
    """Base class for all library errors."""


class DivisionByZero(QuivergeomError, ZeroDivisionError):
    pass


class UnboundVariable(QuivergeomError):
    pass


class DenominatorVanishes(QuivergeomError):
    pass


class NotAGroup(QuivergeomError):
    pass


class NotAdStable(QuivergeomError):
    pass


class CocycleInvalid(QuivergeomError):
    pass


class BarNotDigraph(QuivergeomError):
    pass


class TripleInvalid(QuivergeomError):
    def __init__(self, axiom, message=""):
        self.axiom = axiom
        super().__init__(f"Hopf digraph-quiver triple axiom ({axiom}) fails. {message}".strip())


class ActionInvalid(QuivergeomError):
    pass


class NoLoopAtIdentity(QuivergeomError):
    pass


class DiagonalTheta(QuivergeomError):
    pass


class ThetaNotInvariant(QuivergeomError):
    pass


class BraidingConditionFails(QuivergeomError):
    pass


class QuiverNotSymmetric(QuivergeomError):
    pass


class SingularEdgeMatrix(QuivergeomError):
    def __init__(self, source, target):
        self.source = source
        self.target = target
        super().__init__(f"metric matrix on edge pair {source}->{target} is singular")


class NotBimoduleMap(QuivergeomError):
    pass


class InnerFormulaMismatch(QuivergeomError):
    pass


class LiftNotSection(QuivergeomError):
    pass


class SpectrumNotInField(QuivergeomError):
    def __init__(self, charpoly_text):
        self.charpoly_text = charpoly_text
        super().__init__(f"characteristic polynomial has roots outside the ground field: {charpoly_text}")


class NotLeftCovariant(QuivergeomError):
    pass


class GradingMismatch(QuivergeomError):
    pass


class DegenerateM(QuivergeomError):
    pass


class BundleConditionsFail(QuivergeomError):
    pass


class UnknownPreset(QuivergeomError):
    pass
