"""Exception hierarchy.

Every error carries a stable string ``code`` used by the CLI's
machine-readable error output. Failures raised while reconstructing a graph
that is outside the promised class all share the code ``InconsistentInput``;
the concrete subclass name is reported separately as ``reason``.
"""


class SphereReconError(Exception):
    code = "SphereReconError"

    @property
    def reason(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict:
        return {"error": self.code, "reason": self.reason, "message": str(self)}


# complexes
class NonUniformFacet(SphereReconError):
    code = "NonUniformFacet"


class DuplicateFacet(SphereReconError):
    code = "DuplicateFacet"


class FaceNotInComplex(SphereReconError):
    code = "FaceNotInComplex"


# generators
class BadParameter(SphereReconError):
    code = "BadParameter"


# shelling
class NotAPermutation(SphereReconError):
    code = "NotAPermutation"


class NotAShelling(SphereReconError):
    code = "NotAShelling"


class SearchBudgetExceeded(SphereReconError):
    code = "SearchBudgetExceeded"


# orientation
class CyclicOrientation(SphereReconError):
    code = "CyclicOrientation"


class EmptyGraph(SphereReconError):
    code = "EmptyGraph"


class GraphMismatch(SphereReconError):
    code = "GraphMismatch"


class NotGood(SphereReconError):
    code = "NotGood"


# frames and systems
class FaceEmptyMismatch(SphereReconError):
    code = "FaceEmptyMismatch"


class NoUniqueSink(SphereReconError):
    code = "NoUniqueSink"


class IncompleteOrientationSet(SphereReconError):
    code = "IncompleteOrientationSet"


class MissingLevel(SphereReconError):
    code = "MissingLevel"


class NotUnique(SphereReconError):
    code = "NotUnique"


# reconstruction input checks
class NotRegular(SphereReconError):
    code = "NotRegular"


class Disconnected(SphereReconError):
    code = "Disconnected"


class InconsistentInput(SphereReconError):
    code = "InconsistentInput"


NotAcyclic = CyclicOrientation


# specific ways a graph turns out not to be a shellable sphere


class PeelStuck(InconsistentInput):
    pass


class StitchAmbiguity(InconsistentInput):
    pass


class FrameLookupMiss(InconsistentInput):
    pass


class NonRegularClosure(InconsistentInput):
    pass


class AssemblyMismatch(InconsistentInput):
    pass


# io / cli
class VerificationFailed(SphereReconError):
    code = "VerificationFailed"


class InvalidInput(SphereReconError):
    code = "InvalidInput"
