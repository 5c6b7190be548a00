"""Exception hierarchy for dgatool."""


class DGAError(Exception):
    """Base class for all library errors."""


class AxiomViolation(DGAError):
    """A table description fails one of the CDGA axioms.

    ``kind`` is one of ``commutativity``, ``associativity``, ``leibniz``,
    ``d_squared``, ``unit``; ``witness`` is the offending basis tuple.
    """

    KINDS = ("commutativity", "associativity", "leibniz", "d_squared", "unit")

    def __init__(self, kind, witness, message=""):
        assert kind in self.KINDS, kind
        self.kind = kind
        self.witness = tuple(witness)
        super().__init__(f"{kind} violated at {self.witness}" + (f": {message}" if message else ""))


class CapExceeded(DGAError):
    """A computation needs data above the stored degree cap."""


class DegreeMismatch(DGAError):
    pass


class MissingWeights(DGAError):
    pass


class NotCocycle(DGAError):
    pass


class ProductNotExact(DGAError):
    pass


class EvenGeneratorDegree(DGAError):
    pass


class ClassesDiffer(DGAError):
    pass


class NoPrimitive(DGAError):
    pass


class NotZeroDifferential(DGAError):
    pass


class OddDegreeElement(DGAError):
    pass


class BasisSplitInvalid(DGAError):
    pass


class DepthGuardExceeded(DGAError):
    pass


class NonHomogeneousPresentation(DGAError):
    """Eliminating generators left a relator that mixes bracket lengths."""


class ShapeMismatch(DGAError):
    pass


class NotFlat(DGAError):
    pass


class StratumViolation(DGAError):
    pass


class NotPD(DGAError):
    pass
