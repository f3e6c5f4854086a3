"""Exception hierarchy shared by every module.

Each exception carries a short ``kind`` used by the CLI when it serialises
errors as ``{"error": {"kind": ..., "detail": ...}}``.
"""


class HochliftError(Exception):
    kind = "error"


class DomainError(HochliftError, ValueError):
    kind = "domain"


class DimensionMismatch(HochliftError, ValueError):
    kind = "dimension-mismatch"


class Infeasible(HochliftError):
    """A linear system has no solution.

    ``row`` is the index of the inconsistent row in the reduced augmented
    matrix and ``certificate`` that row itself (zeros followed by a nonzero
    right-hand side), so the failure can be re-checked independently.
    """

    kind = "infeasible"

    def __init__(self, msg="linear system is inconsistent", row=None, certificate=None):
        super().__init__(msg)
        self.row = row
        self.certificate = certificate


class DegreeOutOfRange(HochliftError, ValueError):
    kind = "degree-out-of-range"


class NotACocycle(HochliftError, ValueError):
    kind = "not-a-cocycle"


class NotASubalgebra(HochliftError, ValueError):
    kind = "not-a-subalgebra"


class NotALift(HochliftError, ValueError):
    kind = "not-a-lift"


class NotAssociative(HochliftError, ValueError):
    kind = "not-associative"


class NotCentral(HochliftError, ValueError):
    kind = "not-central"


class NotAMorphism(HochliftError, ValueError):
    kind = "not-a-morphism"


class NotALinearLift(HochliftError, ValueError):
    kind = "not-a-linear-lift"


class NotPreserved(HochliftError):
    """A subspace is not mapped into itself; ``witness`` is a basis vector
    whose image escapes."""

    kind = "not-preserved"

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class CenterNotPreserved(NotPreserved):
    kind = "center-not-preserved"


class NotCommutative(HochliftError, ValueError):
    kind = "not-commutative"


class NotDiagonal(HochliftError, ValueError):
    kind = "not-diagonal"


class NotARingMorphism(HochliftError, ValueError):
    kind = "not-a-ring-morphism"


class NotAnEndo(HochliftError, ValueError):
    kind = "not-an-endomorphism"


class MismatchedSignature(HochliftError, ValueError):
    kind = "mismatched-signature"
