"""Exception hierarchy.

Three families, mirroring the CLI exit codes:

* :class:`FusionRingError` and :class:`ModelFileError` -- bad input (exit 2).
* :class:`InvariantBreach` -- a structural guarantee failed to hold on
  validated input, which points at corrupted data or a tolerance that is
  too loose or too tight (exit 3).
* :class:`UnsupportedOperation` -- the requested analysis needs data the
  ring does not carry (an S-matrix, conformal weights) or its
  preconditions are not met (exit 2).
"""


class FCError(Exception):
    """Base class for all errors raised by this package."""


# -- input validation -------------------------------------------------------

class FusionRingError(FCError, ValueError):
    """Raw fusion data violates a fusion-ring axiom."""


class NegativeEntry(FusionRingError):
    pass


class NonIntegerEntry(FusionRingError):
    pass


class UnitViolation(FusionRingError):
    pass


class CommutativityViolation(FusionRingError):
    pass


class AssociativityViolation(FusionRingError):
    pass


class ConjugationViolation(FusionRingError):
    pass


class DimensionViolation(FusionRingError):
    pass


class SMatrixViolation(FusionRingError):
    pass


class SMatrixInconsistent(FusionRingError):
    pass


class DegenerateSpectrum(FusionRingError):
    pass


class NotFusionClosed(FCError, ValueError):
    """A subset offered as an FC set is not fusion closed."""


class ModelFileError(FCError, ValueError):
    """Base class for model-file parse errors."""


class ModelSyntaxError(ModelFileError):
    pass


class ModelRangeError(ModelFileError):
    pass


class DuplicateEntry(ModelFileError):
    pass


# -- missing data / preconditions --------------------------------------------

class UnsupportedOperation(FCError):
    pass


class MissingSMatrix(UnsupportedOperation):
    """The operation needs characters labelled by primaries, i.e. an S-matrix."""


class MissingWeights(UnsupportedOperation):
    pass


class PreconditionError(UnsupportedOperation, ValueError):
    pass


class NotASubgroup(PreconditionError):
    pass


class NoSuchExtension(UnsupportedOperation):
    pass


class NonIntegralInputs(UnsupportedOperation):
    pass


class LatticeTooLarge(UnsupportedOperation):
    pass


# -- invariant breaches -------------------------------------------------------

class InvariantBreach(FCError):
    """A guaranteed identity failed on validated input."""


class ToleranceAmbiguity(InvariantBreach):
    pass


class BlockClassMismatch(InvariantBreach):
    pass


class OverlapMismatch(InvariantBreach):
    pass


class NonIntegralOverlap(InvariantBreach):
    pass


class JoinFormulaMismatch(InvariantBreach):
    pass


class CenterCriteriaMismatch(InvariantBreach):
    pass


class IllDefinedAction(InvariantBreach):
    pass


class AbelianCriteriaMismatch(InvariantBreach):
    pass


class QuotientDualMismatch(InvariantBreach):
    pass


class LocalityCriteriaMismatch(InvariantBreach):
    pass


class NoRamondClass(InvariantBreach):
    pass


class AmbiguousRamondClass(InvariantBreach):
    pass


class RamondCriteriaViolation(InvariantBreach):
    pass
