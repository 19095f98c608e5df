'''
Exception hierarchy shared by every module of the package.

Kept free of internal imports so any module can raise these.
'''


# ==================================================================================================
class HybridFGError(Exception):
  '''
  Root of all errors raised by this package.

  `line` is filled in by the model file parser when the error can be traced
  back to a line of the source text.
  '''
  line: int | None

  def __init__(self, message: str, *, line: int | None = None) -> None:
    super().__init__(message)
    self.line = line
  # ----------------------------------------------------------------------------

  @property
  def message(self) -> str:
    return str(self.args[0]) if self.args else ''
  # ----------------------------------------------------------------------------

  def located(self, source: str = '') -> str:
    '''Message prefixed with `source:line:` when a location is known.'''
    prefix: str = f"{source}:" if source else ''
    if self.line is not None:
      prefix = f"{prefix}{self.line}:"
    return f"{prefix} {self.message}" if prefix else self.message
# ==================================================================================================


# ===== Structural validation ======================================================================
class ModelValidationError(HybridFGError):
  pass


class DuplicateName(ModelValidationError):
  pass


class InvalidName(ModelValidationError):
  pass


class UnknownVariable(ModelValidationError):
  pass


class UnknownNode(ModelValidationError):
  pass


class InvalidCardinality(ModelValidationError):
  pass


class NonDiscrete(ModelValidationError):
  pass


class PartitionViolation(ModelValidationError):
  pass


class DashedOverlap(ModelValidationError):
  pass


class TableShapeMismatch(ModelValidationError):
  pass


class NegativeOrNonFiniteValue(ModelValidationError):
  pass


class DirectedCycle(ModelValidationError):
  pass


class InvalidEvidence(ModelValidationError):
  pass
# ==================================================================================================


# ===== Table algebra ==============================================================================
class CardinalityMismatch(HybridFGError):
  pass


class UnknownAxis(HybridFGError):
  pass


class ZeroMass(HybridFGError):
  pass


class EnumerationLimitExceeded(HybridFGError):
  pass
# ==================================================================================================


# ===== Conversions ================================================================================
class ConversionError(HybridFGError):
  pass


class InvalidBayesNet(ModelValidationError):
  pass


class InvalidMarkovNet(ModelValidationError):
  pass


class UndirectedEdgePresent(ConversionError):
  pass


class MultiChildFunction(ConversionError):
  pass


class OrphanVariable(ConversionError):
  pass


class NormalizationFailure(ConversionError):
  pass


class PotentialNotOnMaximalClique(InvalidMarkovNet):
  pass


class DuplicatePotential(InvalidMarkovNet):
  pass
# ==================================================================================================


# ===== Queries ====================================================================================
class OverlappingSets(HybridFGError):
  pass


class NotUndirected(HybridFGError):
  pass


class NotATree(HybridFGError):
  pass


class InvalidParameter(HybridFGError):
  pass
# ==================================================================================================


# ===== Model files ================================================================================
class ParseError(HybridFGError):
  pass
# ==================================================================================================
