"""Exception hierarchy shared by every layer of the toolkit."""


class DRSError(Exception):
    """Base class for all toolkit errors."""


class FieldError(DRSError):
    pass


class ZeroInverse(FieldError, ZeroDivisionError):
    pass


class ZeroLog(FieldError, ValueError):
    pass


class ZeroScale(FieldError, ValueError):
    pass


class VanishesAtPivot(DRSError, ValueError):
    pass


class DegreeTooHigh(DRSError, ValueError):
    pass


class DimensionMismatch(DRSError, ValueError):
    pass


class Singular(DRSError, ValueError):
    pass


class IndexOutOfRange(DRSError, IndexError):
    pass


class LengthMismatch(DRSError, ValueError):
    pass


class DecodeFailure(DRSError):
    """Raised when a received word cannot be uniquely decoded."""


class OracleTooLarge(DRSError):
    pass


class TopologyError(DRSError, ValueError):
    """Malformed or unsupported network description."""


class UnsupportedTopology(TopologyError):
    """Well-formed but outside what the construction covers (more than three sources)."""


class NotInCapacityRegion(DRSError):
    def __init__(self, violated):
        self.violated = [tuple(s) for s in violated]
        names = ", ".join("{" + ",".join(f"S{i}" for i in s) + "}" for s in self.violated)
        super().__init__(f"rate vector outside the capacity region; violated cut(s): {names}")


class CaseClassificationFailure(DRSError):
    pass


class ConstructionError(DRSError):
    """A construction invariant failed; the instance is reported, never patched."""


class DegreeBoundViolation(ConstructionError):
    pass


class RankDeficient(ConstructionError):
    pass


class MaskViolation(ConstructionError):
    pass


class DuplicatePosition(DRSError, ValueError):
    pass


class ZeroErrorValue(DRSError, ValueError):
    pass
