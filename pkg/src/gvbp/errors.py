class GvbpError(Exception):
    """Base class for all solver errors."""


class InvalidItem(GvbpError, ValueError):
    pass


class DuplicateItemId(GvbpError, ValueError):
    pass


class MediumItem(GvbpError, ValueError):
    pass


class SizeOutOfRange(GvbpError, ValueError):
    pass


class WidthExceedsStrip(GvbpError, ValueError):
    pass


class ItemExceedsBin(GvbpError, ValueError):
    pass


class ConditionNotMet(GvbpError):
    """The area inequality that guarantees a packing does not hold."""


class Infeasible(GvbpError):
    pass


class PreconditionViolated(GvbpError, ValueError):
    pass


class InvalidInputPacking(GvbpError, ValueError):
    pass


class InstanceTooLarge(GvbpError, ValueError):
    pass


class NonGridInstance(GvbpError, ValueError):
    pass


class IterationCapExceeded(GvbpError):
    pass


class MixedPartition(GvbpError, ValueError):
    pass


class SlacknessViolated(GvbpError):
    pass


class SubroutineContractViolated(GvbpError):
    pass
