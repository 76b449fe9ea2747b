"""Exception hierarchy shared by every swih module."""


class SwihError(ValueError):
    pass


class ZeroMassError(SwihError):
    """Histogram has no mass to normalize (empty or fully masked region)."""


class InvalidKernelError(SwihError):
    pass


class OutOfRangeError(SwihError):
    pass


class UnsupportedKernelError(SwihError):
    pass


class BoundsError(SwihError):
    pass


class WindowOutOfBoundsError(BoundsError):
    pass


class CapacityError(SwihError):
    def __init__(self, required_bytes, budget_bytes):
        self.required_bytes = required_bytes
        self.budget_bytes = budget_bytes
        super().__init__(
            f"integral tables need {required_bytes} bytes, budget is {budget_bytes} bytes"
        )


class ConfigError(SwihError):
    pass


class ModelError(SwihError):
    pass


class SizeError(SwihError):
    pass


class SpecError(SwihError):
    pass


class PGMError(SwihError):
    pass
