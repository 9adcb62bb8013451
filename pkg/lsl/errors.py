# lsl/errors.py
"""Exception types raised by the library. All derive from ValueError."""


class LSLError(ValueError):
    """Base class for every library failure."""


class InputValidationError(LSLError):
    """Input matrix, frame, subset or loop fails validation."""


class CayleyPoleError(LSLError):
    def __init__(self, message: str = "Cayley pole: −1 in spectrum"):
        super().__init__(message)


class ChartError(LSLError):
    def __init__(self, message: str = "lagrangian outside Arnold chart"):
        super().__init__(message)


class FlowHorizonError(LSLError):
    def __init__(self, message: str = "flow horizon exceeded; rescale t"):
        super().__init__(message)


class SpectralGapError(LSLError):
    def __init__(self, message: str = "spectral gap too small to classify"):
        super().__init__(message)


class LimitNotResolvedError(LSLError):
    def __init__(self, message: str = "limit not resolved"):
        super().__init__(message)


class LoopSamplingError(LSLError):
    def __init__(self, message: str = "loop undersampled"):
        super().__init__(message)


class BranchMatchingError(LSLError):
    def __init__(self, message: str = "non-generic loop; perturb ρ"):
        super().__init__(message)
