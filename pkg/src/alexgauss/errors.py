"""Exception hierarchy shared by all modules."""


class AlexGaussError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(AlexGaussError, ValueError):
    pass


class ContextError(AlexGaussError, ValueError):
    """Operands live on different leg sets or truncations."""


class DegenerateInputError(AlexGaussError, ValueError):
    pass


class ParityError(AlexGaussError, ValueError):
    """A polynomial expected to be even in T has an odd exponent."""


class DomainError(AlexGaussError, ValueError):
    pass


class SingularContractionError(AlexGaussError, ArithmeticError):
    pass


class LabelingError(AlexGaussError, ValueError):
    pass


class ParseError(AlexGaussError, ValueError):
    pass


class TwistError(AlexGaussError, ValueError):
    pass


class PipelineError(AlexGaussError, RuntimeError):
    pass
