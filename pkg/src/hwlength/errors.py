"""Exception types shared across the package."""


class HWLengthError(Exception):
    """Base class for all package errors."""


class InvalidInput(HWLengthError, ValueError):
    pass


class NotPrime(InvalidInput):
    def __init__(self, p):
        super().__init__(f"{p} is not an odd prime below 2^62")
        self.p = p


class ReducibleModulus(InvalidInput):
    pass


class DegreeMismatch(InvalidInput):
    pass


class UnsupportedExtensionDegree(InvalidInput):
    pass


class ParseError(InvalidInput):
    """Malformed polynomial text; ``position`` is a 0-based character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(InvalidInput):
    def __init__(self, name, position=None):
        super().__init__(f"unknown variable {name!r}")
        self.name = name
        self.position = position


class VanishesModP(InvalidInput):
    pass


class ResourceError(HWLengthError):
    """A configured work or memory cap was hit."""


class OutOfMemoryBudget(ResourceError):
    def __init__(self, estimated_terms, budget):
        super().__init__(
            f"dense expansion needs ~{estimated_terms} coefficients, budget is {budget}")
        self.estimated_terms = estimated_terms
        self.budget = budget


class ResourceCap(ResourceError):
    def __init__(self, steps):
        super().__init__(f"step cap reached after {steps} reductions")
        self.steps = steps


class WorkCapExceeded(ResourceError):
    pass
