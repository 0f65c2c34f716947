"""Exception types shared across the package.

The CLI maps them to exit codes: format errors to 2, resource errors to 3.
"""


class FormatError(ValueError):
    """Malformed input data: bad permutation, dangling index, broken JSON shape."""


class ResourceError(RuntimeError):
    """A configured size bound was exceeded."""


class DomainError(ValueError):
    """A word was asked for its product but does not lie in the product domain."""


class ConjugationDomainError(ValueError):
    """Some member of a subgroup is outside the conjugation domain of ``g``."""

    def __init__(self, message: str, member=None):
        super().__init__(message)
        self.member = member


class HypothesisError(ValueError):
    """The stated hypothesis of an operation does not hold for the given input."""
