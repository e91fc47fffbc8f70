"""Exception types shared across the package."""


class NeuroscrubError(Exception):
    """Base class for all package-specific errors."""


class ShapeError(NeuroscrubError, ValueError):
    """An operand shape is inconsistent with the operation's contract."""


class FormatError(NeuroscrubError, ValueError):
    """A serialized model, key, plan or config file is malformed."""


class TransformError(NeuroscrubError, ValueError):
    """A transform argument violates a precondition (bad permutation,
    non-positive scale, sign flip on an ineligible block, ...)."""


class EmbedError(NeuroscrubError, RuntimeError):
    """Embedding failed to reach zero bit error within its budget."""

    def __init__(self, message, ber=None):
        super().__init__(message)
        self.ber = ber


class ConfigError(NeuroscrubError, ValueError):
    """A CLI or bench configuration is invalid."""
