class EngineError(Exception):
    """Base class for every failure raised by the spectra engine."""


class RegionError(EngineError):
    """Malformed region expression or primitive."""


class ModelError(EngineError):
    """Operator model outside the supported catalog."""


class TruncationError(EngineError):
    """A finite section was requested with too few rows or columns."""


class VariantError(EngineError):
    """Unknown or unsupported theorem variant, kind or tuple length."""


class NoCompletionExists(EngineError):
    """The spectral parameter lies in the intersection spectrum."""


class HypothesisUnsatisfied(EngineError):
    """The dimension hypothesis of the requested variant fails at the parameter."""


class VerificationFailed(EngineError):
    """An assembled completion does not achieve its target.

    ``witness`` holds whatever exhibits the failure: a kernel vector per block,
    or the slot functionals left unmatched.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ConfigError(EngineError):
    """Invalid job configuration or model expression."""
