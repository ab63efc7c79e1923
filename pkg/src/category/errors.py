class CategoryError(Exception):
    """Base class for every error raised by the toolkit."""


class DomainMismatchError(CategoryError):
    """Morphisms are not composable or do not share the required object."""


class InstanceMismatchError(CategoryError):
    """Arguments belong to different category instances."""


class InvalidObjectError(CategoryError):
    pass


class InvalidMorphismError(CategoryError):
    pass


class FactorizationError(CategoryError):
    """A factorization that must exist could not be solved for."""


class UnknownInstanceError(CategoryError):
    pass


class CorpusError(CategoryError):
    """A probe corpus file or record is malformed."""


class InferenceContradiction(CategoryError):
    """Two certificate-backed facts contradict each other."""


class CertificateError(CategoryError):
    """A certificate does not re-verify."""


class NotApplicable(CategoryError):
    """A refutation strategy does not apply to its input."""
