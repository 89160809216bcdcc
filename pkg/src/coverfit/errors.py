"""Exception taxonomy shared across the package."""


class CoverfitError(Exception):
    """Base class for all coverfit errors."""


class InputError(CoverfitError):
    """Invalid argument, file content, or dimension mismatch."""


class GenerationError(CoverfitError):
    """A random generator could not produce a valid object."""


class DegeneracyError(CoverfitError):
    """A linear system or frame fell below its conditioning guard."""
