"""Exception hierarchy for the polykern package."""


class PolykernError(Exception):
    """Base class for all polykern-specific errors."""


class DuplicatePointsError(PolykernError):
    """A point set contains exactly repeated rows."""


class UnsupportedFamily(PolykernError):
    """The requested node family does not exist or does not support the
    requested dimension."""


class NotUnisolvent(PolykernError):
    """The point set does not admit a unique interpolant for the given
    kernel parameters (rank-deficient Vandermonde / singular system)."""


class SingularSystem(PolykernError):
    """The symmetric factorization of the kernel matrix broke down."""


class CompletionFailed(PolykernError):
    """No candidate point raised the Vandermonde rank within the budget.

    Usually signals a degenerate candidate pool; retry with a larger
    budget or a wider sampling region.
    """


class CsvParseError(PolykernError):
    """A data file failed to parse.  Carries the 1-based line number."""

    def __init__(self, path, line_no, message):
        self.path = str(path)
        self.line_no = line_no
        super().__init__(f"{path}:{line_no}: {message}")
