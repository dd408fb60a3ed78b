"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Malformed or out-of-range user input."""


class TooLarge(InvalidInput):
    """A configured size cap was exceeded."""


class DatumError(InvalidInput):
    """A Prym datum failed one or more validity conditions.

    ``failures`` lists the failed condition names, any of
    ``product``, ``generation``, ``trivial-entry``, ``normality``,
    ``degree``, ``centrality``.
    """

    def __init__(self, failures, detail=""):
        self.failures = list(failures)
        msg = "invalid datum: " + ", ".join(self.failures)
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class InternalInconsistency(RuntimeError):
    """Two independent computations of the same quantity disagreed."""
