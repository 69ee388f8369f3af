class InputError(ValueError):
    """Malformed or inconsistent input: bad shapes, bad scalars, bad documents.

    ``locus`` names the offending line or field when one is known.
    """

    def __init__(self, message, locus=None):
        self.locus = locus
        if locus is not None:
            message = f"{locus}: {message}"
        super().__init__(message)


class PreconditionError(Exception):
    """An operation's structural precondition failed.

    Distinct from a plain failing check: the operation refused to run.
    The failing report is attached so callers can show the counterexample.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
