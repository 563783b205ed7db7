"""Exceptions shared by the evaluators (including the compiled kernel)."""


class BudgetExceeded(Exception):
    """Evaluation would exceed the ellipsis width or total step budget."""

    def __init__(self, kind, limit, requested=None):
        self.kind = kind
        self.limit = limit
        self.requested = requested
        if requested is None:
            msg = f"{kind} budget of {limit} exceeded"
        else:
            msg = f"{kind} budget of {limit} exceeded (needed {requested})"
        super().__init__(msg)


class Undetermined(Exception):
    """Raised by a host interpretation whose value is not known yet.

    Formula satisfaction turns this into an unknown verdict for the
    enclosing atom instead of failing.
    """
