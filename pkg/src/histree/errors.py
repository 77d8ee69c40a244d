"""Exception types shared across the package."""

from __future__ import annotations


class GraphError(ValueError):
    """Malformed graph data: bad ids, loops, parallel edges, unreadable files."""


class PreconditionError(ValueError):
    """An operation was called on input outside its documented domain."""


class NoStarCoverError(RuntimeError):
    """The star-cover search found no cover with the requested star size.

    This is a legitimate negative outcome, not a defect.
    """


class InternalBugError(RuntimeError):
    """A constructive step produced something its certificate rejects.

    Every construction in this package is backed by a proof that guarantees
    success, so reaching this means the implementation is wrong. ``trace``
    holds the case labels visited up to the failure.
    """

    def __init__(self, message: str, trace=(), state=None):
        super().__init__(message)
        self.trace = tuple(trace)
        self.state = state

    def __str__(self) -> str:
        base = super().__str__()
        if self.trace:
            return f"{base} [trace: {' > '.join(self.trace)}]"
        return base
