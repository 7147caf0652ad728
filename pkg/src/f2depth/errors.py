"""Exceptions shared across the package."""


class CutoffInsufficient(RuntimeError):
    """The degree cutoff is too small to certify the requested answer."""


class InconsistentResult(RuntimeError):
    """Two independent computations of the same invariant disagree."""
