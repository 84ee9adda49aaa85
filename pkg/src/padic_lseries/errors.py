"""Exception types shared across the package.

Everything raised on a *domain* failure (a parameter outside a convergence
region, a pole, a degenerate twist, an enumeration blowing past its cap)
derives from PadicLseriesError so callers, including the CLI, can separate
domain errors from plain usage bugs.
"""

from __future__ import annotations


class PadicLseriesError(Exception):
    """Base class for domain errors raised by this package."""


class PrimeMismatchError(PadicLseriesError):
    """Two p-adic values from different fields were combined."""


class CosetCapError(PadicLseriesError):
    """A coset enumeration would exceed the configured representative cap."""


class LocalityError(PadicLseriesError):
    """An integrand failed its declared local-constancy spot check."""


class PoleError(PadicLseriesError):
    """A closed-form denominator is within epsilon of zero."""


class ConvergenceError(PadicLseriesError):
    """A series parameter lies outside its convergence region."""


class DegenerateTwistError(PadicLseriesError):
    """A trace was requested for a twist that degenerates to the identity."""
