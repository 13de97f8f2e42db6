"""Exception hierarchy shared by the library and the CLI."""


class SharpeBoundError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SharpeBoundError, ValueError):
    """Malformed input (bad CSV, invalid parameters). CLI exit code 2."""


class DegenerateSeriesError(InputError):
    """A ratio was requested for a series with fewer than two returns."""


class DomainError(SharpeBoundError, ValueError):
    """A value lies outside its mathematical domain. CLI exit code 3."""


class ReturnDomainError(DomainError):
    """Some per-period return is below -1 (more than total loss)."""


class UndefinedRatioError(DomainError):
    """The deviation in a ratio's denominator is zero."""


class FrontierDivergence(DomainError):
    """The supremum is infinite, e.g. one-sided Sharpe with B >= 1."""


class InfeasibleSearchError(DomainError):
    """No candidate sequence satisfies the bound and losing constraints."""
