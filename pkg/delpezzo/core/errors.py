"""
Exception hierarchy shared by the lattice, the services and the CLI.
"""


class DelPezzoError(Exception):
    """Base class for every error raised by this package."""


class SurfaceMismatchError(DelPezzoError, ValueError):
    """Classes live on different surfaces or have the wrong number of coordinates."""


class UnsupportedDegreeError(DelPezzoError, ValueError):
    """Degree outside the range the cone criteria are valid for."""


class ContractError(DelPezzoError, ValueError):
    """A documented precondition was violated by the caller."""


class NotPseudoeffectiveError(DelPezzoError):
    """The class lies outside the effective cone."""


class ZariskiInvariantError(DelPezzoError, RuntimeError):
    """The decomposition loop produced a support that breaks negative definiteness."""
