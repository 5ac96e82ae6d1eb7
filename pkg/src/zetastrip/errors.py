"""Exception hierarchy shared by every evaluator."""


class ZetaError(Exception):
    """Base class for all zetastrip errors."""


class PoleError(ZetaError, ValueError):
    """Argument sits within the pole tolerance of a singularity."""


class PoleGuard(PoleError):
    """A prefactor such as 1 - 2**(1-s) vanishes at the requested point."""


class DomainError(ZetaError, ValueError):
    """Argument outside the supported domain, or an integral that diverges."""


class NonConvergence(ZetaError, ArithmeticError):
    """The work budget ran out before the tolerance was met.

    The best available result is kept on ``outcome`` so callers can still
    inspect the value and error estimate reached.
    """

    def __init__(self, message, outcome=None):
        super().__init__(message)
        self.outcome = outcome


class NoisyZ(ZetaError, ArithmeticError):
    """Z(t) picked up an imaginary part larger than the noise threshold."""


class UsageError(ZetaError, ValueError):
    """Malformed command-line input or configuration file."""
