"""Exception types shared across the package.

Every error that a CLI user can trigger maps onto exit code 2 (bad input or
an out-of-domain reduction); internal verification failures map onto exit
code 1 and are reported through VerificationReport rather than raised.
"""


class Sp4rError(Exception):
    """Base class for all package-specific errors."""


class InvalidArgumentError(Sp4rError):
    """Malformed argument: bad kind string, negative cutoff, parity violation..."""


class DimensionError(Sp4rError):
    """Matrix shapes or bases do not line up."""


class HermiticityError(Sp4rError):
    """An operator expected to be Hermitian is not (within tolerance)."""


class CutoffOverflowError(Sp4rError):
    """A ladder-operator construction would push population past the cutoff."""


class DomainError(Sp4rError):
    """Base for reduction-domain failures (|2*sqrt(a1*a2)/a0| >= 1)."""


class HyperbolicDomainError(DomainError):
    """hyperbolic-out-of-domain: artanh argument has modulus > 1."""


class DegenerateReductionError(DomainError):
    """degenerate-reduction: the reduction collapses (zero slope / artanh(1))."""


class PipelineIndeterminateError(Sp4rError):
    """pipeline-indeterminate: 0/0 stage parameters with nonzero targets."""


class ConditionViolatedError(Sp4rError):
    """condition-violated: a rotation stage requires alpha5 == alpha6."""
