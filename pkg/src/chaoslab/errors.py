"""Exception taxonomy shared across the library.

The CLI maps these onto process exit codes, so constructors and metric
routines raise the most specific class that applies instead of bare
ValueError wherever a caller could reasonably branch on the failure.
"""


class ChaosLabError(Exception):
    """Base class for all library-specific failures."""


class DomainError(ChaosLabError):
    """Input outside the mathematical domain of an operation.

    Examples: a sequence with coefficients outside {0, 1} passed to the
    binary-sequence metric, an evaluation point outside [origin,
    origin + gamma], or a metric called on functions with mismatched
    domains.
    """


class ToleranceUnreachable(ChaosLabError):
    """A certified enclosure cannot be tightened to the requested width
    within the configured refinement budget."""


class InfeasibleTolerance(ChaosLabError):
    """No construction parameter satisfies the requested tolerance below
    the configured search cap."""


class CertificationFailure(ChaosLabError):
    """A constructed object failed its own certified acceptance check.

    This is a bug trap: the constructions are theorem-backed, so seeing
    this means an enclosure was too loose or an input violated an
    undeclared hypothesis.
    """


class ConfigError(ChaosLabError):
    """Malformed user-facing configuration (CLI flags, JSON payloads)."""
