"""Exception types shared across the package.

Every failure mode that callers are expected to handle gets its own class;
plain ``ValueError`` is reserved for malformed constructor arguments that
indicate a programming error rather than a property of the input data.
"""


class MetastableError(Exception):
    """Base class for all package-specific errors."""


# -- directed sets and samplings ------------------------------------------

class NotPartialOrder(MetastableError):
    """The given relation is not reflexive, antisymmetric and transitive."""


class NotDirected(MetastableError):
    """Some pair of elements has no upper bound."""


class AnchorNotLeast(MetastableError):
    """The declared anchor is not below every element."""


class NotStrictlyIncreasing(MetastableError):
    """A sampling function violated F(n) > n or strict monotonicity."""


class SamplingDomainError(MetastableError):
    """An explicit sampling was queried outside its declared support."""


# -- rates and oscillation -------------------------------------------------

class EmptyRate(MetastableError):
    """A rate set E must be nonempty; no sequence has an empty rate."""


class NonpositiveEpsilon(MetastableError):
    """The operation requires a strictly positive epsilon."""


class UnsupportedSampling(MetastableError):
    """Exact eta-oscillation needs a sampling with a declared affine tail."""


# -- formulas ---------------------------------------------------------------

class FormulaSyntaxError(MetastableError):
    """Concrete-syntax error; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownSymbol(MetastableError):
    """An identifier does not resolve against the signature."""


class SortMismatch(MetastableError):
    """A term or variable is used at an incompatible sort."""


class NonpositiveRadius(MetastableError):
    """Quantifier radii must be strictly positive rationals."""


class UnassignedVariable(MetastableError):
    """Evaluation reached a free variable missing from the assignment."""


class RealQuantifier(MetastableError):
    """Quantification over the real sort is rejected (infinite balls)."""


class NonpositiveDelta(MetastableError):
    """Relaxation amounts must be strictly positive."""


# -- measures ---------------------------------------------------------------

class UVOrder(MetastableError):
    """Measurability thresholds must satisfy u < v."""


# -- dominated convergence --------------------------------------------------

class IncoherentTails(MetastableError):
    """Family slices do not share a usable tail structure."""


class PreconditionViolated(MetastableError):
    """A family in the search class fails a declared precondition."""
