"""Typed errors shared across the package.

Every domain-level failure raises a subclass of CmRealizeError so the CLI
can map them to a stable exit code.  Internal invariant violations raise
InternalError (or plain AssertionError) instead; those indicate bugs, not
bad input.
"""


class CmRealizeError(Exception):
    """Base class for all typed domain errors."""


class DomainError(CmRealizeError):
    """Input outside an operation's stated domain."""


class DegenerateCF(CmRealizeError):
    """Continued-fraction fold hit a zero intermediate value."""


class DependentNormals(CmRealizeError):
    """Orthogonal complement requested for linearly dependent normals."""


class NotInLattice(CmRealizeError):
    """Vector is not an element of the given sublattice."""


class SearchBudgetExceeded(CmRealizeError):
    """A bounded search ran past its configured ceiling.

    Never silently converted to a negative answer: the searches backed by
    this error are oracles for acceptance tests and must not lie.
    """


class NotIsomorphic(CmRealizeError):
    """Fast-path refutation of a lattice isomorphism (rank/determinant)."""


class NotNormalized(CmRealizeError):
    """Seifert form is not in the normalized (all fibers > 1) shape."""


class LensSpaceDegenerate(CmRealizeError):
    """The form has fewer than three genuine exceptional fibers."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotDefinite(CmRealizeError):
    """epsilon(Y) = 0: neither orientation bounds a definite plumbing."""


class NotQuasiAlternating(CmRealizeError):
    """A QA-only verification suite was invoked on a non-QA plumbing."""


class IncompatibleStable(CmRealizeError):
    """No count of unit coefficients completes the stable tuple."""


class NotChangemaker(CmRealizeError):
    """Padded coefficient tuple fails the changemaker condition."""


class NoRealizingTuple(CmRealizeError):
    """No stable tuple reproduces the requested torsion sequence."""


class AmbiguousTuple(CmRealizeError):
    """More than one stable tuple matched; violates uniqueness."""


class WrongRegime(CmRealizeError):
    """Changemaker/plumbing matching requested outside central weight 2."""


class ReducibleSurgery(CmRealizeError):
    """Surgery slope equals rs: the result is reducible, not a small SFS."""


class NotSeifertSlope(CmRealizeError):
    """Cable surgery slope is not of the form ab +/- 1/q."""


class NothingToDo(CmRealizeError):
    """Diagram move applied where it has no effect (integer leaf)."""


class NotBlowable(CmRealizeError):
    """Blow-down requested at a node whose coefficient is not +1 or -1."""


class UnsupportedShape(CmRealizeError):
    """Diagram move applied at a node of unsupported degree."""


class UnsupportedRegime(CmRealizeError):
    """Realization query outside the supported (e, sign) cells."""


class IntegerSlope(CmRealizeError):
    """Realization requested for an integer surgery slope."""


class InternalError(Exception):
    """Invariant violation inside the package; maps to CLI exit code 2."""
