"""Exception types shared across the package."""


class ModrootError(Exception):
    """Base class for all library errors."""


class Violation(ModrootError):
    """A quiver invariant failed."""

    def __init__(self, kind: str, location: str, detail: str = ""):
        self.kind = kind
        self.location = location
        self.detail = detail
        super().__init__(f"{kind} at {location}" + (f": {detail}" if detail else ""))


class SchemaError(ModrootError):
    """Input file is not a well-formed quiver description."""


class IntegralityError(ModrootError):
    """An exact computation that must be integral produced a fraction."""


class NonExceptionalAxis(ModrootError):
    """Reflection axis has nonpositive norm or the quotient is not integral."""


class OrderingError(ModrootError):
    """A root sequence breaks the orthogonality or generation conditions."""


class AmbiguousSign(ModrootError):
    """Neither or both signs of a reflected vector are nonnegative."""


class Unresolvable(ModrootError):
    """No unique vector satisfies the exceptional-sequence constraints."""


class Inconclusive(ModrootError):
    """A bounded search could neither confirm nor refute."""


class UnsupportedModulation(ModrootError):
    """The finite-field oracle cannot realize a vertex with z != 1."""


class SearchExhausted(ModrootError):
    """No exceptional module was found within the sampling budget."""


class CountMismatch(ModrootError):
    """A perpendicular category did not have the expected number of simples."""


class NotSquare(ModrootError):
    """The determinantal semi-invariant is undefined for these dimensions."""


class TheoremViolation(ModrootError):
    """A verified identity failed; carries the counterexample."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NotInFan(ModrootError):
    """No cone of the enumerated fan contains the vector."""


class AmbiguousEndoClass(ModrootError):
    """The endomorphism degree of a root matches vertices with different z."""


class RankUnsupported(ModrootError):
    """Pictures exist only in rank 3."""


class UncertifiedSubroots(UserWarning):
    """Subroot lists were supplied by the user rather than computed by the oracle."""
