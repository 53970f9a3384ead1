"""Exception hierarchy shared by all modules."""


class CofinexError(Exception):
    """Base class for all structured errors raised by this package."""


class DanglingReference(CofinexError):
    """A table mentions an id that is not a declared element."""


class KindMismatch(CofinexError):
    """A table is present or absent in a way the structure kind forbids."""


class LawKindMismatch(CofinexError):
    """The requested law does not apply to the carrier's kind."""


class CarrierMismatch(CofinexError):
    """Two objects that must share a carrier do not."""


class LawCheckFailed(CofinexError):
    """A relation fails the law check required by an operation."""

    def __init__(self, report, message="law check failed"):
        super().__init__(message)
        self.report = report


class QuotientProductUndefined(CofinexError):
    """A composable pair or triple of the quotient has no lift."""

    def __init__(self, witness):
        super().__init__(f"quotient product undefined, witness {witness}")
        self.witness = witness


class NotARefinement(CofinexError):
    """The allegedly finer relation has a class crossing coarse classes."""

    def __init__(self, witness_class):
        super().__init__(f"not a refinement, class {witness_class} crosses")
        self.witness_class = witness_class


class NotAChain(CofinexError):
    """Members cannot be totally ordered by refinement."""


class NotAFilterBase(CofinexError):
    """The family lacks a pairwise refinement witness."""


class UnknownVertex(CofinexError):
    """The id is not a vertex of the structure."""


class UnknownElement(CofinexError):
    """The id is not an element of the structure."""


class OutOfWindow(CofinexError):
    """The element cannot be evaluated on the symbolic carrier."""


class StatusUnknown(CofinexError):
    """The ends census did not reach an exact count."""


class NotACongruence(CofinexError):
    """The relation is not a congruence on the groupoid."""


class NotRigid(CofinexError):
    """The congruence relates two distinct vertices."""


class NotNormal(CofinexError):
    """The given subset is not a normal subgroup of the vertex group."""

    def __init__(self, vertex, message=None):
        super().__init__(message or f"not a normal subgroup at vertex {vertex}")
        self.vertex = vertex


class NotCoherent(CofinexError):
    """Conjugation along some arrow does not carry the family onto itself."""

    def __init__(self, arrow):
        super().__init__(f"family not coherent along arrow {arrow}")
        self.arrow = arrow


class NotConnected(CofinexError):
    """The groupoid has an empty hom set between two vertices."""


class VerticesInseparable(CofinexError):
    """No member of the family separates the two vertices."""

    def __init__(self, x, y):
        super().__init__(f"no member separates vertices {x} and {y}")
        self.pair = (x, y)


class BadParameter(CofinexError):
    """A generator or operation parameter is outside its documented range."""
