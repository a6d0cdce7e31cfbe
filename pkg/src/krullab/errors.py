"""
Exception hierarchy for krullab.

Every failure raised by the library derives from :class:`KrullabError`, so the
command line can map all of them to exit code 2 in one place. Errors caused by
malformed input additionally derive from :class:`ValueError`.

Outcomes such as "no witness found" are not errors; the procedures return
``None`` for them.
"""


class KrullabError(Exception):
    """Base class for all krullab errors."""


class ShapeMismatch(KrullabError, ValueError):
    """Vectors, matrices or group elements of incompatible shape were combined."""


class ValidationError(KrullabError, ValueError):
    """An instance or option failed validation; the message names the field."""

    def __init__(self, message, field=None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class ParseError(KrullabError, ValueError):
    """Input text could not be parsed."""

    def __init__(self, message, position=None):
        self.position = position
        super().__init__(f"{position}: {message}" if position else message)


class EnumerationBudgetExceeded(KrullabError):
    """A search generated more nodes than its configured budget."""

    def __init__(self, budget, what="enumeration"):
        self.budget = budget
        super().__init__(f"{what} exceeded the node budget of {budget}")


class ZeroElement(KrullabError, ValueError):
    """The zero divisor (the unit) was given where a nonunit is required."""


class NotAnElement(KrullabError, ValueError):
    """A divisor is not a (nonnegative, principal) element of the monoid."""


class NotAtom(KrullabError, ValueError):
    """An element required to be irreducible factors further."""


class NotMultiPrime(KrullabError, ValueError):
    """An element is supported on a single prime slot."""


class NotPrimitive(KrullabError, ValueError):
    """An ideal or polynomial has a nonunit common factor."""


class TorsionClassGroup(KrullabError):
    """Every prime slot has a class of finite order."""


class NotMember(KrullabError, ValueError):
    """A lattice point does not belong to the affine semigroup."""


class NotSaturated(KrullabError):
    """An affine semigroup misses a lattice point of its cone."""

    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__(f"semigroup is not saturated: {list(self.witness)} is a gap")


class FieldMismatch(KrullabError, ValueError):
    """Polynomials over different coefficient fields were combined."""


class BadCertificate(KrullabError, ValueError):
    """A factorization certificate does not multiply back to its polynomial."""


class NotInSubring(KrullabError, ValueError):
    """A polynomial has a monomial outside the semigroup ring."""


class QuintupleMismatch(KrullabError, ValueError):
    """A quintuple does not satisfy abc = de with nonzero nonunits."""
