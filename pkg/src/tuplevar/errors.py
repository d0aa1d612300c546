"""Exception hierarchy shared by all tuplevar modules."""


class TuplevarError(Exception):
    """Base class for all tuplevar errors."""


class InvalidPartition(TuplevarError):
    """The requested partition (n; k_1..k_l) is malformed."""


class InvalidIndex(TuplevarError):
    """A basis index or subset family does not match its partition."""


class TooLarge(TuplevarError):
    """The induced operator dimension exceeds the configured size cap."""


class NumericalFailure(TuplevarError):
    """A dense linear-algebra routine failed to converge or produced NaNs."""


class NonDiagonalizable(TuplevarError):
    """Eigenvalue gaps are below tolerance; subspace enumeration would be incomplete."""


class GenerationFailure(TuplevarError):
    """A seeded generator could not produce a tuple meeting its postconditions."""


class DocumentError(TuplevarError):
    """A tuple document failed validation or could not be parsed."""
