"""Exception types shared across the package."""


class DiffidentError(Exception):
    """Base class for all engine errors."""


class AmbientMismatch(DiffidentError):
    """Two subspaces (or a vector and a subspace) live in different ambient spaces."""


class PrimeDisagreement(DiffidentError):
    """Ranks computed modulo distinct primes did not agree."""


class DenominatorDivisibleByPrime(DiffidentError):
    """A rational entry cannot be reduced modulo the chosen prime."""


class NotAssociative(DiffidentError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"associativity fails on basis triple {triple}")


class NotAUnit(DiffidentError):
    """The supplied vector is not a two-sided unit."""


class NotADerivation(DiffidentError):
    """A matrix fails the Leibniz rule on some basis pair."""

    def __init__(self, pair=None):
        self.pair = pair
        msg = "Leibniz rule fails"
        if pair is not None:
            msg += f" on basis pair {pair}"
        super().__init__(msg)


class NonSplitCenter(DiffidentError):
    """The semisimple part does not split into matrix blocks over the rationals."""


class InternalVerificationFailed(DiffidentError):
    """A computed structural object failed its own post-verification (engine bug)."""


class SizeCap(DiffidentError):
    """A requested computation exceeds the configured size budget."""


class WordCapExceeded(DiffidentError):
    """An exponent word grew past the configured length cap."""


class NotMultilinear(DiffidentError):
    """A polynomial is not multilinear of the expected degree."""


class AlphabetMismatch(DiffidentError):
    """Two actions do not share a common generator alphabet."""


class BadParams(DiffidentError):
    """Unrecognized generator name or invalid parameters."""


class ParseError(DiffidentError):
    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message)
