"""Exception types shared across the package."""


class SqslabError(Exception):
    """Base class for all library errors."""


class NotIntegral(SqslabError):
    """A block-count formula did not divide evenly."""


class OutOfRange(SqslabError):
    """A triple, rank, or coordinate index is outside its valid range."""


class MalformedBlock(SqslabError):
    """A block violates size, ordering, range, or uniqueness rules."""


class AlphabetViolation(SqslabError):
    """A code word contains a symbol outside the declared alphabet."""


class NotTransverse(SqslabError):
    """A block meets some group more than once (or leaves the point set)."""


class BadSplit(SqslabError):
    """A bipartite-design block does not split 2+2 across the groups."""


class NotPrimePower(SqslabError):
    """The requested order is not a prime power."""


class TooMany(SqslabError):
    """More squares requested than the field construction can supply."""


class OddOrder(SqslabError):
    """An even order is required."""


class BadK(SqslabError):
    """Subsquare size exceeds a quarter of the square order."""


class SupplyGap(SqslabError):
    """The constructive MOLS supply falls short of the requested count."""

    def __init__(self, achievable: int, message: str = ""):
        super().__init__(message or f"constructive supply reaches only {achievable} squares")
        self.achievable = achievable


class SearchExhausted(SqslabError):
    """A randomized completion search ran out of its attempt budget."""


class BadParams(SqslabError):
    """Parameters are outside what the construction supports."""


class TooFewCoords(SqslabError):
    """A projection keeps too few coordinates to stay injective on words."""


class NotWellDefined(SqslabError):
    """A derived quasigroup assignment collided; the input code was invalid."""


class ParameterMismatch(SqslabError):
    """Subcode and replacement code disagree on length, distance, or order."""


class SymmetryViolation(SqslabError):
    """A code fails the coordinate-swap/diagonal closure required here."""


class DegenerateWord(SqslabError):
    """A word has distinct first pair but equal second pair; input was invalid."""


class SwapInvalid(SqslabError):
    """A subcode exchange produced an object that failed verification."""


class KindMismatch(SqslabError):
    """Designs of different kinds were combined."""


class OrderMismatch(SqslabError):
    """Designs (or groups) of different orders were combined."""


class PreconditionFailure(SqslabError):
    """A named input to an assembly violated its contract."""


class AssemblyInvariantBroken(SqslabError):
    """An internal block-count identity failed during assembly."""


class SearchTimeout(SqslabError):
    """A stochastic search exhausted its move budget."""


class Inadmissible(SqslabError):
    """No design of this kind exists at the requested order."""


class Unreachable(SqslabError):
    """No in-scope derivation reaches the order; lists absent rules."""

    def __init__(self, missing: list[str], message: str = ""):
        super().__init__(message or "order not reachable with in-scope rules")
        self.missing = list(missing)


class VerificationFailure(SqslabError):
    """A constructed or loaded object failed its verifier."""
