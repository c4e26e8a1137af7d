"""Exception types.  Everything derives from :class:`MultfreeError`."""


class MultfreeError(Exception):
    pass


class InputError(MultfreeError, ValueError):
    """Malformed or inconsistent input data."""


# root data / Weyl groups
class GuardExceeded(MultfreeError):
    pass


class SingularOrAffine(MultfreeError, ValueError):
    pass


class NotReflection(InputError):
    pass


class CertificateFailure(MultfreeError):
    pass


class NotSpecial(InputError):
    pass


class InfiniteIndex(InputError):
    pass


class RootsNotContained(InputError):
    pass


# polytopes
class EmptyPolytope(InputError):
    pass


class Unbounded(MultfreeError, ValueError):
    pass


class PointOutside(InputError):
    pass


class EpsilonTooLarge(InputError):
    pass


# gluing
class NonNegativePairing(MultfreeError, ValueError):
    pass


class RecoveryFailure(MultfreeError, ValueError):
    pass


class InconsistentHalving(MultfreeError, ValueError):
    pass


# cohomology
class NotDirectSum(MultfreeError, ValueError):
    pass


class EmptyIntersection(InputError):
    pass


class CoverError(InputError):
    pass


# classification
class InvalidPair(InputError):
    pass


# rank-one group scheme
class BaseMismatch(InputError):
    pass


class BadRoot(InputError):
    pass


class PositiveS(InputError):
    pass


class SchemaError(InputError):
    """A data file does not follow its schema; ``field`` names the culprit."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
