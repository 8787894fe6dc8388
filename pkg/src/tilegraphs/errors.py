"""Exception types shared across the toolkit."""


class TilegraphsError(Exception):
    pass


class SingularMatrix(TilegraphsError):
    pass


class NotResidueSystem(TilegraphsError):
    pass


class NotExpanding(TilegraphsError):
    pass


class NotALatticeBasis(TilegraphsError):
    pass


class ReduciblePolynomial(TilegraphsError):
    pass


class NotPisot(TilegraphsError):
    pass


class IterationLimitExceeded(TilegraphsError):
    pass


class ClosureLimitExceeded(TilegraphsError):
    pass


class SearchLimitExceeded(TilegraphsError):
    pass


class PatchTooLarge(TilegraphsError):
    pass


class NonIntegralImage(TilegraphsError):
    pass


class DisjointnessViolated(TilegraphsError):
    pass


class MalformedTriple(TilegraphsError):
    pass


class OracleMismatch(TilegraphsError):
    pass
