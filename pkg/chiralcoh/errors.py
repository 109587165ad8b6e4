class ConfigError(ValueError):
    """ Raised when an input descriptor or a run configuration is not usable. """


class JacobiViolation(ConfigError):
    pass


class AntisymmetryViolation(ConfigError):
    pass


class SingularFormWhenNondegenerateRequired(ConfigError):
    pass


class MissingBetti(ConfigError):
    pass


class C0OutOfRange(ConfigError):
    pass


class DegenerateForm(ValueError):
    pass


class NotAbelian(ValueError):
    pass


class MixedComplex(ValueError):
    pass


class NotACocycle(ValueError):
    pass


class TruncationOverflow(RuntimeError):
    """ Raised when a bigraded piece holds more monomials than the configured budget.

    Attributes
    ----------
    piece : tuple
        The (p, n, charge) coordinates of the piece.
    budget : int
        The budget that was exceeded.

    """

    def __init__(self, piece: tuple, budget: int):
        self.piece = piece
        self.budget = budget
        super().__init__(f'piece {piece} exceeds the budget of {budget} monomials')


class VerificationFailure(RuntimeError):
    """ Base class of every failed exact identity check.

    Attributes
    ----------
    identity : str
        A short name of the identity that failed.
    probe : str
        The input on which it failed, in monomial text syntax.

    """

    def __init__(self, identity: str, probe: str = ''):
        self.identity = identity
        self.probe = probe
        message = identity if not probe else f'{identity} (probe: {probe})'
        super().__init__(message)


class PinningSuiteFailure(VerificationFailure):
    pass


class HomotopyConditionsFailed(VerificationFailure):
    pass


class HomotopyIdentityFailed(VerificationFailure):
    pass


class BasicNotClosed(VerificationFailure):
    pass
