"""Exception hierarchy.  Everything derives from MeijerError (a ValueError)."""


class MeijerError(ValueError):
    pass


class PoleError(MeijerError):
    """Gamma (or a lower hypergeometric parameter) evaluated at a pole."""

    def __init__(self, message, z=None):
        super().__init__(message)
        self.z = z


class DivergenceError(MeijerError):
    pass


class NonConvergenceError(MeijerError):
    def __init__(self, message, partial=None, abs_err=None):
        super().__init__(message)
        self.partial = partial
        self.abs_err = abs_err


class DomainError(MeijerError):
    pass


class AdmissibilityError(DomainError):
    """Parameters outside the range where a formula or regularization applies."""


class DegenerateParametersError(MeijerError):
    """Some a_i - a_j is an integer, so the origin expansion has poles."""


class IllConditionedError(MeijerError):
    """Parameters lie inside the guard band around an integer coincidence."""


class BranchCutError(DomainError):
    pass
