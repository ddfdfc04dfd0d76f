"""
Exception types for Hermlab processes.
"""

from .enums import SeverityLevel


class HermlabError(Exception):
    """Base class for every error raised by the engine."""


class ModelFileError(HermlabError):
    """A model file is malformed or cannot be found."""


class InvalidModel(HermlabError):
    """Structure data do not describe a valid model."""


class JacobiViolation(InvalidModel):
    """Brackets fail the Jacobi identity or antisymmetry."""


class NotUnitary(InvalidModel):
    """A frame change declared unitary is not."""


class NotPositiveDefinite(HermlabError):
    """A Gram matrix is not Hermitian positive definite."""


class SingularSystem(HermlabError):
    """A defining linear system is rank-deficient."""


class Reducible(HermlabError):
    """The holonomy algebra does not act irreducibly."""


class HypothesisUnmet(HermlabError):
    """A hypothesis required by a certificate fails."""

    def __init__(self, hypothesis: str, message: str = None):
        self.hypothesis = hypothesis
        super().__init__(message or f'Hypothesis not satisfied: {hypothesis}')


class Balanced(HermlabError):
    """The torsion 1-form vanishes, so no admissible frame exists."""


class NotDiagonalizable(HermlabError):
    """The torsion block of an admissible frame is not diagonal."""


class NotParallel(HermlabError):
    """Curvature (or torsion) is not parallel for the chosen connection."""


class NotCAS(HermlabError):
    """No parallel frame of the torsion image exists."""


class Degenerate(HermlabError):
    """Every torsion form restricts to zero on the complement."""


class SingularT(HermlabError):
    """The operator representing B on the holonomy algebra is singular."""


class BadRowSum(HermlabError):
    """Nilpotent parameters have a nonzero row sum."""


class ValidationError(Exception):
    """Check document failure exception."""

    def __init__(self, level: SeverityLevel, message='Validation failed'):
        self.level = level
        super().__init__(message)
