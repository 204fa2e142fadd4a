"""
Exception Classes

Input problems (exit code 2) and numerical failures (exit code 3) form two
families so the CLI can map them without inspecting messages.
"""

from typing import Optional


class HubbardError(Exception):
    """Base exception for all hubbardq errors"""
    exit_code = 1


class InputError(HubbardError):
    """Base class for errors caused by user input"""
    exit_code = 2


class ParameterFileError(InputError):
    """Malformed or incomplete model parameter file"""
    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(InputError):
    """A value violates a documented precondition"""
    pass


class FitInputError(InputError):
    """Band series unusable for extrapolation"""
    pass


class SamplingError(InputError):
    """Shot budget cannot cover the requested measurement settings"""
    pass


class NumericalError(HubbardError):
    """Base class for numerical failures"""
    exit_code = 3


class ConvergenceError(NumericalError):
    """Iterative procedure did not converge"""
    def __init__(
        self,
        message: str,
        best_value: Optional[float] = None,
        iterations: Optional[int] = None,
    ):
        super().__init__(message)
        self.best_value = best_value
        self.iterations = iterations


class OrthogonalityError(NumericalError):
    """Rotation matrix is not orthogonal"""
    pass


class CharacterizationError(NumericalError):
    """Requested state labels were not found in the spectrum"""
    def __init__(self, message: str, missing: Optional[list] = None):
        super().__init__(message)
        self.missing = missing or []
