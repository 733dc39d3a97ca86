"""
Error types raised across Sumprod.

Every error carries an `exit_code` that the CLI uses as the process status:
1 for bad input (malformed files, violated preconditions), 2 when a configured
resource budget stops a computation.
"""

INPUT_ERROR_EXIT_CODE = 1
RESOURCE_LIMIT_EXIT_CODE = 2


class SumprodError(Exception):
    """Base class of all Sumprod errors."""
    exit_code = INPUT_ERROR_EXIT_CODE


class InputError(SumprodError, ValueError):
    """A precondition on the inputs of an operation does not hold."""


class EmptySet(InputError):
    pass


class DivisorZero(InputError, ZeroDivisionError):
    pass


class ZeroInMultiplicativeEnergy(InputError):
    pass


class NotWellSpaced(InputError):
    pass


class SignRestriction(InputError):
    pass


class Degenerate(InputError):
    pass


class InvalidPair(InputError):
    pass


class InvalidQuadruple(InputError):
    pass


class InvalidClusterWidth(InputError):
    pass


class NoValidPrimorial(InputError):
    pass


class DensityFailure(InputError):
    pass


class InsufficientData(InputError):
    pass


class SchemaMismatch(InputError):
    pass


class ConfigError(InputError):
    pass


class InputFormat(InputError):
    """
    A set file (or other text input) has a malformed line.

    :param path: file the line was read from
    :param line_number: 1-based line number of the offending line
    :param detail: what was wrong with it
    """

    def __init__(self, path, line_number: int, detail: str):
        self.path = str(path)
        self.line_number = line_number
        self.detail = detail
        super().__init__(f"{self.path}:{line_number}: {detail}")


class ResourceLimit(SumprodError, RuntimeError):
    """
    A computation would exceed a configured budget (memory, enumeration block size).
    """
    exit_code = RESOURCE_LIMIT_EXIT_CODE

    def __init__(self, message: str, required: int = None, budget: int = None, advice: str = None):
        self.required = required
        self.budget = budget
        self.advice = advice
        text = message
        if required is not None and budget is not None:
            text += f" (required {required}, budget {budget})"
        if advice:
            text += f"; {advice}"
        super().__init__(text)


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the CLI exit status."""
    if isinstance(error, SumprodError):
        return error.exit_code
    if isinstance(error, MemoryError):
        return RESOURCE_LIMIT_EXIT_CODE
    return INPUT_ERROR_EXIT_CODE
