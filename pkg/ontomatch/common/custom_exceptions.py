from typing import Optional


class BaseAppException(Exception):
    def __init__(self, message, exit_code: int = 1):
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code


class UserError(BaseAppException):
    def __init__(self, message, exit_code: int = 1):
        super().__init__(message, exit_code)


class EmptyResultError(BaseAppException):
    def __init__(self, message, exit_code: int = 2):
        super().__init__(message, exit_code)


class UnrepairableAlignmentError(BaseAppException):
    def __init__(self, message, exit_code: int = 3):
        super().__init__(message, exit_code)


class OntologyParseError(UserError):
    def __init__(
        self, message, line: Optional[int] = None, column: Optional[int] = None
    ):
        if line is not None:
            location = f"line {line}" + (f", column {column}" if column else "")
            message = f"{message} ({location})"
        super().__init__(message)
        self.line = line
        self.column = column


class AlignmentParseError(UserError):
    pass


class InvalidIriError(UserError):
    pass


class AnchorNotFoundError(UserError):
    pass


class NoEligibleAnchorsError(UserError):
    pass


class EmbeddingError(UserError):
    pass


class ConfigurationError(UserError):
    pass


class InputFileError(UserError):
    pass


class OutputPathError(UserError):
    pass


# Could become part of AlignmentParseError
class ConflictingOntologiesError(UserError):
    pass


# LLM gateway ~~~~~~~~~~~~~~~~~~~~~~~~~~~~


class GatewayError(BaseAppException):
    def __init__(self, message, exit_code: int = 1):
        super().__init__(message, exit_code)


class GatewayTransportError(GatewayError):
    pass


class GatewayResponseError(GatewayError):
    def __init__(self, message, status_code: Optional[int] = None):
        super().__init__(message)
        self.status_code = status_code


class MockFixtureNotFoundError(GatewayError):
    pass
