"""
Exception hierarchy shared by every component.
"""
from typing import Optional


class OgpError(Exception):
    """Base class for all errors raised by the ogp package."""


# --- FOF -------------------------------------------------------------------

class FofError(OgpError):
    pass


class FofSyntaxError(FofError):
    """Lexical or grammatical error with a 1-based source position."""

    def __init__(self, message: str, line: int, column: int, source: Optional[str] = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = f'{source}:' if source else ''
        super().__init__(f'{where}{line}:{column}: {message}')


class FofSemanticError(FofError):
    """Well-formed input that breaks a document rule (duplicate name, role...)."""

    def __init__(self, message: str, name: Optional[str] = None,
                 line: Optional[int] = None, column: Optional[int] = None):
        self.name = name
        self.line = line
        self.column = column
        if line is not None:
            message = f'{line}:{column}: {message}'
        super().__init__(message)


class IncludeError(FofError):
    pass


class HornError(FofError):
    """A formula outside the Horn fragment accepted by the native prover."""

    def __init__(self, message: str, name: Optional[str] = None):
        self.name = name
        super().__init__(f'{name}: {message}' if name else message)


# --- conjecture frontends ----------------------------------------------------

class FrontendError(OgpError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f'line {line}: {message}' if line is not None else message)


class ConjectureSyntaxError(FrontendError):
    pass


class UndeclaredPointError(FrontendError):
    pass


class DuplicateLabelError(FrontendError):
    pass


class MissingGoalError(FrontendError):
    pass


class DuplicateGoalError(FrontendError):
    pass


class UnsupportedConstructError(FrontendError):
    pass


class FilterError(OgpError):
    pass


# --- provers -----------------------------------------------------------------

class DdfaError(OgpError):
    pass


class RegistryError(OgpError):
    pass


class PortfolioError(OgpError):
    pass


# --- repository --------------------------------------------------------------

class RepositoryError(OgpError):
    """Error reported by the repository, carrying a wire error code."""

    code = 'internal'

    def __init__(self, message: str, code: Optional[str] = None):
        if code is not None:
            self.code = code
        self.message = message
        super().__init__(f'{self.code}: {message}')


class NotFoundError(RepositoryError):
    code = 'not_found'


class BadRequestError(RepositoryError):
    code = 'bad_request'


class InternalError(RepositoryError):
    code = 'internal'


class StoreError(OgpError):
    pass


class IngestError(OgpError):
    pass


class TransportError(OgpError):
    """The repository could not be reached (refused, reset, timed out)."""


# --- command line ------------------------------------------------------------

class UsageError(OgpError):
    pass


class ChoiceError(OgpError):
    pass


class GascError(OgpError):
    pass
