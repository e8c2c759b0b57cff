"""Exception hierarchy shared by every layer of the analyzer."""


class StrylusError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(StrylusError):
    """Bad configuration: unknown alphabet, symbol outside the alphabet, bad flag."""


class AlphabetMismatch(ConfigError):
    """Two automata over different alphabets were combined."""


class PreconditionError(StrylusError):
    """An operation was called outside its domain (e.g. enumerating an infinite language)."""


class ParseError(StrylusError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}" if line else message)


class UnsupportedSyntax(ParseError):
    """Sugar the desugaring pass cannot rewrite."""


class PatternError(ConfigError):
    """Syntax error in a query pattern."""


class UnboundIdentifier(StrylusError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound identifier {name!r}")


class BudgetExceeded(StrylusError):
    """The concrete interpreter ran past its step budget."""
