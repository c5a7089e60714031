"""Exception hierarchy.

``PolcError`` covers bad input and exceeded resource caps (CLI exit 2).
``InternalInvariantError`` signals that one of the runtime
self-checks tripped, which is always a bug (CLI exit 4).
"""


class PolcError(Exception):
    pass


class RegexSyntaxError(PolcError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class AlphabetError(PolcError):
    pass


class FormatError(PolcError):
    pass


class ResourceLimitError(PolcError):
    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeds the configured cap of {cap}")
        self.cap = cap


class InternalInvariantError(Exception):
    pass
