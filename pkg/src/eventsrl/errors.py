"""Exception hierarchy shared by every module."""


class EventSRLError(Exception):
    """Base class for data and usage errors raised by this package."""


class FormatError(EventSRLError, ValueError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)


class IoError(EventSRLError, OSError):
    pass


class InvalidArgument(EventSRLError, ValueError):
    pass


class CollisionError(EventSRLError):
    pass


class MissingAugmentation(EventSRLError):
    pass


class EmptySelection(EventSRLError):
    pass
