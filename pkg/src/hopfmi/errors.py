"""Exception hierarchy shared by the library and the command line."""


class HopfMIError(Exception):
    """Base class for every error raised on purpose by hopfmi."""


class WeightError(HopfMIError, ValueError):
    """A multi-index does not have the weight an operation requires."""


class BoundError(HopfMIError, ValueError):
    """A degree exceeds the configured enumeration bound."""


class AlphabetError(HopfMIError, ValueError):
    """A decoration is not a letter of the session alphabet."""


class SortError(HopfMIError, ValueError):
    """An expression mixes or uses the wrong kind of basis element."""


class ParseError(HopfMIError, ValueError):
    """Malformed textual input; ``position`` is a 0-based character offset."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)
