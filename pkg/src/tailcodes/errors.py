class ParamsError(ValueError):
    """Code parameters violate a construction constraint."""


class DecodeError(ValueError):
    """A received word cannot be decoded.

    ``reason`` is a short machine-readable tag: ``"capacity"`` when the word
    carries more errors than the code corrects, ``"inconsistent"`` when the
    redundancy disagrees with the data, ``"malformed"`` when the word does not
    have the shape of any corrupted codeword.
    """

    def __init__(self, reason: str, message: str = ""):
        super().__init__(message or reason)
        self.reason = reason
