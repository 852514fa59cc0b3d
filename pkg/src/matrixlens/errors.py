"""Errors carrying stable machine-readable codes for the command protocol."""


class EngineError(Exception):
    """Raised by engine operations; ``code`` is stable across versions."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


# Stable error codes surfaced through the session protocol.
E_PARSE = "E_PARSE"
E_VALIDATION = "E_VALIDATION"
E_BOUNDS = "E_BOUNDS"
E_OVERLAP = "E_OVERLAP"
E_INCOMPATIBLE_VIS = "E_INCOMPATIBLE_VIS"
E_NOT_EDITABLE = "E_NOT_EDITABLE"
E_UNKNOWN_ID = "E_UNKNOWN_ID"
E_UNKNOWN_ATTR = "E_UNKNOWN_ATTR"
E_UNKNOWN_KIND = "E_UNKNOWN_KIND"
E_BAD_PAYLOAD = "E_BAD_PAYLOAD"
E_STATE = "E_STATE"
E_DIAGONAL = "E_DIAGONAL"
E_SEQ = "E_SEQ"
E_IO = "E_IO"
