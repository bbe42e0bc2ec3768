"""Exception types shared across the pipeline.

Each error carries a short ``kind`` tag so the CLI can print one
machine-parsable line and pick an exit code.
"""


class WitnessPHError(Exception):
    kind = "internal"


class InvalidArgumentError(WitnessPHError, ValueError):
    kind = "invalid-argument"


class FormatError(WitnessPHError):
    kind = "format"


class UnsupportedError(WitnessPHError):
    kind = "unsupported"


class ParseError(WitnessPHError):
    kind = "parse"

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class EmptyInputError(WitnessPHError):
    kind = "empty-input"


class InsufficientDataError(WitnessPHError):
    kind = "insufficient-data"

    def __init__(self, message: str, required: int | None = None, available: int | None = None):
        super().__init__(message)
        self.required = required
        self.available = available


class DegenerateInputError(WitnessPHError):
    kind = "degenerate-input"


class IntegrityError(WitnessPHError):
    kind = "integrity"


class TrainingError(WitnessPHError):
    kind = "training"


class ClassificationError(WitnessPHError):
    kind = "classification"
