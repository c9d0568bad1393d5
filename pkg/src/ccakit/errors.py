"""Exception taxonomy shared across the package."""


class CcaError(Exception):
    """Base class for every error this package raises on purpose."""


class CapExceededError(CcaError):
    """A closure or construction would exceed the configured order cap."""


class SpecSyntaxError(CcaError):
    """Bad input text; carries a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SpecElabError(CcaError):
    """Syntactically valid input that does not elaborate to a group."""


class PipelineError(CcaError):
    """A witness pipeline stage failed; names the stage that broke."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage {stage}: {message}")
        self.stage = stage


class InternalInconsistencyError(CcaError):
    """Two routes that must agree disagreed.  Indicates a bug, exit code 3."""
