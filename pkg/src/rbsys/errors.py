"""Exception hierarchy shared by every module of the toolkit."""


class RBSError(Exception):
    """Base class for all toolkit errors."""


class InputError(RBSError, ValueError):
    """Shapes, arities or parameters do not fit together."""


class NotRotaBaxterError(RBSError):
    """A construction that needs a Rota-Baxter system got something else.

    ``witness`` holds the first failing basis tuple and the nonzero defect
    value, when one is available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAlgebraMapError(RBSError):
    pass


class NotCocycleError(RBSError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonInvertibleError(RBSError):
    pass


class HypothesisError(RBSError):
    """A named hypothesis of a construction fails.

    ``hypothesis`` is a short machine-readable tag such as
    ``"subalgebra"`` or ``"image_condition"``.
    """

    def __init__(self, hypothesis, message, witness=None):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis
        self.witness = witness


class TruncationError(RBSError):
    """Requested verification arity exceeds the stored arity bound."""


class ResourceError(RBSError):
    """The requested computation exceeds the configured size budget."""


class ModelParseError(InputError):
    """Malformed model text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line=None, column=None):
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


class ModelSemanticError(InputError):
    """Well-formed text describing inconsistent data; ``section`` names the culprit."""

    def __init__(self, section, message, witness=None):
        super().__init__(f"[{section}] {message}")
        self.section = section
        self.witness = witness
