"""Exception hierarchy shared by every layer."""


class FpcatError(Exception):
    """Base class; carries an optional source span for the CLI."""

    span = None


class SizeLimitError(FpcatError):
    def __init__(self, message, bound=None, predicted=None):
        super().__init__(message)
        self.bound = bound
        self.predicted = predicted


class AxiomError(FpcatError):
    def __init__(self, axiom, witness):
        super().__init__(f"ring axiom violated: {axiom} (witness {witness})")
        self.axiom = axiom
        self.witness = witness


class SideMismatchError(FpcatError):
    pass


class MorphismError(FpcatError):
    """A generator-image list that does not define a module morphism."""

    def __init__(self, message, relation=None):
        super().__init__(message)
        self.relation = relation


class UnsupportedRingError(FpcatError):
    pass


class BoundExceededError(FpcatError):
    def __init__(self, message, bound):
        super().__init__(message)
        self.bound = bound


class ConsistencyError(FpcatError):
    """An internal invariant failed.  Signals a bug, never bad input."""
