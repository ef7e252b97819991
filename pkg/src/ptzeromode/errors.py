"""Exception hierarchy shared by all modules."""


class PTChainError(Exception):
    """Base class for every error raised by :mod:`ptzeromode`."""


class ParameterError(PTChainError, ValueError):
    """A model or run parameter violates its precondition."""


class ShapeError(PTChainError, ValueError):
    """Operands have incompatible dimensions."""


class BracketError(ParameterError):
    """A bisection bracket does not straddle a phase change."""


class NumericalError(PTChainError, RuntimeError):
    """A numerical routine failed or produced a non-finite result."""


class ConvergenceError(NumericalError):
    """An iterative routine exhausted its iteration budget."""
