"""Exception types raised across the package."""


class HardyChaosError(Exception):
    """Base class for all package errors."""


class ParseError(HardyChaosError, ValueError):
    """Malformed symbol expression; ``position`` is the 0-based offset."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")

    def caret(self):
        return f"{self.text}\n{' ' * self.position}^"


class SymbolDomainError(HardyChaosError, ValueError):
    """The symbol is not bounded analytic on the closed unit disk."""


class ZeroPolynomialDivision(HardyChaosError, ZeroDivisionError):
    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)

    def caret(self):
        if self.position is None:
            return ""
        return f"{self.text}\n{' ' * self.position}^"


class NotInvertibleError(HardyChaosError, ValueError):
    def __init__(self, message, root=None):
        self.root = root
        super().__init__(message)


class ConstantSymbolError(HardyChaosError, ValueError):
    """Raised where a non-constant symbol is required."""


class PreconditionError(HardyChaosError, ValueError):
    pass


class RootConvergenceError(HardyChaosError, ArithmeticError):
    def __init__(self, message, best_residual, roots=None):
        self.best_residual = best_residual
        self.roots = roots
        super().__init__(f"{message} (best residual {best_residual:.3e})")


class SVDConvergenceError(HardyChaosError, ArithmeticError):
    def __init__(self, sweeps, off):
        self.sweeps = sweeps
        self.off = off
        super().__init__(f"Jacobi SVD did not converge after {sweeps} sweeps (off={off:.3e})")
