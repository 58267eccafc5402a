class ConfigError(ValueError):
    """Invalid or inconsistent configuration."""


class ConvergenceError(RuntimeError):
    """Fixed-point iteration did not reach the requested tolerance."""

    def __init__(self, message, residual, iterate):
        super().__init__(f"{message} (residual={residual:.3e})")
        self.residual = residual
        self.iterate = iterate


class NumericalError(ArithmeticError):
    """A computed probability or duration left its valid range."""
