"""Exception types shared across the package.

The CLI maps these onto process exit codes: configuration problems exit
with 2, infeasible optimization problems with 3, numerical failures with 4.
"""


class ConfigError(ValueError):
    """Invalid scenario, sweep, or grid configuration."""


class InfeasibleError(Exception):
    """No hover height (or grid point) satisfies the active constraints."""


class NumericalError(RuntimeError):
    """A numerical assumption was violated (non-monotone bracketing,
    failed closed-form-vs-simulation validation, ...)."""
