"""Configuration management for dfrac.

Defaults live as class attributes on :class:`Config`. Every attribute can be
overridden from the environment with ``DFRAC_<NAME>`` (``DFRAC_TOL``,
``DFRAC_MAX_ITER``, ...); the override is read on each access so it can be
changed at runtime, for example by a test or a CI job.
"""

import os
from typing import Any

from .errors import ConfigError

ENV_PREFIX = "DFRAC_"


class Config:
    """Configuration class that provides default values and environment overrides.

    Attributes:
        tol: Step tolerance of the damped Picard iteration.
        max_iter: Iteration cap of the damped Picard iteration.
        damping: Relaxation weight omega of the Picard update.
        pivot_tol: Relative pivot threshold of the dense direct solver.
        perron_drift_tol: Rayleigh-quotient drift at which power iteration stops.
        perron_residual_tol: Eigen-residual required before power iteration stops.
        perron_max_iter: Iteration cap of the power iteration.
        holds_slack: Relative one-sided slack of the inequality verdict.
        sweep_workers: Thread count used by the parameter sweep.
    """

    tol: float = 1e-10
    max_iter: int = 10_000
    damping: float = 0.5
    pivot_tol: float = 1e-12
    perron_drift_tol: float = 1e-12
    perron_residual_tol: float = 1e-10
    perron_max_iter: int = 100_000
    holds_slack: float = 1e-9
    sweep_workers: int = 1

    def __getattribute__(self, item: str) -> Any:
        """Get attribute value, preferring a ``DFRAC_`` environment override.

        Args:
            item: The attribute name to retrieve.

        Returns:
            The environment value cast to the default's type, or the default.

        Raises:
            ConfigError: If the environment value cannot be cast.
        """
        default = super().__getattribute__(item)
        if item.startswith("_") or callable(default):
            return default

        variable = f"{ENV_PREFIX}{item.upper()}"
        raw = os.environ.get(variable)
        if raw is None:
            return default

        try:
            return type(default)(raw)
        except ValueError as e:
            raise ConfigError(
                f"{variable}={raw!r} is not a valid {type(default).__name__}"
            ) from e

    def as_dict(self) -> dict[str, Any]:
        """Resolved values of every setting, overrides applied."""
        names = [
            name
            for name in vars(Config)
            if not name.startswith("_") and not callable(getattr(Config, name))
        ]
        return {name: getattr(self, name) for name in names}


config = Config()
