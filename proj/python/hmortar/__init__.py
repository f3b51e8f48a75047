"""Harmonic-mortar machine simulator: thin wrapper over the C++ core."""

try:
    from ._core import (  # type: ignore[attr-defined]
        ConfigError,
        InstabilityError,
        MachineConfig,
        cogging_order,
        config_from_json,
        default_config,
        rotate_point,
        solve_at,
        sweep,
    )
except ImportError:
    # development layout: extension built next to the package dir
    from _core import (  # type: ignore[no-redef]
        ConfigError,
        InstabilityError,
        MachineConfig,
        cogging_order,
        config_from_json,
        default_config,
        rotate_point,
        solve_at,
        sweep,
    )

__all__ = [
    "ConfigError",
    "InstabilityError",
    "MachineConfig",
    "cogging_order",
    "config_from_json",
    "default_config",
    "rotate_point",
    "solve_at",
    "sweep",
]
