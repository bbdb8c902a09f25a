"""Module for emitting driver \\special strings."""

from .src.emitters import (
    ALIASES,
    EMITTERS,
    STANDARD_HINT,
    STANDARD_WARNING,
    DriverKind,
    EmissionContext,
    ScaleText,
    SpecialEmission,
)

__all__ = [
    "ALIASES",
    "STANDARD_HINT",
    "STANDARD_WARNING",
    "DriverKind",
    "EmissionContext",
    "SpecialEmission",
    "emit",
    "ps_origin",
    "aliases_for",
]


def _kind(driver: DriverKind | str) -> DriverKind:
    return driver if isinstance(driver, DriverKind) else DriverKind.from_name(driver)


def emit(
    driver: DriverKind | str,
    file_spec: str,
    fig_scale_real: str,
    ctx: EmissionContext | None = None,
) -> SpecialEmission:
    """
    Produce the \\special lines a driver needs to include one figure

    fig_scale_real is the rendered figure scale (eg. "1000.0").
    """
    return EMITTERS[_kind(driver)].emit(
        file_spec,
        ScaleText(fig_scale_real),
        ctx or EmissionContext(),
    )


def ps_origin(driver: DriverKind | str) -> bool:
    """Whether the driver places the PostScript origin at the box's lower-left."""
    return EMITTERS[_kind(driver)].ps_origin


def aliases_for(driver: DriverKind | str) -> list[str]:
    kind = _kind(driver)
    return sorted(alias for alias, target in ALIASES.items() if target is kind)
