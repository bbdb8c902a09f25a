"""Module for normalizing figure inclusion requests."""

from enum import Enum

from attrs import define, evolve, field
from attrs.validators import gt, instance_of, optional

from modules.drivers import DriverKind
from modules.drivers import ps_origin as driver_ps_origin
from modules.texfix import (
    UNITY,
    DecimalSyntaxError,
    DimensionError,
    ScaledDim,
    dim_from_unit,
    parse_decimal,
)

NATURAL_SCALE = 1000 * UNITY
AXIS_HEIGHT = 163840
SCALE_KEYWORD = "scaled"
NAME_WITH_SPACE = "FigNameWithSpace"


class DirectiveError(ValueError):
    """An inclusion request that cannot be turned into a directive."""


class FigNameWithSpaceError(DirectiveError):
    sentinel = NAME_WITH_SPACE

    def __init__(self, raw: str) -> None:
        super().__init__(f"Figure name {raw!r} contains a space ({self.sentinel})")
        self.raw = raw


class Edge(str, Enum):
    TOP = "top"
    LEFT = "left"
    BOTTOM = "bottom"
    RIGHT = "right"
    ALL = "all"


class Axis(str, Enum):
    WIDTH = "width"
    HEIGHT = "height"


class Slide(str, Enum):
    H = "h"
    V = "v"


class Alignment(str, Enum):
    CENTER = "center"
    TOP = "top"
    BOTTOM = "bottom"

    @classmethod
    def _missing_(cls, value):
        # c/t/b as in \cBoxedEPSF, \tBoxedEPSF, \bBoxedEPSF
        if isinstance(value, str):
            for member in cls:
                if value.strip().lower() == member.value[0]:
                    return member
        return None


@define(frozen=True)
class Trims:
    top: ScaledDim = 0
    left: ScaledDim = 0
    bottom: ScaledDim = 0
    right: ScaledDim = 0


@define(frozen=True)
class Slides:
    h: ScaledDim = 0
    v: ScaledDim = 0


@define(frozen=True)
class Force:
    """A forced width or height, one-shot unless persistent."""

    amount: ScaledDim
    axis: Axis = field(converter=Axis)
    persistent: bool = False


@define(frozen=True)
class SessionConfig:
    """Settings that hold across every figure of a session."""

    default_scale: ScaledDim = field(default=NATURAL_SCALE, validator=gt(0))
    directory_prefix: str = ""
    driver: DriverKind = field(
        default=DriverKind.STANDARD_UNSET,
        converter=lambda value: (
            value if isinstance(value, DriverKind) else DriverKind.from_name(value)
        ),
    )
    mag: int = field(default=1000, validator=[instance_of(int), gt(0)])
    axis_height: ScaledDim = AXIS_HEIGHT
    ps_origin_override: bool | None = field(
        default=None,
        validator=optional(instance_of(bool)),
    )
    show_frames: bool = True

    @property
    def ps_origin(self) -> bool:
        if self.ps_origin_override is not None:
            return self.ps_origin_override
        return driver_ps_origin(self.driver)


@define(frozen=True)
class FigureDirective:
    """Everything needed to place one figure."""

    file_name: str
    file_spec: str
    scale: ScaledDim = NATURAL_SCALE
    trims: Trims = Trims()
    force: Force | None = None
    release_force: bool = False
    slides: Slides = Slides()
    alignment: Alignment = field(default=Alignment.CENTER, converter=Alignment)
    show_frames: bool = True


def trim_name(raw: str) -> str:
    """
    Strip surrounding spaces from a figure name

    >>> trim_name("  fig.eps ")
    'fig.eps'
    """
    name = raw.strip(" ")
    if " " in name:
        raise FigNameWithSpaceError(raw)
    if not name:
        raise DirectiveError("Empty figure name")
    return name


def _scale_from_text(text: str) -> ScaledDim:
    try:
        scale = dim_from_unit(parse_decimal(text), "pt")
    except (DecimalSyntaxError, DimensionError) as exc:
        raise DirectiveError(f"Invalid figure scale {text.strip()!r}: {exc}") from exc
    if scale <= 0:
        raise DirectiveError(f"Figure scale must be positive, got {text.strip()!r}")
    return scale


def parse_name_and_scale(arg: str, default_scale: ScaledDim) -> tuple[str, ScaledDim]:
    """
    Split "name scaled N" into a name and a scale in pt (1000pt is natural size)

    >>> parse_name_and_scale("fig.eps scaled 500", NATURAL_SCALE)
    ('fig.eps', 32768000)
    """
    if not arg.strip():
        raise DirectiveError("Empty figure request")

    if f" {SCALE_KEYWORD}" not in arg:
        return trim_name(arg), default_scale

    name, _, tail = arg.partition(SCALE_KEYWORD)
    return trim_name(name), _scale_from_text(tail)


def resolve_spec(name: str, cfg: SessionConfig) -> str:
    return f"{cfg.directory_prefix}{name}"


def accumulate_trims(
    directive: FigureDirective,
    edge: Edge | str,
    amount: ScaledDim,
) -> FigureDirective:
    """Add amount to one edge's trim, or to all four for Edge.ALL."""
    edges = [*Edge][:4] if (edge := Edge(edge)) is Edge.ALL else [edge]
    trims = directive.trims
    trims = evolve(trims, **{e.value: getattr(trims, e.value) + amount for e in edges})
    return evolve(directive, trims=trims)


def accumulate_slides(
    directive: FigureDirective,
    axis: Slide | str,
    amount: ScaledDim,
) -> FigureDirective:
    axis = Slide(axis)
    slides = directive.slides
    return evolve(
        directive,
        slides=evolve(slides, **{axis.value: getattr(slides, axis.value) + amount}),
    )


def force_width(
    directive: FigureDirective,
    amount: ScaledDim,
    persistent: bool = False,
) -> FigureDirective:
    """Force the placed width; replaces any earlier force."""
    return evolve(directive, force=Force(amount, Axis.WIDTH, persistent))


def force_height(
    directive: FigureDirective,
    amount: ScaledDim,
    persistent: bool = False,
) -> FigureDirective:
    """Force the placed height; replaces any earlier force."""
    return evolve(directive, force=Force(amount, Axis.HEIGHT, persistent))


def release_force(directive: FigureDirective) -> FigureDirective:
    """Drop a force carried over from an earlier persistent one."""
    return evolve(directive, force=None, release_force=True)


def show_frames(directive: FigureDirective, shown: bool) -> FigureDirective:
    return evolve(directive, show_frames=shown)


def set_default_scale(cfg: SessionConfig, text: str) -> SessionConfig:
    """
    Change the scale used when a request has no "scaled" part

    >>> set_default_scale(SessionConfig(), "500").default_scale
    32768000
    """
    return evolve(cfg, default_scale=_scale_from_text(text))


def set_directory(cfg: SessionConfig, prefix: str) -> SessionConfig:
    """Set the prefix prepended to every figure name; spaces trimmed as for names."""
    prefix = prefix.strip(" ")
    if " " in prefix:
        raise FigNameWithSpaceError(prefix)
    return evolve(cfg, directory_prefix=prefix)


def build_directive(
    arg: str,
    cfg: SessionConfig,
    *,
    trims: Trims | None = None,
    slides: Slides | None = None,
    force: Force | None = None,
    release: bool = False,
    alignment: Alignment | str = Alignment.CENTER,
    frames: bool | None = None,
) -> FigureDirective:
    """Turn a request and per-figure options into a FigureDirective."""
    name, scale = parse_name_and_scale(arg, cfg.default_scale)
    return FigureDirective(
        file_name=name,
        file_spec=resolve_spec(name, cfg),
        scale=scale,
        trims=trims or Trims(),
        slides=slides or Slides(),
        force=force,
        release_force=release,
        alignment=alignment,
        show_frames=cfg.show_frames if frames is None else frames,
    )
