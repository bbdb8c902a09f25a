"""Module for computing the box a figure occupies and where its ink goes."""

from typing import Iterable

from attrs import define, evolve, field

from modules.directive import (
    NATURAL_SCALE,
    Alignment,
    Axis,
    FigureDirective,
    Force,
    SessionConfig,
    Slides,
    Trims,
)
from modules.drivers import EmissionContext, SpecialEmission, emit
from modules.dscparse import BBoxProbe, NaturalDims, natural_dims
from modules.texfix import (
    ScaledDim,
    render_scaled,
    rescale,
    scale_op,
    show_dimen,
    tdiv,
)

# \FrameSpider rules are .4pt and overlap the box edge
RULE_THICKNESS = 26214


@define(frozen=True)
class TrimmedDims:
    width: ScaledDim
    height: ScaledDim
    left: ScaledDim = 0
    bottom: ScaledDim = 0
    warnings: tuple[str, ...] = field(default=(), converter=tuple)


@define(frozen=True)
class ScaleResolution:
    fig_scale: ScaledDim
    forced_axis: Axis | None = None
    forced_amount: ScaledDim | None = None


@define(frozen=True)
class ScaledFigure:
    width: ScaledDim
    height: ScaledDim
    left: ScaledDim = 0
    bottom: ScaledDim = 0
    shift_x: ScaledDim = 0
    shift_y: ScaledDim = 0


@define(frozen=True)
class BoxMetrics:
    box_width: ScaledDim
    height_above_baseline: ScaledDim
    depth_below_baseline: ScaledDim


@define(frozen=True)
class Placement:
    """
    Box metrics relative to the baseline, and the PostScript origin as an
    offset from the box's lower-left corner (+x right, +y up)
    """

    box_width: ScaledDim
    height_above_baseline: ScaledDim
    depth_below_baseline: ScaledDim
    ink_anchor_x: ScaledDim
    ink_anchor_y: ScaledDim
    fig_scale: ScaledDim
    fig_scale_real: str
    alignment: Alignment = Alignment.CENTER
    show_frames: bool = True
    rule_thickness: ScaledDim = RULE_THICKNESS
    warnings: tuple[str, ...] = field(default=(), converter=tuple)

    @property
    def total_height(self) -> ScaledDim:
        return self.height_above_baseline + self.depth_below_baseline


def apply_trims(dims: NaturalDims, trims: Trims) -> TrimmedDims:
    """Subtract trims; left and bottom are kept for the ink shift."""
    width = dims.width - trims.left - trims.right
    height = dims.height - trims.top - trims.bottom
    warnings = [
        f"Trimmed {what} is not positive ({show_dimen(value)})"
        for what, value in (("width", width), ("height", height))
        if value <= 0
    ]
    return TrimmedDims(width, height, trims.left, trims.bottom, warnings)


def resolve_scale(
    directive: FigureDirective,
    width: ScaledDim,
    height: ScaledDim,
) -> tuple[ScaleResolution, str]:
    """
    The scale to apply (1000pt is natural size) and its rendered decimal

    A forced dimension overrides the directive's scale with the one that
    maps the trimmed natural size onto it.
    """
    if (force := directive.force) is None:
        resolution = ScaleResolution(directive.scale)
    else:
        natural = width if force.axis is Axis.WIDTH else height
        resolution = ScaleResolution(
            fig_scale=rescale(NATURAL_SCALE, force.amount, natural),
            forced_axis=force.axis,
            forced_amount=force.amount,
        )
    return resolution, render_scaled(resolution.fig_scale)


def scale_dims(
    resolution: ScaleResolution,
    trimmed: TrimmedDims,
    origin_shift: tuple[ScaledDim, ScaledDim] = (0, 0),
) -> ScaledFigure:
    the_scale = resolution.fig_scale
    width = scale_op(trimmed.width, the_scale)
    height = scale_op(trimmed.height, the_scale)
    match resolution.forced_axis:
        case Axis.WIDTH:
            width = resolution.forced_amount
        case Axis.HEIGHT:
            height = resolution.forced_amount

    return ScaledFigure(
        width=width,
        height=height,
        left=scale_op(trimmed.left, the_scale),
        bottom=scale_op(trimmed.bottom, the_scale),
        shift_x=scale_op(origin_shift[0], the_scale),
        shift_y=scale_op(origin_shift[1], the_scale),
    )


def ink_anchor(
    shift_x: ScaledDim,
    shift_y: ScaledDim,
    left: ScaledDim,
    bottom: ScaledDim,
    slides: Slides,
) -> tuple[ScaledDim, ScaledDim]:
    """Slides are applied after scaling; a positive vertical slide moves ink down."""
    return shift_x - left + slides.h, shift_y - bottom - slides.v


def compose_box(
    width: ScaledDim,
    height: ScaledDim,
    alignment: Alignment,
    axis_height: ScaledDim,
) -> BoxMetrics:
    """
    Split the figure's height around the baseline

    >>> compose_box(0, 655360, Alignment.CENTER, 163840)
    BoxMetrics(box_width=0, height_above_baseline=491520, depth_below_baseline=163840)
    """
    match Alignment(alignment):
        case Alignment.TOP:
            above = 0
        case Alignment.BOTTOM:
            above = height
        case Alignment.CENTER:
            above = tdiv(height, 2) + axis_height
    return BoxMetrics(width, above, height - above)


def place(
    directive: FigureDirective,
    cfg: SessionConfig,
    probe: BBoxProbe,
    probe_warnings: Iterable[str] = (),
) -> Placement:
    """Run the whole placement pipeline for one figure."""
    dims = natural_dims(probe, cfg.ps_origin)
    trimmed = apply_trims(dims, directive.trims)
    resolution, fig_scale_real = resolve_scale(directive, trimmed.width, trimmed.height)
    scaled = scale_dims(
        resolution,
        trimmed,
        (dims.origin_shift_x, dims.origin_shift_y),
    )
    anchor_x, anchor_y = ink_anchor(
        scaled.shift_x,
        scaled.shift_y,
        scaled.left,
        scaled.bottom,
        directive.slides,
    )
    box = compose_box(scaled.width, scaled.height, directive.alignment, cfg.axis_height)

    return Placement(
        box_width=box.box_width,
        height_above_baseline=box.height_above_baseline,
        depth_below_baseline=box.depth_below_baseline,
        ink_anchor_x=anchor_x,
        ink_anchor_y=anchor_y,
        fig_scale=resolution.fig_scale,
        fig_scale_real=fig_scale_real,
        alignment=directive.alignment,
        show_frames=directive.show_frames,
        warnings=[*probe_warnings, *trimmed.warnings],
    )


@define(frozen=True)
class Inclusion:
    """One placed figure with the driver lines that include it."""

    directive: FigureDirective
    probe: BBoxProbe
    dims: NaturalDims
    placement: Placement
    emission: SpecialEmission

    @property
    def warnings(self) -> tuple[str, ...]:
        return self.placement.warnings + self.emission.warnings


@define(slots=False)
class FigureSession:
    """
    Placements in document order

    Carries a persistent force from one figure to the next and shows the
    unset-driver warning only once.
    """

    cfg: SessionConfig = field(factory=SessionConfig)
    carried_force: Force | None = None
    warned_standard: bool = False

    def include(
        self,
        directive: FigureDirective,
        probe: BBoxProbe,
        probe_warnings: Iterable[str] = (),
    ) -> Inclusion:
        if directive.force is None and not directive.release_force:
            directive = evolve(directive, force=self.carried_force)

        placement = place(directive, self.cfg, probe, probe_warnings)
        dims = natural_dims(probe, self.cfg.ps_origin)
        emission = emit(
            self.cfg.driver,
            directive.file_spec,
            placement.fig_scale_real,
            EmissionContext(
                mag=self.cfg.mag,
                llx_token=dims.llx_token,
                lly_token=dims.lly_token,
                untrimmed_width=dims.untrimmed_width,
                untrimmed_height=dims.untrimmed_height,
            ),
        )
        if emission.warnings:
            if self.warned_standard:
                emission = evolve(emission, warnings=())
            self.warned_standard = True

        force = directive.force
        self.carried_force = force if force is not None and force.persistent else None
        return Inclusion(directive, probe, dims, placement, emission)
