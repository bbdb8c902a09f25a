"""Command line interface: bbox, place, batch and drivers."""

import logging
import sys
from functools import partial
from logging import LoggerAdapter
from pathlib import Path
from typing import Any, Callable

import click
from attrs import evolve
from mpire import WorkerPool

from modules.directive import (
    Alignment,
    DirectiveError,
    Edge,
    FigureDirective,
    SessionConfig,
    Slide,
    accumulate_slides,
    accumulate_trims,
    build_directive,
    force_height,
    force_width,
)
from modules.drivers import STANDARD_WARNING
from modules.dscparse import BoundingBoxSyntaxError, natural_dims, probe_file
from modules.layout import FigureSession, Inclusion
from modules.texfix import DecimalSyntaxError, DimensionError, parse_dimen

from .src.config import (
    ConfigError,
    OutputFormat,
    RunOptions,
    build_options,
    load_config_file,
    load_schema,
)
from .src.manifest import ManifestError, load_manifest, manifest_directives
from .src.report import (
    BBOX_TEMPLATE,
    DRIVERS_TEMPLATE,
    bbox_record,
    driver_records,
    figure_record,
    render,
)

LOG_FORMAT = "%(levelname)s [%(label)s] %(message)s"
LOGGER_NAME = "boxedeps"
COMPOSED = "*** Box composed for the EPSF file {}"


class Dimen(click.ParamType):
    """A TeX dimension flag ("2pt", "1.5bp"); a default unit allows bare numbers."""

    name = "dimen"

    def __init__(self, default_unit: str | None = None) -> None:
        self.default_unit = default_unit

    def convert(self, value, param, ctx):
        if isinstance(value, int):
            return value
        try:
            return parse_dimen(value, default_unit=self.default_unit)
        except (DecimalSyntaxError, DimensionError) as exc:
            self.fail(str(exc), param, ctx)


DIMEN = Dimen()


def setup_logging(level: str) -> LoggerAdapter:
    logger = logging.getLogger(LOGGER_NAME)
    for handler in [*logger.handlers]:
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(level)
    return LoggerAdapter(logger, {"label": LOGGER_NAME})


def _figure_logger(logger: LoggerAdapter, label: str) -> LoggerAdapter:
    return LoggerAdapter(logger.logger, {"label": label})


def session_options(func: Callable) -> Callable:
    """Flags shared by every subcommand; each maps to a schema.yaml key."""
    schema = load_schema()["properties"]
    options = [
        click.option(
            "--config",
            "config_file",
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            help="YAML config file (keys as in schema.yaml)",
        ),
        click.option(
            "--driver",
            type=click.Choice(schema["driver"]["enum"], case_sensitive=False),
            help=schema["driver"]["description"],
        ),
        click.option("--mag", type=int, help=schema["mag"]["description"]),
        click.option(
            "--default-scale",
            "default_scale",
            help=schema["default_scale"]["description"],
        ),
        click.option("--directory", help=schema["directory"]["description"]),
        click.option(
            "--axis-height",
            "axis_height",
            help=schema["axis_height"]["description"],
        ),
        click.option(
            "--frames/--no-frames",
            default=None,
            help=schema["frames"]["description"],
        ),
        click.option(
            "--ps-origin/--no-ps-origin",
            "ps_origin",
            default=None,
            help=schema["ps_origin"]["description"],
        ),
        click.option(
            "--strict/--no-strict",
            default=None,
            help=schema["strict"]["description"],
        ),
        click.option(
            "--format",
            "fmt",
            type=click.Choice(schema["format"]["enum"]),
            help=schema["format"]["description"],
        ),
        click.option(
            "--jobs",
            type=click.IntRange(min=1),
            help=schema["jobs"]["description"],
        ),
        click.option(
            "--log_level",
            type=click.Choice(schema["log_level"]["enum"], case_sensitive=False),
            help=schema["log_level"]["description"],
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _flags(**kwargs: Any) -> dict[str, Any]:
    flags = {**kwargs}
    flags["format"] = flags.pop("fmt")
    if flags["driver"] is not None:
        flags["driver"] = flags["driver"].lower()
    if flags["log_level"] is not None:
        flags["log_level"] = flags["log_level"].upper()
    return flags


def _run_options(
    config_file: Path | None,
    flags: dict[str, Any],
    manifest: dict[str, Any] | None = None,
) -> RunOptions:
    try:
        return build_options(
            load_config_file(config_file) if config_file else None,
            manifest,
            flags,
        )
    except ConfigError as exc:
        raise click.UsageError(str(exc)) from exc


def _include(
    session: FigureSession,
    directive: FigureDirective,
    logger: LoggerAdapter,
) -> Inclusion:
    logger = _figure_logger(logger, directive.file_spec)
    probe, warnings = probe_file(
        directive.file_spec,
        name=directive.file_name,
        directory=session.cfg.directory_prefix,
    )
    inclusion = session.include(directive, probe, warnings)
    placement = inclusion.placement
    logger.debug(f"Figure scale {placement.fig_scale_real} ({placement.fig_scale}sp)")
    logger.info(COMPOSED.format(directive.file_spec))
    return inclusion


def _include_alone(cfg: SessionConfig, directive: FigureDirective) -> Inclusion:
    probe, warnings = probe_file(
        directive.file_spec,
        name=directive.file_name,
        directory=cfg.directory_prefix,
    )
    return FigureSession(cfg).include(directive, probe, warnings)


def _report(
    inclusions: list[Inclusion],
    options: RunOptions,
    logger: LoggerAdapter,
) -> None:
    for inclusion in inclusions:
        figure_logger = _figure_logger(logger, inclusion.directive.file_spec)
        for warning in inclusion.warnings:
            figure_logger.warning(warning)

    setup = next((i.emission.setup_lines for i in inclusions), ())
    records = [figure_record(i, options.session.driver) for i in inclusions]
    click.echo(render(records, options.format, setup=setup), nl=False)

    if options.strict and any(i.probe.is_placeholder for i in inclusions):
        logger.error("Placeholder bounding box used (--strict)")
        raise SystemExit(1)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Probe EPS bounding boxes, compute figure boxes and emit driver specials."""


@main.command()
@click.argument("path", type=click.Path(path_type=Path))
@session_options
def bbox(path: Path, config_file: Path | None, **kwargs: Any) -> None:
    """Print the bounding box and natural size of an EPS file."""
    options = _run_options(config_file, _flags(**kwargs))
    logger = setup_logging(options.log_level)
    figure_logger = _figure_logger(logger, str(path))

    try:
        probe, warnings = probe_file(path, name=str(path))
        dims = natural_dims(probe, options.session.ps_origin)
    except BoundingBoxSyntaxError as exc:
        figure_logger.error(exc)
        raise SystemExit(1) from exc
    for warning in warnings:
        figure_logger.warning(warning)

    record = bbox_record(str(path), probe, dims, warnings)
    click.echo(render([record], options.format, template=BBOX_TEMPLATE), nl=False)

    if options.strict and probe.is_placeholder:
        logger.error("Placeholder bounding box used (--strict)")
        raise SystemExit(1)


@main.command()
@click.argument("request")
@click.option(
    "--scale",
    type=Dimen(default_unit="pt"),
    help="Figure scale (1000 is natural size)",
)
@click.option("--force-width", "force_w", type=DIMEN, help="Force the placed width")
@click.option("--force-height", "force_h", type=DIMEN, help="Force the placed height")
@click.option("--trim", type=DIMEN, help="Trim all four edges")
@click.option("--trim-top", type=DIMEN, help="Trim the top edge")
@click.option("--trim-left", type=DIMEN, help="Trim the left edge")
@click.option("--trim-bottom", type=DIMEN, help="Trim the bottom edge")
@click.option("--trim-right", type=DIMEN, help="Trim the right edge")
@click.option("--hslide", type=DIMEN, help="Move the ink right (after scaling)")
@click.option("--vslide", type=DIMEN, help="Move the ink down (after scaling)")
@click.option(
    "--align",
    type=click.Choice(["c", "t", "b"], case_sensitive=False),
    default="c",
    show_default=True,
    help="Center on the math axis, hang from the baseline, or stand on it",
)
@session_options
def place(
    request: str,
    scale: int | None,
    force_w: int | None,
    force_h: int | None,
    trim: int | None,
    trim_top: int | None,
    trim_left: int | None,
    trim_bottom: int | None,
    trim_right: int | None,
    hslide: int | None,
    vslide: int | None,
    align: str,
    config_file: Path | None,
    **kwargs: Any,
) -> None:
    """Place one figure: REQUEST is "name" or "name scaled N"."""
    if force_w is not None and force_h is not None:
        raise click.UsageError("--force-width and --force-height are exclusive")
    options = _run_options(config_file, _flags(**kwargs))
    logger = setup_logging(options.log_level)

    try:
        directive = build_directive(request, options.session, alignment=Alignment(align))
    except DirectiveError as exc:
        raise click.BadParameter(str(exc), param_hint="REQUEST") from exc
    if scale is not None:
        if scale <= 0:
            raise click.BadParameter("must be positive", param_hint="--scale")
        directive = evolve(directive, scale=scale)

    for amount, edge in (
        (trim, Edge.ALL),
        (trim_top, Edge.TOP),
        (trim_left, Edge.LEFT),
        (trim_bottom, Edge.BOTTOM),
        (trim_right, Edge.RIGHT),
    ):
        if amount is not None:
            directive = accumulate_trims(directive, edge, amount)
    for amount, axis in ((hslide, Slide.H), (vslide, Slide.V)):
        if amount is not None:
            directive = accumulate_slides(directive, axis, amount)
    if force_w is not None:
        directive = force_width(directive, force_w)
    if force_h is not None:
        directive = force_height(directive, force_h)

    try:
        inclusion = _include(FigureSession(options.session), directive, logger)
    except (BoundingBoxSyntaxError, DimensionError) as exc:
        _figure_logger(logger, directive.file_spec).error(exc)
        raise SystemExit(1) from exc

    _report([inclusion], options, logger)


@main.command()
@click.argument("manifest_path", type=click.Path(path_type=Path))
@session_options
def batch(manifest_path: Path, config_file: Path | None, **kwargs: Any) -> None:
    """Place every figure of a YAML manifest, in order."""
    try:
        manifest = load_manifest(manifest_path)
    except ManifestError as exc:
        raise click.UsageError(str(exc)) from exc

    options = _run_options(config_file, _flags(**kwargs), manifest.config)
    logger = setup_logging(options.log_level)
    try:
        directives = manifest_directives(manifest, options.session)
    except ManifestError as exc:
        raise click.UsageError(str(exc)) from exc

    try:
        if options.jobs > 1 and not manifest.persistent_force:
            logger.debug(f"Placing {len(directives)} figures with {options.jobs} jobs")
            with WorkerPool(n_jobs=options.jobs) as pool:
                inclusions = pool.map(
                    partial(_include_alone, options.session),
                    directives,
                )
            for inclusion in inclusions:
                logger.info(COMPOSED.format(inclusion.directive.file_spec))
            inclusions = _warn_standard_once(inclusions)
        else:
            session = FigureSession(options.session)
            inclusions = [_include(session, d, logger) for d in directives]
    except (BoundingBoxSyntaxError, DimensionError) as exc:
        logger.error(exc)
        raise SystemExit(1) from exc

    _report(inclusions, options, logger)


def _warn_standard_once(inclusions: list[Inclusion]) -> list[Inclusion]:
    """Workers each start a session; keep the unset-driver warning on the first only."""
    first, *rest = inclusions or [None]
    if first is None:
        return []
    return [
        first,
        *(
            evolve(i, emission=evolve(i.emission, warnings=()))
            if STANDARD_WARNING in i.emission.warnings
            else i
            for i in rest
        ),
    ]


@main.command()
@click.option(
    "--format",
    "fmt",
    type=click.Choice([f.value for f in OutputFormat]),
    default=OutputFormat.HUMAN.value,
    show_default=True,
)
def drivers(fmt: str) -> None:
    """List driver kinds, their aliases and PostScript origin convention."""
    click.echo(render(driver_records(), fmt, template=DRIVERS_TEMPLATE), nl=False)


