"""Batch manifests: a config block and an ordered list of figure entries."""

from functools import cache
from pathlib import Path
from typing import Any, Iterable, Sequence

from attrs import define, field
from jsonschema import Draft7Validator
from jsonschema.exceptions import best_match
from ruamel.yaml import YAML
from ruamel.yaml.comments import CommentedMap, CommentedSeq
from ruamel.yaml.error import MarkedYAMLError, YAMLError

from modules.directive import (
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
from modules.texfix import DimensionError, parse_dimen

SCHEMA_PATH = Path(__file__).parents[1] / "schema.yaml"

TRIM_KEYS = {
    "trim": Edge.ALL,
    "trim_top": Edge.TOP,
    "trim_left": Edge.LEFT,
    "trim_bottom": Edge.BOTTOM,
    "trim_right": Edge.RIGHT,
}
SLIDE_KEYS = {"hslide": Slide.H, "vslide": Slide.V}


class ManifestError(ValueError):
    """A manifest that cannot be read, with the offending location."""

    def __init__(
        self,
        message: str,
        path: Path | str,
        line: int | None = None,
        column: int | None = None,
    ) -> None:
        self.path = path
        self.line = line
        self.column = column
        where = f"{path}" if line is None else f"{path}:{line}:{column or 1}"
        super().__init__(f"{where}: {message}")


@define(frozen=True)
class ManifestEntry:
    index: int
    values: dict[str, Any]
    line: int | None = None


@define(frozen=True)
class Manifest:
    path: Path
    config: dict[str, Any] = field(factory=dict)
    entries: tuple[ManifestEntry, ...] = field(default=(), converter=tuple)

    @property
    def persistent_force(self) -> bool:
        """Whether any entry carries a force over to later figures."""
        return any(e.values.get("persistent_force", False) for e in self.entries)


@cache
def _validator() -> Draft7Validator:
    return Draft7Validator(YAML(typ="safe").load(SCHEMA_PATH))


def _locate(document: Any, path: Iterable[Any]) -> tuple[int, int] | None:
    """Line and column (1-based) of the deepest node on path that has one."""
    node, location = document, None
    for step in path:
        try:
            if isinstance(node, CommentedSeq):
                location = node.lc.item(step)
            elif isinstance(node, CommentedMap):
                location = node.lc.key(step)
            node = node[step]
        except (KeyError, IndexError, TypeError):
            break
    return None if location is None else (location[0] + 1, location[1] + 1)


def load_manifest(path: Path | str) -> Manifest:
    """Read and validate a manifest; nothing is placed before this succeeds."""
    path = Path(path)
    try:
        document = YAML().load(path)
    except MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        raise ManifestError(
            exc.problem or str(exc),
            path,
            mark.line + 1 if mark else None,
            mark.column + 1 if mark else None,
        ) from exc
    except (OSError, YAMLError) as exc:
        raise ManifestError(str(exc), path) from exc

    if document is None:
        return Manifest(path)

    if (error := best_match(_validator().iter_errors(document))) is not None:
        location = _locate(document, error.absolute_path) or (None, None)
        raise ManifestError(error.message, path, *location)

    figures = document.get("figures") or []
    return Manifest(
        path=path,
        config=dict(document.get("config") or {}),
        entries=[
            ManifestEntry(
                index=index,
                values=dict(entry),
                line=figures.lc.item(index)[0] + 1,
            )
            for index, entry in enumerate(figures)
        ],
    )


def _dimen(entry: ManifestEntry, key: str, path: Path) -> int:
    try:
        return parse_dimen(entry.values[key])
    except (ValueError, DimensionError) as exc:
        raise ManifestError(f"{key}: {exc}", path, entry.line) from exc


def entry_directive(
    entry: ManifestEntry,
    cfg: SessionConfig,
    path: Path,
) -> FigureDirective:
    values = entry.values
    request = values["figure"]
    if "scale" in values:
        request = f"{request} scaled {values['scale']}"

    try:
        directive = build_directive(
            request,
            cfg,
            alignment=values.get("align", "c"),
            frames=values.get("frames"),
            release=values.get("release_force", False),
        )
    except ValueError as exc:
        raise ManifestError(str(exc), path, entry.line) from exc

    for key, edge in TRIM_KEYS.items():
        if key in values:
            directive = accumulate_trims(directive, edge, _dimen(entry, key, path))

    for key, axis in SLIDE_KEYS.items():
        if key in values:
            directive = accumulate_slides(directive, axis, _dimen(entry, key, path))

    persistent = values.get("persistent_force", False)
    if "force_width" in values:
        directive = force_width(directive, _dimen(entry, "force_width", path), persistent)
    if "force_height" in values:
        directive = force_height(
            directive, _dimen(entry, "force_height", path), persistent
        )

    return directive


def manifest_directives(
    manifest: Manifest,
    cfg: SessionConfig,
) -> Sequence[FigureDirective]:
    return [entry_directive(e, cfg, manifest.path) for e in manifest.entries]
