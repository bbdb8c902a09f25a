"""Layered session configuration: schema defaults, config file, manifest, flags."""

from enum import Enum
from functools import cache
from pathlib import Path
from typing import Any, Mapping

from attrs import define, field
from attrs.validators import ge
from jsonschema import Draft7Validator
from jsonschema.exceptions import best_match
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

from modules.directive import SessionConfig, set_default_scale, set_directory
from modules.texfix import DimensionError, parse_dimen

SCHEMA_PATH = Path(__file__).parents[3] / "schema.yaml"


class ConfigError(ValueError):
    """Configuration that does not validate against the schema."""


class OutputFormat(str, Enum):
    HUMAN = "human"
    JSON = "json"
    YAML = "yaml"


@define(frozen=True)
class RunOptions:
    """Session settings plus the knobs that only concern the CLI."""

    session: SessionConfig = field(factory=SessionConfig)
    strict: bool = False
    format: OutputFormat = field(default=OutputFormat.HUMAN, converter=OutputFormat)
    jobs: int = field(default=1, validator=ge(1))
    log_level: str = "INFO"


@cache
def load_schema(path: Path = SCHEMA_PATH) -> dict[str, Any]:
    return YAML(typ="safe").load(path)


def schema_defaults(schema: Mapping[str, Any]) -> dict[str, Any]:
    return {
        key: spec["default"]
        for key, spec in schema["properties"].items()
        if "default" in spec
    }


def load_config_file(path: Path) -> dict[str, Any]:
    try:
        values = YAML(typ="safe").load(Path(path))
    except (OSError, YAMLError) as exc:
        raise ConfigError(f"Unable to read config file {path}: {exc}") from exc
    if values is None:
        return {}
    if not isinstance(values, Mapping):
        raise ConfigError(f"Config file {path} must contain a mapping")
    return dict(values)


def validate(values: Mapping[str, Any], source: str) -> None:
    validator = Draft7Validator(load_schema())
    if (error := best_match(validator.iter_errors(dict(values)))) is not None:
        where = ".".join(str(p) for p in error.absolute_path)
        raise ConfigError(f"{source}: {where + ': ' if where else ''}{error.message}")


def merge(*layers: Mapping[str, Any] | None) -> dict[str, Any]:
    """Later layers win; None values (flags not given) are skipped."""
    merged: dict[str, Any] = {}
    for layer in layers:
        merged |= {k: v for k, v in (layer or {}).items() if v is not None}
    return merged


def build_options(
    config_file: Mapping[str, Any] | None = None,
    manifest: Mapping[str, Any] | None = None,
    flags: Mapping[str, Any] | None = None,
) -> RunOptions:
    """
    Merge every configuration layer into RunOptions

    Each layer is validated on its own so errors name their source.
    """
    for source, layer in (
        ("config file", config_file),
        ("manifest config", manifest),
        ("command line", merge(flags)),
    ):
        validate(layer or {}, source)

    values = merge(schema_defaults(load_schema()), config_file, manifest, flags)
    try:
        session = SessionConfig(
            driver=values["driver"],
            mag=values["mag"],
            axis_height=parse_dimen(str(values["axis_height"])),
            ps_origin_override=values.get("ps_origin"),
            show_frames=values["frames"],
        )
        session = set_default_scale(session, str(values["default_scale"]))
        session = set_directory(session, values["directory"])
    except (ValueError, DimensionError) as exc:
        raise ConfigError(str(exc)) from exc

    return RunOptions(
        session=session,
        strict=values["strict"],
        format=values["format"],
        jobs=values["jobs"],
        log_level=values["log_level"],
    )
