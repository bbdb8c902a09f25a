"""Per-figure report records and their human, JSON and YAML renderings."""

import json
from io import StringIO
from typing import Any, Iterable, Sequence

from jinja2 import Environment
from ruamel.yaml import YAML

from modules.drivers import DriverKind, aliases_for, ps_origin
from modules.dscparse import BBoxProbe, NaturalDims
from modules.layout import Inclusion
from modules.texfix import ScaledDim, show_dimen

from .config import OutputFormat

BBOX_TEMPLATE = """\
{{ file_spec }}: {{ status }}
  bbox     {{ bbox | join(" ") }}
  natural  {{ natural.width.pt }} x {{ natural.height.pt }}
"""

FIGURE_TEMPLATE = """\
{{ file_spec }}: {{ status }}
  bbox     {{ bbox | join(" ") }}
  natural  {{ natural.width.pt }} x {{ natural.height.pt }}
  scale    {{ fig_scale_real }}
  box      {{ box.width.pt }} wide, {{ box.height.pt }} high, {{ box.depth.pt }} deep ({{ alignment }})
  anchor   {{ ink_anchor.x.pt }}, {{ ink_anchor.y.pt }}
{% if frames.shown %}
  frames   {{ frames.rule_thickness.pt }} rules
{% endif %}
{% for line in special %}
  special  {{ line }}
{% endfor %}
"""

SETUP_TEMPLATE = """\
{% for line in setup %}
setup    {{ line }}
{% endfor %}
"""

DRIVERS_TEMPLATE = """\
{{ "%-20s" | format(kind) }} ps_origin={{ ps_origin | lower }}
{%- if aliases %} aliases={{ aliases | join(",") }}{% endif %}

"""

_environment = Environment(
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)


def dimen(value: ScaledDim) -> dict[str, Any]:
    return {"sp": value, "pt": show_dimen(value)}


def _natural(dims: NaturalDims) -> dict[str, Any]:
    return {"width": dimen(dims.width), "height": dimen(dims.height)}


def bbox_record(
    file_spec: str,
    probe: BBoxProbe,
    dims: NaturalDims,
    warnings: Iterable[str] = (),
) -> dict[str, Any]:
    return {
        "file_spec": file_spec,
        "status": probe.status.value,
        "bbox": list(probe.tokens),
        "natural": _natural(dims),
        "warnings": list(warnings),
    }


def figure_record(inclusion: Inclusion, driver: DriverKind) -> dict[str, Any]:
    placement = inclusion.placement
    emission = inclusion.emission
    return {
        "file_spec": inclusion.directive.file_spec,
        "status": inclusion.probe.status.value,
        "bbox": list(inclusion.probe.tokens),
        "natural": _natural(inclusion.dims),
        "fig_scale": dimen(placement.fig_scale),
        "fig_scale_real": placement.fig_scale_real,
        "alignment": placement.alignment.value,
        "box": {
            "width": dimen(placement.box_width),
            "height": dimen(placement.height_above_baseline),
            "depth": dimen(placement.depth_below_baseline),
        },
        "ink_anchor": {
            "x": dimen(placement.ink_anchor_x),
            "y": dimen(placement.ink_anchor_y),
        },
        "frames": {
            "shown": placement.show_frames,
            "rule_thickness": dimen(placement.rule_thickness),
        },
        "driver": driver.value,
        "ps_origin": emission.ps_origin,
        "setup": list(emission.setup_lines),
        "special": list(emission.figure_lines),
        "warnings": list(inclusion.warnings),
    }


def driver_records() -> list[dict[str, Any]]:
    return [
        {
            "kind": kind.value,
            "ps_origin": ps_origin(kind),
            "aliases": aliases_for(kind),
        }
        for kind in DriverKind
    ]


def render(
    records: Sequence[dict[str, Any]],
    fmt: OutputFormat,
    template: str = FIGURE_TEMPLATE,
    setup: Sequence[str] = (),
) -> str:
    """
    Render records in the requested format

    Machine formats give one self-contained record per figure; human output
    shows the driver setup lines once, ahead of the figures.
    """
    match OutputFormat(fmt):
        case OutputFormat.JSON:
            return "".join(f"{json.dumps(r, sort_keys=True)}\n" for r in records)
        case OutputFormat.YAML:
            if not records:
                return ""
            yaml = YAML()
            yaml.explicit_start = True
            stream = StringIO()
            yaml.dump_all(records, stream)
            return stream.getvalue()
        case OutputFormat.HUMAN:
            header = _environment.from_string(SETUP_TEMPLATE).render(setup=setup)
            body = _environment.from_string(template)
            return header + "".join(body.render(**record) for record in records)
