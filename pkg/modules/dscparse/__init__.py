"""Module for probing EPS files for their bounding box."""

import re
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, TextIO

from attrs import define, field

from modules.texfix import (
    DecimalSyntaxError,
    ScaledDim,
    dim_from_unit,
    parse_decimal,
)

PLACEHOLDER = ("0", "0", "100", "100")
MAX_LINE_LENGTH = 64 * 1024
BBOX_KEY = "BoundingBox:"
PS_SIGNATURE = "%!"
ATEND = "atend"
# characters the probe reads with comment catcode
COMMENT_CHARS = ("G", "\\")
PLACEHOLDER_WARNING = "!!! Will use placeholder !!!"

_BLANKS = re.compile(r"[ \t]+")


class ProbeStatus(str, Enum):
    FOUND = "found"
    MISSING_FILE = "missing_file"
    NOT_POSTSCRIPT = "not_postscript"
    NO_BBOX_LINE = "no_bbox_line"
    ATEND = "atend"


class BoundingBoxSyntaxError(ValueError):
    """A BoundingBox line whose coordinates are not four decimals."""


class LineTooLong(ValueError):
    """An input line exceeds MAX_LINE_LENGTH."""


@define(frozen=True)
class BBoxProbe:
    """Result of scanning an EPS file for its bounding box."""

    llx: str = "0"
    lly: str = "0"
    urx: str = "100"
    ury: str = "100"
    status: ProbeStatus = field(default=ProbeStatus.FOUND, converter=ProbeStatus)
    raw_line: str = ""

    @property
    def tokens(self) -> tuple[str, str, str, str]:
        return self.llx, self.lly, self.urx, self.ury

    @property
    def is_placeholder(self) -> bool:
        return self.status is not ProbeStatus.FOUND


@define(frozen=True)
class NaturalDims:
    """Bounding box size in scaled points, before trimming and scaling."""

    width: ScaledDim
    height: ScaledDim
    origin_shift_x: ScaledDim = 0
    origin_shift_y: ScaledDim = 0
    untrimmed_width: ScaledDim = field()
    untrimmed_height: ScaledDim = field()
    llx_token: str = "0"
    lly_token: str = "0"

    @untrimmed_width.default
    def _untrimmed_width(self) -> ScaledDim:
        return self.width

    @untrimmed_height.default
    def _untrimmed_height(self) -> ScaledDim:
        return self.height


def tex_line(raw: str) -> str:
    """
    View a raw line the way \\read sees it with the probe's catcodes

    >>> tex_line("  %%BoundingBox:\\t0   0 100 100  ")
    '%%BoundingBox: 0 0 100 100'
    """
    for char in COMMENT_CHARS:
        raw = raw.partition(char)[0]
    return _BLANKS.sub(" ", raw).strip(" ")


def read_lines(handle: TextIO) -> Iterator[str]:
    """Yield lines from a text handle opened with universal newlines."""
    while line := handle.readline(MAX_LINE_LENGTH + 1):
        line = line.rstrip("\n")
        if len(line) > MAX_LINE_LENGTH:
            raise LineTooLong(f"Line exceeds {MAX_LINE_LENGTH} characters")
        yield line


def _placeholder(status: ProbeStatus) -> BBoxProbe:
    return BBoxProbe(*PLACEHOLDER, status=status, raw_line=f"{BBOX_KEY}0 0 100 100")


def _coordinates(remainder: str) -> tuple[str, str, str, str]:
    tokens = remainder.split()
    if len(tokens) < 4:
        raise BoundingBoxSyntaxError(
            f"Expected four coordinates after {BBOX_KEY!r}, got {remainder!r}"
        )
    for token in tokens[:4]:
        try:
            parse_decimal(token)
        except DecimalSyntaxError as exc:
            raise BoundingBoxSyntaxError(f"Invalid coordinate {token!r}") from exc
    return tokens[0], tokens[1], tokens[2], tokens[3]


def probe_eps(
    line_source: Iterable[str] | None,
    name: str,
    directory: str = "",
) -> tuple[BBoxProbe, list[str]]:
    """
    Scan lines for the first one containing "BoundingBox:"

    A line_source of None means the file could not be opened. Every failure
    maps to the 0 0 100 100 placeholder and a warning.
    """
    spec = f"{directory}{name}"
    if line_source is None:
        return _placeholder(ProbeStatus.MISSING_FILE), [
            f"!!! EPS FILE {spec} WAS NOT FOUND !!!",
            PLACEHOLDER_WARNING,
        ]

    lines = (tex_line(raw) for raw in line_source)
    try:
        if PS_SIGNATURE not in next(lines, ""):
            return _placeholder(ProbeStatus.NOT_POSTSCRIPT), [
                f"!!! {name} not PS! !!!",
                PLACEHOLDER_WARNING,
            ]
        matched = next((line for line in lines if BBOX_KEY in line), None)
    except LineTooLong:
        matched = None

    if matched is None:
        return _placeholder(ProbeStatus.NO_BBOX_LINE), [
            f"!!! BoundingBox NOT FOUND IN {spec} !!!",
            PLACEHOLDER_WARNING,
        ]

    remainder = matched.partition(BBOX_KEY)[2].lstrip(" ")
    if ATEND in remainder:
        return _placeholder(ProbeStatus.ATEND), [
            f"!!! BoundingBox not found in {spec} !!!",
            "!!! It must not be at end of EPSF !!!",
            PLACEHOLDER_WARNING,
        ]

    return BBoxProbe(*_coordinates(remainder), raw_line=matched), []


def probe_file(
    path: Path | str,
    name: str | None = None,
    directory: str = "",
) -> tuple[BBoxProbe, list[str]]:
    """Probe a file on disk; unreadable files count as missing."""
    name = name if name is not None else str(path)
    try:
        handle = open(path, mode="r", encoding="latin-1", newline=None)
    except OSError:
        return probe_eps(None, name, directory)

    with handle:
        return probe_eps(read_lines(handle), name, directory)


def natural_dims(probe: BBoxProbe, ps_origin: bool) -> NaturalDims:
    """Width and height of the bounding box in sp, plus the PS-origin shift."""
    corners: list[ScaledDim] = []
    for token in probe.tokens:
        try:
            corners.append(dim_from_unit(parse_decimal(token), "bp"))
        except DecimalSyntaxError as exc:
            raise BoundingBoxSyntaxError(f"Invalid coordinate {token!r}") from exc
    llx, lly, urx, ury = corners

    return NaturalDims(
        width=urx - llx,
        height=ury - lly,
        origin_shift_x=-llx if ps_origin else 0,
        origin_shift_y=-lly if ps_origin else 0,
        llx_token=probe.llx,
        lly_token=probe.lly,
    )
