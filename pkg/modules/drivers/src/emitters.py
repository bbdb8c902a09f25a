from enum import Enum

from attrs import define, field

from modules.texfix import (
    UNITY,
    ScaledDim,
    dim_from_unit,
    parse_decimal,
    render_scaled,
    rescale,
    show_dimen,
    tdiv,
)

NATURAL_SCALE = 1000 * UNITY
STANDARD_WARNING = (
    "!!! Sorry! There is still no standard for \\special EPSF integration !!!"
)
STANDARD_HINT = (
    "--- So you will have to identify your driver using a command",
    "--- of the form \\Set...EPSFSpecial, in order to get",
    "--- your graphics to print.  See BoxedEPS.doc.",
)
# startTexFig arguments the psfig-style drivers pass before the scale
TEXFIG_BOX = "10 10 0 0 10 10 startTexFig"


class DriverKind(str, Enum):
    TEXTURES = "textures"
    UNIX_COOP = "unix_coop"
    ROKICKI = "rokicki"
    INLINE_ROKICKI = "inline_rokicki"
    OZTEX = "oztex"
    LIS = "lis"
    PSPRINT = "psprint"
    ARBOR = "arbor"
    CLARK = "clark"
    BEEBE = "beebe"
    NORTHLAKE = "northlake"
    BECHTOLSHEIM_DVITPS = "bechtolsheim_dvitps"
    BECHTOLSHEIM_DVI2PS = "bechtolsheim_dvi2ps"
    STANDARD_UNSET = "standard_unset"

    @classmethod
    def from_name(cls, name: str) -> "DriverKind":
        """Look up a kind by name or alias ("dvipsone", "DVIALW", "inline-rokicki")"""
        key = name.strip().lower().replace("-", "_")
        if key in ALIASES:
            return ALIASES[key]
        try:
            return cls(key)
        except ValueError as exc:
            raise ValueError(f"Unknown driver {name!r}") from exc


ALIASES: dict[str, DriverKind] = {
    "dvipsone": DriverKind.UNIX_COOP,
    "dvialw": DriverKind.BEEBE,
}


@define(frozen=True)
class EmissionContext:
    """Per-figure values some drivers interpolate besides the file and scale."""

    mag: int = 1000
    llx_token: str = "0"
    lly_token: str = "0"
    untrimmed_width: ScaledDim = 0
    untrimmed_height: ScaledDim = 0


@define(frozen=True)
class SpecialEmission:
    setup_lines: tuple[str, ...] = field(default=(), converter=tuple)
    figure_lines: tuple[str, ...] = field(default=(), converter=tuple)
    ps_origin: bool = False
    warnings: tuple[str, ...] = field(default=(), converter=tuple)


@define(frozen=True)
class ScaleText:
    """
    The rendered figure scale and the numbers drivers derive from it

    >>> ScaleText("500.0").factor
    '0.5'
    """

    real: str

    @property
    def dimen(self) -> ScaledDim:
        return dim_from_unit(parse_decimal(self.real), "pt")

    @property
    def integer(self) -> str:
        return self.real.partition(".")[0]

    @property
    def factor(self) -> str:
        return render_scaled(tdiv(self.dimen, 1000))

    @property
    def percent(self) -> str:
        return render_scaled(tdiv(self.dimen, 10))


class Emitter:
    """Base class for driver special emitters."""

    kind: DriverKind
    ps_origin: bool
    setup_lines: tuple[str, ...] = ()

    def __init_subclass__(cls, kind: DriverKind, ps_origin: bool) -> None:
        cls.kind = kind
        cls.ps_origin = ps_origin
        EMITTERS[kind] = cls()

    def figure_lines(
        self,
        file_spec: str,
        scale: ScaleText,
        ctx: EmissionContext,
    ) -> list[str]:
        raise NotImplementedError

    def emit(
        self,
        file_spec: str,
        scale: ScaleText,
        ctx: EmissionContext,
    ) -> SpecialEmission:
        return SpecialEmission(
            setup_lines=self.setup_lines,
            figure_lines=self.figure_lines(file_spec, scale, ctx),
            ps_origin=self.ps_origin,
        )


EMITTERS: dict[DriverKind, Emitter] = {}


class TexturesEmitter(Emitter, kind=DriverKind.TEXTURES, ps_origin=False):
    def figure_lines(self, file_spec, scale, ctx):
        return [f"illustration {file_spec} scaled {scale.integer}"]


class UnixCoopEmitter(Emitter, kind=DriverKind.UNIX_COOP, ps_origin=True):
    def figure_lines(self, file_spec, scale, ctx):
        return [f"psfile={file_spec} hscale={scale.factor} vscale={scale.factor}"]


class RokickiEmitter(Emitter, kind=DriverKind.ROKICKI, ps_origin=True):
    def figure_lines(self, file_spec, scale, ctx):
        return [
            f'psfile="{file_spec}" hscale={scale.percent} vscale={scale.percent}'
        ]


def _texfig_scale(mag: int, factor: str) -> str:
    return f"{mag} 1000 div {factor} mul {mag} 1000 div {factor} mul scale"


class InlineRokickiEmitter(Emitter, kind=DriverKind.INLINE_ROKICKI, ps_origin=True):
    def figure_lines(self, file_spec, scale, ctx):
        return [
            f"ps::[begin] {TEXFIG_BOX} {_texfig_scale(ctx.mag, scale.factor)}",
            f"ps: plotfile {file_spec}",
            "ps::[end] endTexFig",
        ]


class OzTeXEmitter(Emitter, kind=DriverKind.OZTEX, ps_origin=True):
    def figure_lines(self, file_spec, scale, ctx):
        return [f'epsf="{file_spec}" scale={scale.factor}']


class LisEmitter(Emitter, kind=DriverKind.LIS, ps_origin=True):
    def figure_lines(self, file_spec, scale, ctx):
        return [
            f'pstext="{TEXFIG_BOX} {_texfig_scale(ctx.mag, scale.factor)}"',
            f"psfile={file_spec}",
            "pstext=endTexFig",
        ]


# The macro calls an undefined \PSOriginFALSE; treated as false
class PSprintEmitter(Emitter, kind=DriverKind.PSPRINT, ps_origin=False):
    def figure_lines(self, file_spec, scale, ctx):
        axis = f"{scale.real} 1000 div {ctx.mag} 1000 div mul"
        return [
            f"{file_spec} {axis} {axis} scale "
            f"{ctx.llx_token} neg {ctx.lly_token} neg translate"
        ]


class ArborEmitter(Emitter, kind=DriverKind.ARBOR, ps_origin=False):
    def figure_lines(self, file_spec, scale, ctx):
        return [f"ps: epsfile {file_spec} {scale.integer}"]


class ClarkEmitter(Emitter, kind=DriverKind.CLARK, ps_origin=False):
    """dvitops wants the final size, computed from the untrimmed box."""

    def figure_lines(self, file_spec, scale, ctx):
        width, height = (
            show_dimen(rescale(natural, scale.dimen, NATURAL_SCALE))
            for natural in (ctx.untrimmed_width, ctx.untrimmed_height)
        )
        return [f"dvitops: import {file_spec} {width} {height}"]


class BeebeEmitter(Emitter, kind=DriverKind.BEEBE, ps_origin=False):
    def figure_lines(self, file_spec, scale, ctx):
        return [
            f'language "PS", '
            f'literal "{scale.real} 1000 div {scale.real} 1000 div scale", '
            f'position = "bottom left", '
            f'include "{file_spec}"'
        ]


class NorthlakeEmitter(Emitter, kind=DriverKind.NORTHLAKE, ps_origin=True):
    def figure_lines(self, file_spec, scale, ctx):
        return [f"insert {file_spec},magnification={scale.integer}"]


class _BechtolsheimEmitter:
    tag: str

    def __init_subclass__(cls, tag: str, **kwargs) -> None:
        cls.tag = tag
        cls.setup_lines = (f'{tag}Include0 "psfig.pro"',)
        super().__init_subclass__(**kwargs)

    def figure_lines(self, file_spec, scale, ctx):
        # the second (dup) definition of the macro is the one in effect
        return [
            f'{self.tag}Literal "{TEXFIG_BOX} {ctx.mag} 1000 div dup 3.25 neg mul '
            f'2 index .25 neg mul translate {scale.factor} mul dup scale "',
            f'{self.tag}Include1 "{file_spec}"',
            f'{self.tag}Literal "endTexFig "',
        ]


class DvitpsEmitter(
    _BechtolsheimEmitter,
    Emitter,
    tag="dvitps: ",
    kind=DriverKind.BECHTOLSHEIM_DVITPS,
    ps_origin=True,
):
    pass


class Dvi2psEmitter(
    _BechtolsheimEmitter,
    Emitter,
    tag="DVI2PS: ",
    kind=DriverKind.BECHTOLSHEIM_DVI2PS,
    ps_origin=True,
):
    pass


class StandardEmitter(Emitter, kind=DriverKind.STANDARD_UNSET, ps_origin=False):
    def figure_lines(self, file_spec, scale, ctx):
        return []

    def emit(self, file_spec, scale, ctx):
        return SpecialEmission(
            ps_origin=self.ps_origin,
            warnings=[STANDARD_WARNING, *STANDARD_HINT],
        )
