"""Module for TeX scaled-point arithmetic."""

import re
from typing import Literal, TypeAlias

from attrs import define, field
from attrs.validators import ge, in_, lt

ScaledDim: TypeAlias = int
Unit = Literal["pt", "bp"]

UNITY = 65536
MAX_DIMEN = 0o7777777777
HMXDIM = 8192 * UNITY
MAX_FRACTION_DIGITS = 17

# (numerator, denominator) of the coercion to pt
UNITS: dict[str, tuple[int, int]] = {
    "pt": (1, 1),
    "bp": (7227, 7200),
}

_DIMEN_RE = re.compile(r"^\s*(?P<number>[+\-\s]*[0-9.,]*)\s*(?P<unit>[A-Za-z]*)\s*$")


class DimensionError(ArithmeticError):
    """Arithmetic on dimensions failed the way a TeX register would."""


class DimensionOverflow(DimensionError):
    """A result does not fit in a dimension register."""


class DegenerateDimension(DimensionError):
    """A divisor is zero after the staged truncation."""


class DecimalSyntaxError(ValueError):
    """Text is not a decimal constant (or dimension) TeX would accept."""


@define(frozen=True)
class DecimalConstant:
    """A scanned decimal: sign, integer part and fraction in units of 2^-16."""

    sign: int = field(default=1, validator=in_((1, -1)))
    int_part: int = field(default=0, validator=ge(0))
    frac: int = field(default=0, validator=[ge(0), lt(UNITY)])


def tdiv(dividend: int, divisor: int) -> int:
    """Integer division truncating toward zero (TeX's \\divide)."""
    quotient = abs(dividend) // abs(divisor)
    return quotient if (dividend < 0) == (divisor < 0) else -quotient


def check_dimen(value: int, what: str = "dimension") -> ScaledDim:
    if abs(value) > MAX_DIMEN:
        raise DimensionOverflow(f"{what} too large: {value}sp exceeds {MAX_DIMEN}sp")
    return value


def _round_decimals(digits: list[int]) -> int:
    a = 0
    for digit in reversed(digits):
        a = (a + digit * 2 * UNITY) // 10
    return (a + 1) // 2


def parse_decimal(text: str) -> DecimalConstant:
    """
    Scan a decimal constant the way TeX does before a unit

    >>> parse_decimal("0.5")
    DecimalConstant(sign=1, int_part=0, frac=32768)
    """
    sign = 1
    int_part = 0
    fraction: list[int] = []
    seen_digit = False
    seen_point = False

    rest = text.strip()
    while rest and rest[0] in "+- ":
        if rest[0] == "-":
            sign = -sign
        rest = rest[1:]

    for char in rest:
        if char.isdigit() and char.isascii():
            seen_digit = True
            if not seen_point:
                int_part = int_part * 10 + int(char)
            elif len(fraction) < MAX_FRACTION_DIGITS:
                fraction.append(int(char))
        elif char in ".," and not seen_point:
            seen_point = True
        else:
            raise DecimalSyntaxError(
                f"Unexpected character {char!r} in decimal constant {text!r}"
            )

    if not seen_digit:
        raise DecimalSyntaxError(f"Missing number in decimal constant {text!r}")

    return DecimalConstant(sign=sign, int_part=int_part, frac=_round_decimals(fraction))


def dim_from_unit(constant: DecimalConstant, unit: Unit) -> ScaledDim:
    """Attach a unit to a decimal constant (TeX's unit coercion)."""
    try:
        num, denom = UNITS[unit]
    except KeyError as exc:
        raise DecimalSyntaxError(f"Illegal unit of measure ({unit!r})") from exc

    whole, remainder = divmod(constant.int_part * num, denom)
    frac = (num * constant.frac + UNITY * remainder) // denom
    whole += frac // UNITY
    frac %= UNITY

    if whole >= MAX_DIMEN // UNITY + 1:
        raise DimensionOverflow(
            f"Dimension too large: {render_decimal(constant)}{unit}"
        )

    return constant.sign * (whole * UNITY + frac)


def parse_dimen(text: str, default_unit: Unit | None = None) -> ScaledDim:
    """Parse "<decimal><unit>" (eg. "2pt", "-1.5 bp")."""
    if not (match := _DIMEN_RE.match(text)):
        raise DecimalSyntaxError(f"Invalid dimension {text!r}")

    unit = match["unit"].lower() or default_unit
    if unit is None:
        raise DecimalSyntaxError(f"Missing unit in dimension {text!r} (use pt or bp)")

    return dim_from_unit(parse_decimal(match["number"]), unit)


def render_scaled(value: ScaledDim) -> str:
    """
    Render a dimension as decimal text (TeX's print_scaled, without "pt")

    >>> render_scaled(3288960)
    '50.18555'
    """
    sign = "-" if value < 0 else ""
    value = abs(value)
    digits = []
    s = 10 * (value % UNITY) + 5
    delta = 10
    while True:
        if delta > UNITY:
            s = s + UNITY // 2 - 50000
        digits.append(str(s // UNITY))
        s = 10 * (s % UNITY)
        delta *= 10
        if s <= delta:
            break

    return f"{sign}{value // UNITY}.{''.join(digits)}"


def show_dimen(value: ScaledDim) -> str:
    """Render a dimension as \\the would (with "pt")."""
    return f"{render_scaled(value)}pt"


def render_decimal(constant: DecimalConstant) -> str:
    return render_scaled(constant.sign * (constant.int_part * UNITY + constant.frac))


def decimal_times_dim(constant: DecimalConstant, value: ScaledDim) -> ScaledDim:
    """A decimal constant scaling an internal dimension ("2.5\\dimen6")."""
    partial = abs(value) * constant.frac // UNITY
    product = constant.int_part * value + (partial if value >= 0 else -partial)
    return constant.sign * check_dimen(product, "product")


def mult(a: ScaledDim, b: ScaledDim) -> ScaledDim:
    """Multiply two dimensions, flattening the first to its printed decimal."""
    return decimal_times_dim(parse_decimal(render_scaled(a)), b)


def invert(value: ScaledDim) -> ScaledDim:
    """8192pt divided by value, then multiplied by 8."""
    if value == 0:
        raise DegenerateDimension("Cannot invert a zero dimension")
    return check_dimen(tdiv(HMXDIM, value) * 8, "inverse")


def rescale(x: ScaledDim, y: ScaledDim, z: ScaledDim) -> ScaledDim:
    """Approximate x*y/z in the five truncating stages of the macros."""
    x = tdiv(x, 100)
    t = tdiv(z, 100)
    if t == 0:
        raise DegenerateDimension(f"Cannot rescale by {z}sp (less than 100sp)")
    inverse = invert(t)
    product = mult(x, y)
    return mult(product, inverse)


def scale_op(value: ScaledDim, the_scale: ScaledDim) -> ScaledDim:
    """Scale a dimension by the_scale, where 1000pt means natural size."""
    product = tdiv(value, 1280) * tdiv(the_scale, 5120)
    return tdiv(check_dimen(product, "scaled intermediate"), 10)
