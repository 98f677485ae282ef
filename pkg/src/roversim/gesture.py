"""Hand-tilt sensing chain for the control unit.

Models the operator-side path from a wrist-worn accelerometer to a drive
command: tilt acceleration on two axes is quantized by a 10-bit ADC, and the
deflection from the neutral count is classified into one of five drive
commands. A dead zone rejects hand tremor around neutral, and separate
engage/release thresholds (hysteresis) keep the command from chattering when
the hand hovers near a boundary.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass

# ADXL335-style transfer function: ratiometric output at a 3.3 V rail,
# 1.65 V at zero g, 330 mV per g, clamped to the rail.
ACCEL_FULL_SCALE_G = 3.0
ZERO_G_VOLTS = 1.65
VOLTS_PER_G = 0.330
RAIL_VOLTS = 3.3

# 10-bit ADC referenced to the controller's 5.0 V supply.
ADC_MAX_COUNTS = 1023
ADC_REF_VOLTS = 5.0

# Count deflection thresholds for the classifier. Neutral is the count value
# of a level hand; engage is deliberately above release so a command, once
# made, survives small relaxation of the tilt.
NEUTRAL_COUNTS = 338
ENGAGE_COUNTS = 30
RELEASE_COUNTS = 20


class DriveCommand(enum.IntEnum):
    """Five-state movement command; the enum value is the wire code."""

    STOP = 0x00
    FORWARD = 0x01
    BACKWARD = 0x02
    LEFT = 0x03
    RIGHT = 0x04


class CommandDecodeError(ValueError):
    """A byte outside the drive-command code table."""


class TraceError(ValueError):
    """A gesture trace file that cannot be parsed or violates stream rules."""


@dataclass(frozen=True)
class AccelSample:
    """One two-axis tilt measurement, in g, at a simulation tick."""

    x_g: float
    y_g: float
    tick: int = 0

    def __post_init__(self) -> None:
        if self.tick < 0:
            raise ValueError(f"tick must be non-negative, got {self.tick}")


@dataclass(frozen=True)
class AdcReading:
    """Quantized tilt: 10-bit counts per axis."""

    x_counts: int
    y_counts: int
    tick: int = 0

    def __post_init__(self) -> None:
        for name, counts in (("x_counts", self.x_counts), ("y_counts", self.y_counts)):
            if not 0 <= counts <= ADC_MAX_COUNTS:
                raise ValueError(f"{name} out of ADC range: {counts}")


def _axis_to_counts(a_g: float) -> int:
    a_g = max(-ACCEL_FULL_SCALE_G, min(ACCEL_FULL_SCALE_G, a_g))
    volts = ZERO_G_VOLTS + VOLTS_PER_G * a_g
    volts = max(0.0, min(RAIL_VOLTS, volts))
    counts = round(ADC_MAX_COUNTS * volts / ADC_REF_VOLTS)
    return max(0, min(ADC_MAX_COUNTS, counts))


def sample_to_counts(sample: AccelSample) -> AdcReading:
    """Quantize a tilt sample into 10-bit ADC counts (total, never raises)."""
    return AdcReading(
        x_counts=_axis_to_counts(sample.x_g),
        y_counts=_axis_to_counts(sample.y_g),
        tick=sample.tick,
    )


def _held_deflection(prev: DriveCommand, dx: int, dy: int) -> int:
    """Signed deflection along the axis and sign that produced ``prev``."""
    if prev is DriveCommand.FORWARD:
        return dy
    if prev is DriveCommand.BACKWARD:
        return -dy
    if prev is DriveCommand.RIGHT:
        return dx
    if prev is DriveCommand.LEFT:
        return -dx
    return 0


def classify(reading: AdcReading, prev: DriveCommand) -> DriveCommand:
    """Map an ADC reading to a drive command, given the previous command.

    Deflections below the release threshold on both axes always yield STOP.
    An active command is held while its own axis still exceeds the release
    threshold; a new command engages only past the (higher) engage threshold,
    with the dominant axis winning and an exact diagonal tie keeping ``prev``.
    """
    dx = reading.x_counts - NEUTRAL_COUNTS
    dy = reading.y_counts - NEUTRAL_COUNTS
    mag = max(abs(dx), abs(dy))

    if mag < RELEASE_COUNTS:
        return DriveCommand.STOP
    if prev is not DriveCommand.STOP and _held_deflection(prev, dx, dy) > RELEASE_COUNTS:
        return prev
    if mag >= ENGAGE_COUNTS:
        if abs(dy) > abs(dx):
            return DriveCommand.FORWARD if dy > 0 else DriveCommand.BACKWARD
        if abs(dx) > abs(dy):
            return DriveCommand.RIGHT if dx > 0 else DriveCommand.LEFT
        return prev
    return prev


def command_code(command: DriveCommand) -> int:
    """One-byte wire code for a drive command."""
    return int(command)


def decode_command(code: int) -> DriveCommand:
    """Inverse of :func:`command_code`.

    Raises:
        CommandDecodeError: for any byte outside the five-entry code table.
    """
    try:
        return DriveCommand(code)
    except ValueError:
        raise CommandDecodeError(f"unknown drive command code 0x{code:02x}") from None


def tilt_for_counts(counts: int) -> float:
    """Tilt (g) that quantizes to roughly ``counts``; handy for trace authoring."""
    volts = counts * ADC_REF_VOLTS / ADC_MAX_COUNTS
    return (volts - ZERO_G_VOLTS) / VOLTS_PER_G


def load_trace(path: str) -> dict[int, AccelSample]:
    """Read a gesture trace CSV (header ``tick,x_g,y_g``) keyed by tick.

    Ticks must be non-negative and strictly increasing (one sample per tick).

    Raises:
        TraceError: empty file, bad header, or a malformed row; the message
            names the offending line number.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise TraceError(f"{path}: empty trace file") from None
        if [h.strip() for h in header] != ["tick", "x_g", "y_g"]:
            raise TraceError(f"{path}: line 1: expected header 'tick,x_g,y_g'")

        samples: dict[int, AccelSample] = {}
        last_tick = -1
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 3:
                raise TraceError(f"{path}: line {lineno}: expected 3 fields, got {len(row)}")
            try:
                tick = int(row[0])
                x_g = float(row[1])
                y_g = float(row[2])
            except ValueError as exc:
                raise TraceError(f"{path}: line {lineno}: {exc}") from None
            if not (math.isfinite(x_g) and math.isfinite(y_g)):
                raise TraceError(f"{path}: line {lineno}: non-finite tilt value")
            if tick < 0:
                raise TraceError(f"{path}: line {lineno}: negative tick {tick}")
            if tick <= last_tick:
                raise TraceError(
                    f"{path}: line {lineno}: tick {tick} not increasing (previous {last_tick})"
                )
            samples[tick] = AccelSample(x_g=x_g, y_g=y_g, tick=tick)
            last_tick = tick
    return samples
