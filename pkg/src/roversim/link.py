"""Base-to-robot link layer: framing, CRC, auto-acknowledge, loss model.

Behavioral model of an nRF24L01-class 2.4 GHz transceiver pair. Frames carry
a 5-byte pipe address, a type byte, and up to 32 bytes of payload, protected
by CRC-16/CCITT-FALSE. Each transmit call resolves the device's auto-ack
cycle in place: up to 15 retransmissions, with both the data and the ack leg
crossing a distance-dependent lossy channel. Control is reliable out to
250 m, degrades quadratically, and is impossible beyond 1000 m.

All multi-byte integers on the wire are big-endian; see docs/wire-frame.md.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import IntEnum

ADDR_LEN = 5
MAX_PAYLOAD = 32
MAX_ATTEMPTS = 16  # 1 first try + 15 retries, mirroring the device's ARC limit
HEADER_LEN = ADDR_LEN + 2  # addr + ftype + len
FRAME_OVERHEAD = HEADER_LEN + 2  # + crc16

RELIABLE_RANGE_M = 250.0
MAX_RANGE_M = 1000.0
CARRIER_GHZ = 2.4

# Power-on default pipe address of the modeled transceiver family.
DEFAULT_ADDR = b"\xe7\xe7\xe7\xe7\xe7"


class FrameType(IntEnum):
    DRIVE = 0x01
    PIR_DETECTION = 0x02
    GAS = 0x03
    STATUS = 0x04
    ACK = 0x05


class FramingError(ValueError):
    """Buffer too short, or its length disagrees with the length field."""


class IntegrityError(ValueError):
    """CRC mismatch; the frame is discarded and counts as a loss."""


def crc16(data: bytes) -> int:
    """CRC-16/CCITT-FALSE: poly 0x1021, init 0xFFFF, no reflection, no xor-out."""
    crc = 0xFFFF
    for byte in data:
        crc ^= byte << 8
        for _ in range(8):
            if crc & 0x8000:
                crc = (crc << 1) ^ 0x1021
            else:
                crc <<= 1
            crc &= 0xFFFF
    return crc


@dataclass(frozen=True)
class Frame:
    """One link-layer packet. ``ftype`` is normally a :class:`FrameType` code."""

    ftype: int
    payload: bytes = b""
    addr: bytes = DEFAULT_ADDR

    def __post_init__(self) -> None:
        if len(self.addr) != ADDR_LEN:
            raise ValueError(f"address must be {ADDR_LEN} bytes, got {len(self.addr)}")
        if not 0 <= self.ftype <= 0xFF:
            raise ValueError(f"frame type must fit in one byte, got {self.ftype}")
        if len(self.payload) > MAX_PAYLOAD:
            raise ValueError(f"payload too long: {len(self.payload)} > {MAX_PAYLOAD}")


def encode_frame(frame: Frame) -> bytes:
    """Serialize: addr(5) | ftype(1) | len(1) | payload | crc16(2, big-endian)."""
    body = frame.addr + bytes([frame.ftype, len(frame.payload)]) + frame.payload
    return body + crc16(body).to_bytes(2, "big")


def decode_frame(buf: bytes) -> Frame:
    """Parse and verify an encoded frame.

    Raises:
        FramingError: truncated buffer or length-field mismatch.
        IntegrityError: CRC failure.
    """
    if len(buf) < FRAME_OVERHEAD:
        raise FramingError(f"buffer of {len(buf)} bytes is shorter than a minimal frame")
    length = buf[ADDR_LEN + 1]
    if length > MAX_PAYLOAD:
        raise FramingError(f"length field {length} exceeds the {MAX_PAYLOAD}-byte maximum")
    if len(buf) != FRAME_OVERHEAD + length:
        raise FramingError(f"buffer is {len(buf)} bytes but length field implies {FRAME_OVERHEAD + length}")
    body, crc_bytes = buf[:-2], buf[-2:]
    if crc16(body) != int.from_bytes(crc_bytes, "big"):
        raise IntegrityError("CRC mismatch")
    return Frame(addr=buf[:ADDR_LEN], ftype=buf[ADDR_LEN], payload=buf[HEADER_LEN:-2])


def loss_probability(distance_m: float) -> float:
    """Per-leg frame loss probability at a given base-robot separation.

    Zero out to 250 m, then a quadratic ramp that reaches certainty at the
    1000 m maximum control distance; 1 beyond that.
    """
    if distance_m < 0:
        raise ValueError(f"distance must be non-negative, got {distance_m}")
    if distance_m <= RELIABLE_RANGE_M:
        return 0.0
    if distance_m > MAX_RANGE_M:
        return 1.0
    ramp = (distance_m - RELIABLE_RANGE_M) / (MAX_RANGE_M - RELIABLE_RANGE_M)
    return ramp * ramp


@dataclass
class LinkStats:
    """Cumulative counters for one direction of the link."""

    frames_sent: int = 0
    frames_delivered: int = 0
    retransmissions: int = 0
    frames_dropped: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "frames_sent": self.frames_sent,
            "frames_delivered": self.frames_delivered,
            "retransmissions": self.retransmissions,
            "frames_dropped": self.frames_dropped,
        }

    @property
    def delivery_ratio(self) -> float:
        return self.frames_delivered / self.frames_sent if self.frames_sent else 1.0


@dataclass
class ChannelState:
    """Lossy channel between the two units.

    The RNG is shared with whatever else the owning simulation draws from, so
    a fixed seed plus a fixed call sequence reproduces every loss decision.
    ``carrier_ghz`` is descriptive only; it does not enter the loss model.
    """

    distance_m: float = 0.0
    rng: random.Random = field(default_factory=random.Random)
    carrier_ghz: float = CARRIER_GHZ

    @classmethod
    def seeded(cls, seed: int, distance_m: float = 0.0) -> "ChannelState":
        return cls(distance_m=distance_m, rng=random.Random(seed))


@dataclass(frozen=True)
class DeliveryResult:
    delivered: bool
    attempts: int


def transmit(frame: Frame, channel: ChannelState, stats: LinkStats) -> DeliveryResult:
    """Run one auto-ack exchange for ``frame`` across ``channel``.

    Each attempt draws twice from the channel RNG (data leg, then ack leg) and
    succeeds only if both legs survive; draws are consumed unconditionally so
    replay stays aligned. Up to 16 attempts, after which the frame is dropped.
    """
    del frame  # content does not influence loss; kept for call-site clarity
    p = loss_probability(channel.distance_m)
    stats.frames_sent += 1
    for attempt in range(1, MAX_ATTEMPTS + 1):
        data_ok = channel.rng.random() >= p
        ack_ok = channel.rng.random() >= p
        if data_ok and ack_ok:
            stats.frames_delivered += 1
            stats.retransmissions += attempt - 1
            return DeliveryResult(delivered=True, attempts=attempt)
    stats.frames_dropped += 1
    stats.retransmissions += MAX_ATTEMPTS - 1
    return DeliveryResult(delivered=False, attempts=MAX_ATTEMPTS)
