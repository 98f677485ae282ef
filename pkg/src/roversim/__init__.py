"""roversim: deterministic gesture-driven search-and-rescue rover simulator.

The pieces compose in the order a mission uses them: hand tilt to drive
command (:mod:`.gesture`), command across the lossy 2.4 GHz link
(:mod:`.link`), motor pins to pose (:mod:`.drive`), PIR/gas/camera payload
(:mod:`.sensors`), all wired per tick by :mod:`.engine` over a rubble world
from :mod:`.world`. ``roversim.cli`` and ``roversim.server`` expose the
headless and live entry points.
"""

from .drive import (
    DEFAULT_DRIVE,
    DriveParams,
    MotorPins,
    Pose,
    command_to_pins,
    integrate_pose,
    pins_to_wheel_speeds,
    wrap_heading,
)
from .engine import (
    AUTO_STOP_TICKS,
    Engine,
    EventKind,
    MetricsReport,
    SimState,
    TelemetryEvent,
    event_to_json,
    run,
)
from .gesture import (
    AccelSample,
    AdcReading,
    CommandDecodeError,
    DriveCommand,
    TraceError,
    classify,
    command_code,
    decode_command,
    load_trace,
    sample_to_counts,
    tilt_for_counts,
)
from .link import (
    ChannelState,
    DeliveryResult,
    Frame,
    FrameType,
    FramingError,
    IntegrityError,
    LinkStats,
    crc16,
    decode_frame,
    encode_frame,
    loss_probability,
    transmit,
)
from .sensors import (
    DEFAULT_PIR,
    BodyKind,
    BodyTrack,
    CameraSnapshot,
    CellState,
    GasReading,
    GasSource,
    GasSpecies,
    PirConfig,
    PirResult,
    WarmBody,
    camera_capture,
    gas_sense,
    initial_pir_frame,
    pir_sense,
    sweep_angle,
)
from .world import (
    CELL_SIZE_M,
    Scenario,
    ScenarioError,
    cell_of,
    in_bounds,
    load_packaged_scenario,
    load_scenario,
    load_scenario_file,
    move_with_collision,
    packaged_scenario_names,
)

__version__ = "0.1.0"
