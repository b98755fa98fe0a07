"""Fluid-driven weight/CoG haptic engine: fluid kinematics, torque-balance
weight rendering, damped-sine vibration synthesis, the host<->device wire
protocol, and the hardware-in-the-loop stability benchmark."""

from ._core import (  # noqa: F401
    Ack,
    ActuatorGeometry,
    CapacityError,
    EnvelopeError,
    ErrReport,
    InfeasibleTargetError,
    Liquid,
    Message,
    Pickup,
    PickupReport,
    ProtocolEncodeError,
    ProtocolParseError,
    Receptacle,
    ReceptacleFill,
    Release,
    RunReport,
    SetTarget,
    StabilityRep,
    StabilityResult,
    StabilityRow,
    StateReport,
    TransferCommand,
    TransferDirection,
    TransferPlan,
    Vibrate,
    VibrationBurst,
    WeightTarget,
    amplitude_from_impact,
    check_envelope,
    decode,
    detect_triggers,
    encode,
    fill_duration_s,
    mass_for_volume,
    plan_transfer,
    plunger_travel_mm,
    quantize_to_step,
    read_scale,
    render_burst,
    replay_scenario,
    run_stability,
    split_for_com,
    volume_for_mass,
    waveform_sample,
)

__version__ = "0.1.0"
