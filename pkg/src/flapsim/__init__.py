"""Flight-dynamics simulator and flight-control library for a four-winged
flapping-wing micro aerial vehicle."""

from .aero import (
    ActuatorCommand,
    WingConfig,
    Wrench,
    allocate,
    cycle_avg_damping,
    cycle_avg_lift,
    mix,
    mixing_matrix,
    steering_force_torque,
    yaw_damping_coefficient,
)
from .config import (
    ConfigError,
    SimConfig,
    bundled_config_path,
    config_from_dict,
    default_vehicle,
    load_config,
    validate_config,
)
from .control import (
    AltitudeController,
    AltitudeGains,
    AttitudeGains,
    ControlError,
    DegenerateThrust,
    DegenerateYaw,
    FlightController,
    PositionController,
    PositionGains,
    Setpoint,
    attitude_torque,
    desired_attitude,
    thrust_magnitude,
)
from .dynamics import (
    InertialConfig,
    VehicleState,
    derivatives,
    passive_yaw_damping,
    step,
    vibration_torque,
)
from .estimation import (
    AngularRateFilter,
    Estimator,
    FilterConfig,
    MocapSample,
    MocapSensor,
    VelocityFilter,
)
from .scenarios import (
    RunRecord,
    compare_variants,
    lift_report,
    metrics_from_rows,
    read_csv,
    run_scenario,
)
from .spatial import Quaternion, quat_error, rotmat_to_quat, sign

__version__ = "0.1.0"
