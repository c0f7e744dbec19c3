"""Cycle-averaged wing aerodynamics, wrench mixing and drive allocation.

The flapping cycle is much faster than the body dynamics, so each wing is
modelled by its stroke-averaged forces as functions of the flapping frequency
``nu`` [Hz], the per-quadrant stroke amplitude ``phi0`` [rad] and the wing
area.  Lumped coefficients absorb air density, mean chord and the spanwise
force distribution:

* lift        f_L = c_lift * nu^2 * phi0^2 * S
* damping     f_D = c_damp_rate * phi0 * nu * w * S + c_damp_accel * wdot * S
  (force opposing a body rotation at rate ``w`` about an axis in the stroke
  plane, per wing)
* steering    f_S = c_lift * S * sin(beta) * nu^2 * phi0^2, acting with moment
  arm ``steering_arm`` about the body z axis when a wing pair is driven
  asymmetrically; ``beta`` is the stroke-plane inclination.

Each wing is driven by a single voltage-like command amplitude v.  Around the
operating point the per-wing thrust is k_thrust * v and the per-wing steering
force is k_steer * v, which makes the body wrench linear in the four command
amplitudes.  Wing numbering, viewed from above with body x forward:

    1 front-right, 2 rear-right, 3 front-left, 4 rear-left

Wings 1 and 4 share one stroke-plane handedness and 2 and 3 the other, so the
diagonal pairs steer yaw in opposite senses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "WingConfig",
    "Wrench",
    "ActuatorCommand",
    "cycle_avg_lift",
    "cycle_avg_damping",
    "steering_force_torque",
    "yaw_damping_coefficient",
    "mixing_matrix",
    "mix",
    "allocate",
]


@dataclass(frozen=True)
class WingConfig:
    """Geometry, drive calibration and lumped coefficients for one wing.

    The same record also carries the lever arms of the four-wing layout used
    by the mixing matrix.  All values are SI.
    """

    area: float  # single-wing area [m^2]
    flap_amplitude: float  # per-quadrant stroke amplitude phi0 [rad]
    flap_frequency: float  # nu [Hz]
    stroke_inclination: float  # stroke-plane tilt beta [rad]
    c_lift: float  # lift coefficient [N s^2 / (rad^2 m^2)]
    c_damp_rate: float = 0.0  # rate-damping coefficient
    c_damp_accel: float = 0.0  # acceleration-damping coefficient
    k_thrust: float = 1.0  # per-wing thrust per command unit [N/V]
    k_steer: float = 0.0  # per-wing steering force per command unit [N/V]
    lever_roll: float = 5.0e-3  # d1, lateral offset of each wing pair [m]
    lever_pitch: float = 5.0e-3  # d2, longitudinal offset [m]
    lever_yaw: float = 8.0e-3  # d3, yaw moment arm of the steering force [m]
    steering_arm: float = 8.0e-3  # r_S, moment arm of f_S about body z [m]
    v_max: float = 260.0  # drive amplitude limit [V]

    def validate(self) -> list[str]:
        """Return a list of constraint violations (empty when valid)."""
        errors = []
        if not self.area > 0.0:
            errors.append("wing area must be positive")
        if not 0.0 < self.flap_amplitude <= 0.5 * math.pi:
            errors.append(
                "flap amplitude must lie in (0, pi/2] rad: each wing sweeps a "
                "single quadrant"
            )
        if not self.flap_frequency > 0.0:
            errors.append("flap frequency must be positive")
        if not 0.0 <= self.stroke_inclination < 0.5 * math.pi:
            errors.append("stroke-plane inclination must lie in [0, pi/2) rad")
        if not self.k_thrust > 0.0:
            errors.append("k_thrust must be positive")
        if self.k_steer < 0.0:
            errors.append("k_steer must be non-negative")
        for name in ("lever_roll", "lever_pitch", "lever_yaw", "steering_arm"):
            if not getattr(self, name) > 0.0:
                errors.append(f"{name} must be positive")
        if not self.v_max > 0.0:
            errors.append("v_max must be positive")
        return errors


@dataclass(frozen=True)
class Wrench:
    """Total thrust [N] along body z plus body torque [N m]."""

    thrust: float
    torque: np.ndarray  # (3,)

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.thrust, self.torque[0], self.torque[1], self.torque[2]]
        )


@dataclass(frozen=True)
class ActuatorCommand:
    """Per-wing drive amplitudes after clamping, with saturation flags."""

    amplitudes: np.ndarray  # (4,) [V], clamped to [0, v_max]
    saturated: np.ndarray = field(
        default_factory=lambda: np.zeros(4, dtype=bool)
    )

    @property
    def any_saturated(self) -> bool:
        return bool(self.saturated.any())


def cycle_avg_lift(wing: WingConfig) -> float:
    """Stroke-averaged lift of a single wing [N]."""
    return (
        wing.c_lift
        * wing.flap_frequency**2
        * wing.flap_amplitude**2
        * wing.area
    )


def cycle_avg_damping(
    wing: WingConfig, body_rate: float, body_rate_dot: float = 0.0
) -> float:
    """Stroke-averaged damping force of one wing opposing a body rotation.

    ``body_rate`` [rad/s] and ``body_rate_dot`` [rad/s^2] are the components
    of the body angular motion about the relevant axis.  The first term grows
    with the stroke speed phi0 * nu, the second is the reaction to angular
    acceleration.
    """
    rate_term = (
        wing.c_damp_rate
        * wing.flap_amplitude
        * wing.flap_frequency
        * body_rate
        * wing.area
    )
    accel_term = wing.c_damp_accel * body_rate_dot * wing.area
    return rate_term + accel_term


def steering_force_torque(wing: WingConfig) -> tuple[float, float]:
    """Stroke-averaged steering force [N] and its yaw torque [N m].

    The tilted stroke plane redirects a sin(beta) share of the lift into the
    horizontal plane; acting at ``steering_arm`` it yaws the body.
    """
    c_steer = wing.c_lift * wing.area * math.sin(wing.stroke_inclination)
    force = c_steer * wing.flap_frequency**2 * wing.flap_amplitude**2
    return force, wing.steering_arm * force


def yaw_damping_coefficient(wing: WingConfig, n_wings: int) -> float:
    """Passive yaw damping constant b [N m s/rad] of an ``n_wings`` vehicle.

    Each wing opposes a yaw rate with its cycle-averaged damping force acting
    at the steering arm, so b is the per-unit-rate damping force summed over
    the wings times the arm.
    """
    return n_wings * cycle_avg_damping(wing, 1.0) * wing.steering_arm


def mixing_matrix(wing: WingConfig) -> np.ndarray:
    """Map the four drive amplitudes to the body wrench u = [f, t1, t2, t3].

    Rows are thrust, roll torque, pitch torque and yaw torque:

        f  = k_f  * ( v1 + v2 + v3 + v4)
        t1 = k_f d1 * (-v1 - v2 + v3 + v4)
        t2 = k_f d2 * ( v1 - v2 + v3 - v4)
        t3 = k_s d3 * ( v1 - v2 - v3 + v4)

    Raising the left pair (3, 4) rolls positive about +x, raising the front
    pair (1, 3) pitches positive about +y, and driving one diagonal pair
    harder than the other yaws through the steering forces.

    Raises ValueError when any coefficient is zero (a singular matrix cannot
    be inverted by the allocator).
    """
    kf = wing.k_thrust
    ks = wing.k_steer
    d1, d2, d3 = wing.lever_roll, wing.lever_pitch, wing.lever_yaw
    if kf == 0.0 or ks == 0.0 or d1 == 0.0 or d2 == 0.0 or d3 == 0.0:
        raise ValueError("mixing matrix is singular: zero coefficient")
    return np.array(
        [
            [kf, kf, kf, kf],
            [-kf * d1, -kf * d1, kf * d1, kf * d1],
            [kf * d2, -kf * d2, kf * d2, -kf * d2],
            [ks * d3, -ks * d3, -ks * d3, ks * d3],
        ]
    )


def mix(wing: WingConfig, amplitudes) -> Wrench:
    """Body wrench produced by the four drive amplitudes.

    The forward map is evaluated directly so it also works where the mixing
    matrix would be singular (for example k_steer = 0 in open-loop drills).
    """
    v1, v2, v3, v4 = (float(v) for v in amplitudes)
    kf = wing.k_thrust
    return Wrench(
        thrust=kf * (v1 + v2 + v3 + v4),
        torque=np.array(
            [
                kf * wing.lever_roll * (-v1 - v2 + v3 + v4),
                kf * wing.lever_pitch * (v1 - v2 + v3 - v4),
                wing.k_steer * wing.lever_yaw * (v1 - v2 - v3 + v4),
            ]
        ),
    )


def allocate(wing: WingConfig, wrench: Wrench) -> ActuatorCommand:
    """Invert the mixing matrix and clamp the amplitudes to [0, v_max].

    A wing is flagged as saturated when its unclamped solution fell outside
    the drive range; the returned amplitudes always respect the limits.
    """
    gamma = mixing_matrix(wing)
    raw = np.linalg.inv(gamma) @ wrench.as_array()
    clamped = np.clip(raw, 0.0, wing.v_max)
    saturated = (raw < 0.0) | (raw > wing.v_max)
    return ActuatorCommand(amplitudes=clamped, saturated=saturated)
