"""End-to-end acceptance checks.

Each test prints one ``PASS``/``FAIL`` line (visible under ``pytest -s`` or
on failure) with the measured numbers, then asserts.  Budgets on wall time
are asserted where the check is meant to stay cheap.

Run with::

    pytest tests/test_acceptance.py -v -s
"""

import math
import time
from dataclasses import replace

import numpy as np

from flapsim.aero import allocate, cycle_avg_damping, cycle_avg_lift, mix, mixing_matrix
from flapsim.config import bundled_config_path, default_vehicle, load_config
from flapsim.dynamics import InertialConfig, VehicleState, step
from flapsim.estimation import AngularRateFilter, Estimator, FilterConfig, MocapSample
from flapsim.scenarios import lift_report, run_scenario
from flapsim.spatial import Quaternion, rotmat_to_quat
from flapsim.aero import Wrench

BUNDLED = (
    "hover.cfg",
    "ballistic.cfg",
    "yaw_damp.cfg",
    "position_hold.cfg",
    "position_sat.cfg",
    "two_wing.cfg",
)


def report(number: int, ok: bool, detail: str) -> None:
    verdict = "PASS" if ok else "FAIL"
    print(f"{verdict} criterion {number}: {detail}")
    assert ok, f"criterion {number}: {detail}"


def test_criterion_1_lift_calibration():
    t0 = time.perf_counter()
    figures = lift_report()
    lift_err = abs(figures["total_lift_n"] - 1.4e-3) / 1.4e-3
    ltw = figures["lift_to_weight"]
    elapsed = time.perf_counter() - t0
    ok = lift_err < 1e-3 and abs(ltw - 1.50) <= 0.01 and elapsed < 1.0
    report(
        1,
        ok,
        f"total lift {figures['total_lift_n']:.6e} N (rel err {lift_err:.2e}), "
        f"lift/weight {ltw:.4f}, {elapsed:.2f} s",
    )


def test_criterion_2_sqrt2_damping():
    t0 = time.perf_counter()
    wing4 = default_vehicle().wing
    wing2 = replace(wing4, flap_frequency=wing4.flap_frequency * math.sqrt(2.0))
    lift_match = abs(2 * cycle_avg_lift(wing2) - 4 * cycle_avg_lift(wing4))
    analytic = (4 * cycle_avg_damping(wing4, 1.0)) / (2 * cycle_avg_damping(wing2, 1.0))
    analytic_err = abs(analytic - math.sqrt(2.0))

    record = run_scenario(load_config(bundled_config_path("yaw_damp.cfg")))
    ratio = record.extra_metrics["yaw_decay_tau_ratio"]
    sim_err = abs(ratio - 1.0 / math.sqrt(2.0)) * math.sqrt(2.0)
    elapsed = time.perf_counter() - t0
    ok = (
        lift_match < 1e-12
        and analytic_err < 1e-6
        and record.status == 0
        and sim_err < 0.02
        and elapsed < 10.0
    )
    report(
        2,
        ok,
        f"analytic damping ratio {analytic:.8f} (err {analytic_err:.2e}), "
        f"simulated tau ratio {ratio:.6f} (rel err {sim_err:.2e}), {elapsed:.2f} s",
    )


def test_criterion_3_hover_reproduction():
    t0 = time.perf_counter()
    record = run_scenario(load_config(bundled_config_path("hover.cfg")))
    rise = record.metrics["altitude_rise_time_s"]
    roll = math.degrees(record.metrics["max_abs_roll_rad"])
    pitch = math.degrees(record.metrics["max_abs_pitch_rad"])
    elapsed = time.perf_counter() - t0
    ok = (
        record.status == 0
        and not math.isnan(rise)
        and rise <= 1.0
        and roll <= 12.0
        and pitch <= 12.0
        and elapsed < 30.0
    )
    report(
        3,
        ok,
        f"rise {rise:.3f} s, max |roll| {roll:.2f} deg, "
        f"max |pitch| {pitch:.2f} deg over 5 s, {elapsed:.2f} s",
    )


def test_criterion_4_position_hold():
    t0 = time.perf_counter()
    hold = run_scenario(load_config(bundled_config_path("position_hold.cfg")))
    rms = hold.metrics["rms_position_error_final2s_m"]

    saturating = run_scenario(load_config(bundled_config_path("position_sat.cfg")))
    sat_ticks = saturating.metrics["saturated_ticks"]
    elapsed = time.perf_counter() - t0
    ok = (
        hold.status == 0
        and rms < 5e-3
        and saturating.status == 0
        and sat_ticks > 0
        and elapsed < 30.0
    )
    report(
        4,
        ok,
        f"steady RMS {rms * 1e3:.3f} mm, saturating run flags {int(sat_ticks)} "
        f"ticks and completes, {elapsed:.2f} s",
    )


def test_criterion_5_integrator_correctness():
    t0 = time.perf_counter()
    vehicle = default_vehicle()
    config = vehicle.inertial_config()

    ballistic = run_scenario(load_config(bundled_config_path("ballistic.cfg")))
    z_err = abs(ballistic.column("pos_z_m")[-1] - (-0.04905))

    spin_cfg = InertialConfig(
        mass=vehicle.mass,
        inertia=np.diag(vehicle.inertia_diag),
        gravity=vehicle.gravity,
        yaw_damping=0.0,
    )
    tau3 = 2.0e-9
    state = VehicleState.at_rest()
    for _ in range(1000):
        state = step(state, Wrench(0.0, np.array([0.0, 0.0, tau3])), spin_cfg, 5e-4)
    spin_expect = tau3 * state.t / spin_cfg.inertia[2, 2]
    spin_err = abs(state.omega[2] - spin_expect) / spin_expect

    tumble_cfg = InertialConfig(
        mass=vehicle.mass,
        inertia=np.diag([1.5e-9, 2.4e-9, 3.1e-9]),
        gravity=vehicle.gravity,
        yaw_damping=0.0,
    )

    def tumble(dt):
        s = VehicleState.at_rest()
        s.omega = np.array([3.0, -2.0, 1.0])
        for _ in range(round(0.2 / dt)):
            s = step(s, Wrench(0.0, np.zeros(3)), tumble_cfg, dt)
        q = s.attitude
        return np.concatenate([s.omega, [q.w, q.x, q.y, q.z]])

    reference = tumble(2.5e-4)
    order = math.log2(
        np.linalg.norm(tumble(2e-3) - reference) / np.linalg.norm(tumble(1e-3) - reference)
    )
    elapsed = time.perf_counter() - t0
    ok = z_err < 1e-9 and spin_err < 1e-6 and order >= 3.9 and elapsed < 5.0
    report(
        5,
        ok,
        f"ballistic error {z_err:.2e} m, spin-up rel err {spin_err:.2e}, "
        f"RK4 order {order:.2f}, {elapsed:.2f} s",
    )


def test_criterion_6_allocation_round_trip():
    rng = np.random.default_rng(606)
    worst_identity = 0.0
    worst_round_trip = 0.0
    for _ in range(1000):
        wing = replace(
            default_vehicle().wing,
            k_thrust=rng.uniform(1e-7, 1e-5),
            k_steer=rng.uniform(1e-8, 1e-6),
            lever_roll=rng.uniform(1e-3, 2e-2),
            lever_pitch=rng.uniform(1e-3, 2e-2),
            lever_yaw=rng.uniform(1e-3, 2e-2),
        )
        gamma = mixing_matrix(wing)
        residual = np.max(np.abs(np.linalg.inv(gamma) @ gamma - np.eye(4)))
        worst_identity = max(worst_identity, residual)

        v = rng.uniform(5.0, wing.v_max - 5.0, size=4)
        cmd = allocate(wing, mix(wing, v))
        worst_round_trip = max(worst_round_trip, np.max(np.abs(cmd.amplitudes - v)))
        assert not cmd.any_saturated
    ok = worst_identity < 1e-12 and worst_round_trip < 1e-10
    report(
        6,
        ok,
        f"worst ||inv(G) G - I|| {worst_identity:.2e}, "
        f"worst allocate(mix(v)) error {worst_round_trip:.2e} over 1000 sets",
    )


def test_criterion_7_rate_estimator():
    dt = 1.0 / 500.0
    corner = 2.0 * math.pi * 30.0
    rate = 2.0

    filt = AngularRateFilter(corner, dt)
    omega = np.zeros(3)
    q_prev = None
    for k in range(500):
        q = Quaternion.from_yaw(rate * k * dt)
        if q_prev is not None and q.dot(q_prev) < 0.0:
            q = -q
        q_prev = q
        omega = filt.update(q)
    rate_err = abs(omega[2] - rate) / rate

    # identical estimators, one receiving a sign-flipped suffix
    plain = Estimator(FilterConfig(corner, corner, dt))
    flipped = Estimator(FilterConfig(corner, corner, dt))
    jump = 0.0
    for k in range(400):
        q = Quaternion.from_yaw(rate * k * dt)
        qf = -q if k >= 200 else q
        a = plain.tick(MocapSample(position=np.zeros(3), attitude=q, t=k * dt))
        b = flipped.tick(MocapSample(position=np.zeros(3), attitude=qf, t=k * dt))
        jump = max(jump, float(np.max(np.abs(a.omega - b.omega))))
    ok = rate_err < 0.02 and jump == 0.0
    report(
        7,
        ok,
        f"2 rad/s spin recovered with rel err {rate_err:.2e}, "
        f"flip-induced estimate discontinuity {jump:.1e}",
    )


def test_criterion_8_quaternion_properties():
    n = 10_000
    rng = np.random.default_rng(808)

    def random_quaternion():
        v = rng.standard_normal(4)
        norm = np.linalg.norm(v)
        if norm < 1e-3:
            return Quaternion.identity()
        return Quaternion.from_array(v / norm)

    def rodrigues(axis, angle):
        k = axis / np.linalg.norm(axis)
        kx = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0.0]])
        return np.eye(3) + math.sin(angle) * kx + (1 - math.cos(angle)) * (kx @ kx)

    def prop_norm_and_inverse():
        for _ in range(n):
            p, q = random_quaternion(), random_quaternion()
            if abs((p * q).norm() - 1.0) > 1e-12:
                return False
            e = (q * q.inverse()).as_array()
            if np.max(np.abs(e - [1.0, 0, 0, 0])) > 1e-12:
                return False
        return True

    def prop_associativity():
        for _ in range(n):
            p, q, r = random_quaternion(), random_quaternion(), random_quaternion()
            d = ((p * q) * r).as_array() - (p * (q * r)).as_array()
            if np.max(np.abs(d)) > 1e-12:
                return False
        return True

    def prop_sandwich_matches_matrix():
        for _ in range(n):
            q = random_quaternion()
            v = rng.standard_normal(3)
            if np.max(np.abs(q.rotate(v) - q.to_rotation_matrix() @ v)) > 1e-12:
                return False
        return True

    def prop_rodrigues():
        for _ in range(n):
            axis = rng.standard_normal(3)
            if np.linalg.norm(axis) < 1e-3:
                continue
            angle = rng.uniform(-math.pi, math.pi)
            got = Quaternion.from_axis_angle(axis, angle).to_rotation_matrix()
            if np.max(np.abs(got - rodrigues(axis, angle))) > 1e-11:
                return False
        return True

    def prop_matrix_round_trip():
        for _ in range(n):
            q = random_quaternion()
            back = rotmat_to_quat(q.to_rotation_matrix())
            if back.w < 0.0 or abs(abs(back.dot(q)) - 1.0) > 1e-9:
                return False
        return True

    def prop_double_cover():
        for _ in range(n):
            q = random_quaternion()
            d = q.to_rotation_matrix() - (-q).to_rotation_matrix()
            if np.max(np.abs(d)) > 1e-12:
                return False
        return True

    def prop_euler_round_trip():
        for _ in range(n):
            roll = rng.uniform(-math.pi, math.pi)
            pitch = rng.uniform(-math.pi / 2 + 1e-3, math.pi / 2 - 1e-3)
            yaw = rng.uniform(-math.pi, math.pi)
            r, p, y = Quaternion.from_euler_zyx(roll, pitch, yaw).to_euler_zyx()
            if max(abs(r - roll), abs(p - pitch), abs(y - yaw)) > 1e-9:
                return False
        return True

    def prop_rotation_isometry():
        for _ in range(n):
            q = random_quaternion()
            a, b = rng.standard_normal(3), rng.standard_normal(3)
            if abs(q.rotate(a) @ q.rotate(b) - a @ b) > 1e-10:
                return False
        return True

    properties = {
        "norm/inverse": prop_norm_and_inverse,
        "associativity": prop_associativity,
        "sandwich=matrix": prop_sandwich_matches_matrix,
        "rodrigues": prop_rodrigues,
        "matrix round trip": prop_matrix_round_trip,
        "double cover": prop_double_cover,
        "euler round trip": prop_euler_round_trip,
        "isometry": prop_rotation_isometry,
    }
    failures = [name for name, check in properties.items() if not check()]
    ok = not failures
    report(
        8,
        ok,
        f"{len(properties)} properties x {n} cases"
        + (f", failing: {', '.join(failures)}" if failures else ""),
    )


def test_criterion_9_determinism(tmp_path):
    mismatched = []
    for name in BUNDLED:
        config = load_config(bundled_config_path(name))
        a = tmp_path / f"{config.name}_a.csv"
        b = tmp_path / f"{config.name}_b.csv"
        run_scenario(config, out=a)
        run_scenario(config, out=b)
        if a.read_bytes() != b.read_bytes():
            mismatched.append(name)
    ok = not mismatched
    report(
        9,
        ok,
        "byte-identical CSVs for all bundled scenarios"
        if ok
        else f"mismatched: {', '.join(mismatched)}",
    )
