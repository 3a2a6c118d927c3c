"""Integrator contract: accuracy, dense output, events, guards."""

import numpy as np
import pytest

from fowler4.integrate import Event, StepUnderflowError, Trajectory, integrate
from fowler4.params import DomainError


def _linear_rhs(t, y):
    # v'''' = -v as a first-order system
    return np.array([y[1], y[2], y[3], -y[0]])


def _linear_solution(t, y0):
    """Eigen-decomposition oracle for y' = A y with the quartic lambda^4 = -1."""
    A = np.array([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0]],
                 dtype=complex)
    w, V = np.linalg.eig(A)
    c = np.linalg.solve(V, y0.astype(complex))
    return (V @ (np.exp(w * t) * c)).real


def test_linear_problem_matches_eigen_oracle():
    y0 = np.array([1.0, 0.0, 0.0, 0.0])
    traj = integrate(_linear_rhs, 0.0, y0, 10.0, rel_tol=1e-9, abs_tol=1e-12)
    exact = _linear_solution(10.0, y0)
    scale = max(1.0, float(np.max(np.abs(exact))))   # solution grows ~ e^{t/sqrt2}
    assert float(np.max(np.abs(traj.y[-1] - exact))) / scale < 1e-7


def test_equilibrium_stays_put():
    rhs = lambda t, y: np.zeros_like(y)
    traj = integrate(rhs, 0.0, np.array([2.0, 0.0]), 100.0, rel_tol=1e-9,
                     abs_tol=1e-11)
    assert float(np.max(np.abs(traj.y - traj.y[0]))) <= 1e-11


def test_time_reversal_roundtrip():
    y0 = np.array([1.0, 0.3, -0.2, 0.1])
    tol = 1e-10
    fwd = integrate(_linear_rhs, 0.0, y0, 5.0, rel_tol=tol, abs_tol=tol * 1e-2)
    back = integrate(_linear_rhs, 5.0, fwd.y[-1], 0.0, rel_tol=tol, abs_tol=tol * 1e-2)
    assert back.t[0] == 5.0 and back.t[-1] == 0.0
    assert float(np.max(np.abs(back.y[-1] - y0))) < 10 * tol * 10


def test_dense_output_reproduces_nodes():
    traj = integrate(_linear_rhs, 0.0, np.array([1.0, 0, 0, 0]), 7.0,
                     rel_tol=1e-10, abs_tol=1e-12)
    for i in range(0, len(traj.t), max(1, len(traj.t) // 10)):
        err = np.max(np.abs(traj(float(traj.t[i])) - traj.y[i]))
        assert err < 1e-12


def test_dense_output_midstep_consistency():
    tol = 1e-9
    traj = integrate(_linear_rhs, 0.0, np.array([1.0, 0, 0, 0]), 3.0,
                     rel_tol=tol, abs_tol=tol * 1e-2)
    # compare mid-step dense values against a much tighter re-integration
    ref = integrate(_linear_rhs, 0.0, np.array([1.0, 0, 0, 0]), 3.0,
                    rel_tol=1e-13, abs_tol=1e-15)
    for seg in traj.dense[::3]:
        tm = seg[0] + 0.5 * seg[1]
        err = float(np.max(np.abs(traj(tm) - ref(tm))))
        assert err < 10 * tol


def test_blowup_guard_flags_and_truncates():
    rhs = lambda t, y: np.array([y[1], y[2], y[3], np.abs(y[0]) ** 3 * np.sign(y[0])])
    traj = integrate(rhs, 0.0, np.array([2.0, 1.0, 1.0, 1.0]), 50.0,
                     rel_tol=1e-9, abs_tol=1e-11, guard=1e6)
    assert traj.blown_up and traj.status == "blowup"
    assert traj.t[-1] < 50.0
    assert float(np.max(np.abs(traj.y[-1]))) > 1e6


def test_step_underflow_carries_partial_trajectory():
    # finite-time singularity: y' = y^2 from y(0) = 1 blows up at t = 1
    rhs = lambda t, y: y * y
    with pytest.raises(StepUnderflowError) as exc:
        integrate(rhs, 0.0, np.array([1.0]), 2.0, rel_tol=1e-10, abs_tol=1e-12,
                  guard=1e300)
    part = exc.value.trajectory
    assert isinstance(part, Trajectory)
    assert 0.9 < part.t[-1] <= 1.0


def test_event_location_on_dense_output():
    # v' of cos(t) crosses zero downward at pi/2 for the harmonic oscillator
    rhs = lambda t, y: np.array([y[1], -y[0]])
    ev = Event(g=lambda t, y: y[0], direction=-1, terminal=True)
    traj = integrate(rhs, 0.0, np.array([1.0, 0.0]), 10.0, rel_tol=1e-11,
                     abs_tol=1e-13, events=[ev])
    assert traj.status == "event"
    te, ye = traj.events[0][0]
    assert te == pytest.approx(np.pi / 2, abs=1e-9)
    assert abs(ye[0]) < 1e-9


def test_rejects_bad_inputs():
    with pytest.raises(DomainError):
        integrate(_linear_rhs, 0.0, np.array([1.0, 0, 0, 0]), 0.0)
    with pytest.raises(DomainError):
        integrate(_linear_rhs, 0.0, np.array([np.nan, 0, 0, 0]), 1.0)
    with pytest.raises(DomainError):
        integrate(_linear_rhs, 0.0, np.array([1.0, 0, 0, 0]), 1.0, rel_tol=-1.0)


def test_trajectory_span_guard():
    traj = integrate(_linear_rhs, 0.0, np.array([1.0, 0, 0, 0]), 1.0)
    with pytest.raises(DomainError):
        traj(2.0)


def test_longdouble_dtype_passthrough():
    y0 = np.array([1.0, 0, 0, 0], dtype=np.longdouble)
    traj = integrate(_linear_rhs, 0.0, y0, 2.0, rel_tol=1e-13, abs_tol=1e-16)
    assert traj.y.dtype == np.longdouble
    err = np.abs(np.asarray(traj.y[-1], float) -
                 _linear_solution(2.0, np.array([1.0, 0, 0, 0])))
    assert float(np.max(err)) < 1e-11


def test_stats_are_recorded():
    traj = integrate(_linear_rhs, 0.0, np.array([1.0, 0, 0, 0]), 5.0)
    assert traj.stats["steps"] > 0 and traj.stats["rhs_evals"] > traj.stats["steps"]
