"""Periodic orbits of the critical-case cylinder equation by shooting.

The reduced critical equation is reversible and its bounded orbits form
a one-parameter family indexed by the orbit minimum a in (0, a0].  For
given a the initial curvature b(a) is located by bisection on the
crash/escape dichotomy: below b(a) the trajectory dives to -infinity,
above it escapes to +infinity, and the boundary carries the bounded
orbit.  At the first critical point t1 of v' the reversibility
condition v'''(t1) = 0 then certifies the root, and the fundamental
period is T = 2 t1 by even reflection.

Where the float64 ULP floor on b leaves a one-period closure defect
above tolerance (strong saddle amplification, e.g. small a at n = 5)
the search escalates transparently to extended precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np

from .coefficients import printed_critical_values
from .integrate import Event, Trajectory, integrate
from .params import DomainError, special_exponents
from .profiles import bubble_constant

_LONGDOUBLE_OK = np.finfo(np.longdouble).eps < 1e-18


@dataclass(frozen=True)
class CriticalConstants:
    """Constants of the critical-case Cauchy problem."""

    n: int
    K0: float
    K2: float
    c: float
    a0: float
    c_mode: str = "measured"

    @property
    def power(self) -> float:
        return float(special_exponents(self.n).upper - 1)

    def linearized_frequency(self) -> float:
        """Imaginary part of the oscillatory linearization pair at a0."""
        pm1 = self.power - 1.0
        disc = math.sqrt(self.K2**2 + 4.0 * pm1 * self.K0)
        return math.sqrt((self.K2 + disc) / 2.0)

    def linearized_period(self) -> float:
        return 2.0 * math.pi / self.linearized_frequency()


def critical_constants(n: int, c_mode: str = "measured") -> CriticalConstants:
    pc = printed_critical_values(n)
    K0, K2 = float(pc["K0"]), float(pc["K2"])
    if c_mode == "measured":
        c = bubble_constant(n)
    elif c_mode == "unit":
        c = 1.0
    else:
        raise DomainError(f"unknown c mode {c_mode!r}")
    power = float(special_exponents(n).upper - 1)
    a0 = (K0 / c) ** (1.0 / (power - 1.0))
    return CriticalConstants(n=n, K0=K0, K2=K2, c=c, a0=a0, c_mode=c_mode)


def make_critical_rhs(consts: CriticalConstants, dtype=np.float64) -> Callable:
    """v'''' = c |v|^{q-1} v - K2 v'' - K0 v with q the critical power."""
    scal = np.dtype(dtype).type
    K0, K2, c = scal(consts.K0), scal(consts.K2), scal(consts.c)
    q = scal(consts.power)

    def rhs(t, y):
        v = y[0]
        nl = c * (abs(v) ** q) * (1 if v >= 0 else -1)
        return np.array([y[1], y[2], y[3], nl - K2 * y[2] - K0 * y[0]], dtype=dtype)

    return rhs


@dataclass
class ShootingResult:
    a: float
    b: float
    T: float
    energy: float
    residual: float                    # |v'''(T/2)| at the accepted root
    orbit: Optional[Trajectory]
    period_defect: float
    min_v: float
    energy_drift: float
    even_symmetry_defect: float
    converged: bool
    precision: str = "float64"
    message: str = ""


def orbit_energy(consts: CriticalConstants, y) -> float:
    """Conserved Hamiltonian of the critical equation."""
    v, v1, v2, v3 = (float(y[0]), float(y[1]), float(y[2]), float(y[3]))
    q = consts.power
    return (-v3 * v1 + 0.5 * (v2**2 - consts.K2 * v1**2 - consts.K0 * v**2)
            + consts.c * abs(v) ** (q + 1) / (q + 1))


def _classify(consts: CriticalConstants, a: float, b, dtype, rel_tol, abs_tol,
              t_max: float = 80.0, guard: float = 1e4) -> int:
    """-1: dives below zero, +1: escapes upward."""
    rhs = make_critical_rhs(consts, dtype)
    y0 = np.array([a, 0.0, b, 0.0], dtype=dtype)
    down = Event(g=lambda t, y: float(y[0]), direction=-1, terminal=True)
    tr = integrate(rhs, 0.0, y0, t_max, rel_tol=rel_tol, abs_tol=abs_tol,
                   guard=guard, events=[down])
    if tr.status == "event":
        return -1
    if tr.status == "blowup":
        return 1 if float(tr.y[-1][0]) > 0 else -1
    return 1  # stayed bounded to t_max: at/beyond the boundary, treat as upper


def _first_max(consts: CriticalConstants, a: float, b, dtype, rel_tol, abs_tol,
               t_max: float = 80.0):
    rhs = make_critical_rhs(consts, dtype)
    y0 = np.array([a, 0.0, b, 0.0], dtype=dtype)
    ev = Event(g=lambda t, y: float(y[1]), direction=-1, terminal=True)
    tr = integrate(rhs, 0.0, y0, t_max, rel_tol=rel_tol, abs_tol=abs_tol,
                   guard=1e6, events=[ev])
    if tr.status != "event" or not tr.events[0]:
        return None, None
    te, ye = tr.events[0][0]
    return float(te), ye


def _bisect(consts, a, blo, bhi, dtype, rel_tol, abs_tol, iters):
    scal = np.dtype(dtype).type
    blo, bhi = scal(blo), scal(bhi)
    for _ in range(iters):
        mid = (blo + bhi) / 2
        if mid == blo or mid == bhi:
            break
        if _classify(consts, a, mid, dtype, rel_tol, abs_tol) < 0:
            blo = mid
        else:
            bhi = mid
    return blo, bhi


def find_b(n: int, a: float, tol: float = 1e-9, c_mode: str = "measured",
           rel_tol: float = 1e-12, abs_tol: float = 1e-14,
           defect_target: float = 1e-6,
           consts: Optional[CriticalConstants] = None) -> ShootingResult:
    """Locate b(a) and the fundamental period for one Fowler parameter.

    0 < a < a0 shoots; a == a0 returns the constant orbit with the
    linearized period.  Escalates to extended precision when the
    one-period closure defect of the float64 root exceeds the target.
    """
    consts = consts if consts is not None else critical_constants(n, c_mode)
    a0 = consts.a0
    if not (0 < a <= a0 * (1 + 1e-12)):
        raise DomainError(f"Fowler parameter must lie in (0, a0={a0:.12g}], got a={a}")
    if abs(a - a0) <= 1e-12 * a0:
        T = consts.linearized_period()
        y = np.array([a0, 0.0, 0.0, 0.0])
        return ShootingResult(a=a0, b=0.0, T=T, energy=orbit_energy(consts, y),
                              residual=0.0, orbit=None, period_defect=0.0,
                              min_v=a0, energy_drift=0.0, even_symmetry_defect=0.0,
                              converged=True, message="constant orbit")

    # bracket on a geometric grid, then bisect the crash/escape boundary
    b_max = 10.0 * consts.K0 * a0
    grid = np.geomspace(1e-6, b_max, 25)
    coarse = (1e-9, 1e-11)
    prev = None
    blo = bhi = None
    for b in grid:
        o = _classify(consts, a, float(b), np.float64, *coarse)
        if prev is not None and prev[1] < 0 and o > 0:
            blo, bhi = prev[0], float(b)
            break
        prev = (float(b), o)
    if blo is None:
        raise ArithmeticError(
            f"no crash/escape bracket for a={a} in (1e-6, {b_max:.3g}); "
            f"diagnostic sweep outcomes all {prev[1] if prev else 'undefined'}")
    # short coarse prefix only: over-shrinking the bracket around the
    # coarse-tolerance boundary would push the fine boundary outside it
    blo, bhi = _bisect(consts, a, blo, bhi, np.float64, coarse[0], coarse[1], 10)
    blo, bhi = _bisect(consts, a, blo, bhi, np.float64, rel_tol, abs_tol, 60)
    b = float((blo + bhi) / 2)

    result = _assemble_result(consts, a, b, np.float64, rel_tol, abs_tol, tol)
    if result.converged and result.period_defect <= defect_target:
        return result
    if _LONGDOUBLE_OK:
        ld = np.longdouble
        margin = ld(1e-9)
        lo, hi = ld(b) * (1 - margin), ld(b) * (1 + margin)
        lr, la = 1e-15, 1e-18
        if _classify(consts, a, lo, ld, lr, la) < 0 < _classify(consts, a, hi, ld, lr, la):
            lo, hi = _bisect(consts, a, lo, hi, ld, lr, la, 50)
            refined = _assemble_result(consts, a, (lo + hi) / 2, ld, lr, la, tol)
            refined.precision = "longdouble"
            if refined.period_defect <= result.period_defect:
                return refined
    return result


def _assemble_result(consts, a, b, dtype, rel_tol, abs_tol, tol) -> ShootingResult:
    t1, y1 = _first_max(consts, a, b, dtype, rel_tol, abs_tol)
    if t1 is None:
        return ShootingResult(a=a, b=float(b), T=float("nan"), energy=float("nan"),
                              residual=float("inf"), orbit=None,
                              period_defect=float("inf"), min_v=float("nan"),
                              energy_drift=float("inf"),
                              even_symmetry_defect=float("inf"), converged=False,
                              message="no critical point of v' before blow-up")
    residual = abs(float(y1[3]))
    T = 2.0 * t1
    rhs = make_critical_rhs(consts, dtype)
    y0 = np.array([a, 0.0, b, 0.0], dtype=dtype)
    orbit = integrate(rhs, 0.0, y0, T, rel_tol=rel_tol, abs_tol=abs_tol, guard=1e6)
    target = np.array([a, 0.0, float(b), 0.0])
    defect = float(np.max(np.abs(np.asarray(orbit.y[-1], float) - target)))
    ts = np.linspace(0.0, T, 1601)
    vals = orbit(ts)
    vmin = float(np.min(np.asarray(vals[:, 0], float)))
    energies = np.array([orbit_energy(consts, yv) for yv in vals])
    E0 = float(energies[0])
    drift = float(np.max(np.abs(energies - E0))) / (1.0 + abs(E0))
    taus = np.linspace(0.0, min(t1, T - t1), 101)[1:]
    sym = max(abs(float(orbit(t1 + tau)[0]) - float(orbit(t1 - tau)[0]))
              for tau in taus)
    converged = residual <= tol and math.isfinite(defect)
    msg = "" if converged else f"residual {residual:.3e} above tol {tol:.1e}"
    if vmin < a - 1e-6:
        converged = False
        msg = f"orbit minimum {vmin:.9g} undercuts a={a:.9g} (wrong branch)"
    return ShootingResult(a=a, b=float(b), T=T, energy=E0, residual=residual,
                          orbit=orbit, period_defect=defect, min_v=vmin,
                          energy_drift=drift, even_symmetry_defect=sym,
                          converged=converged,
                          precision=np.dtype(dtype).name, message=msg)


def orbit_table(n: int, a_values: Sequence[float], c_mode: str = "measured",
                tol: float = 1e-9, **kw) -> List[ShootingResult]:
    """Shooting results for a grid of Fowler parameters.

    Individual failures are recorded on the corresponding entry (as a
    non-converged result); the sweep continues.  Results keep input
    order.
    """
    consts = critical_constants(n, c_mode)
    out: List[ShootingResult] = []
    for a in a_values:
        try:
            out.append(find_b(n, float(a), tol=tol, consts=consts, **kw))
        except (DomainError, ArithmeticError, RuntimeError) as exc:
            out.append(ShootingResult(a=float(a), b=float("nan"), T=float("nan"),
                                      energy=float("nan"), residual=float("inf"),
                                      orbit=None, period_defect=float("inf"),
                                      min_v=float("nan"), energy_drift=float("inf"),
                                      even_symmetry_defect=float("inf"),
                                      converged=False, message=str(exc)))
    return out
