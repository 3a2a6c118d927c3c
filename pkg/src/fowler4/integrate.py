"""Adaptive Dormand-Prince 5(4) integration with quartic dense output.

Hand-rolled rather than delegated: the lab needs the blow-up guard with
partial-trajectory semantics, PI step control, event location on the
dense output, and dtype transparency (float64 or longdouble) in one
place.  Butcher tableau and the quartic interpolant matrix are the
standard published constants, materialized per dtype from exact ratios.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .params import DomainError

_A_FRAC = [
    [],
    ["1/5"],
    ["3/40", "9/40"],
    ["44/45", "-56/15", "32/9"],
    ["19372/6561", "-25360/2187", "64448/6561", "-212/729"],
    ["9017/3168", "-355/33", "46732/5247", "49/176", "-5103/18656"],
    ["35/384", "0", "500/1113", "125/192", "-2187/6784", "11/84"],
]
_C_FRAC = ["0", "1/5", "3/10", "4/5", "8/9", "1", "1"]
# b5 - b4 (local error weights)
_E_FRAC = ["71/57600", "0", "-71/16695", "71/1920", "-17253/339200", "22/525", "-1/40"]
# quartic dense-output matrix (Shampine interpolant)
_P_FRAC = [
    ["1", "-8048581381/2820520608", "8663915743/2820520608", "-12715105075/11282082432"],
    ["0", "0", "0", "0"],
    ["0", "131558114200/32700410799", "-68118460800/10900136933", "87487479700/32700410799"],
    ["0", "-1754552775/470086768", "14199869525/1410260304", "-10690763975/1880347072"],
    ["0", "127303824393/49829197408", "-318862633887/49829197408", "701980252875/199316789632"],
    ["0", "-282668133/205662961", "2019193451/616988883", "-1453857185/822651844"],
    ["0", "40617522/29380423", "-110615467/29380423", "69997945/29380423"],
]

_SAFETY = 0.9
_BETA = 0.04
_EXPO = 0.2 - 0.75 * _BETA
_FAC_MIN, _FAC_MAX = 0.2, 5.0

_TABLEAU_CACHE: dict = {}


def _ratio_array(entries, dtype):
    def conv(sr):
        f = Fraction(sr)
        return dtype(f.numerator) / dtype(f.denominator)
    if entries and isinstance(entries[0], list):
        return np.array([[conv(e) for e in row] for row in entries], dtype=dtype)
    return np.array([conv(e) for e in entries], dtype=dtype)


def _tableau(dtype):
    key = np.dtype(dtype).name
    if key not in _TABLEAU_CACHE:
        scal = np.dtype(dtype).type
        A = [_ratio_array(row, scal) if row else np.array([], dtype=dtype)
             for row in _A_FRAC]
        _TABLEAU_CACHE[key] = (
            A,
            _ratio_array(_C_FRAC, scal),
            _ratio_array(_E_FRAC, scal),
            _ratio_array(_P_FRAC, scal),
        )
    return _TABLEAU_CACHE[key]


class StepUnderflowError(RuntimeError):
    """Step size collapsed (stiffness or singularity); carries the partial run."""

    def __init__(self, message: str, trajectory: "Trajectory"):
        super().__init__(message)
        self.trajectory = trajectory


@dataclass
class Event:
    """Sign-change detector g(t, y) located on the dense output.

    direction: +1 upcrossings only, -1 downcrossings only, 0 both.
    terminal: stop the integration at the located event.
    """

    g: Callable
    direction: int = 0
    terminal: bool = False


@dataclass
class Trajectory:
    """Dense-output record of one integration run.

    t is strictly monotone in the direction of integration; the dense
    segments reproduce the stored nodes and interpolate inside steps
    with the method's own quartic.
    """

    t: np.ndarray
    y: np.ndarray                       # shape (len(t), dim)
    dense: list                         # per step: (t_start, h, y_start, Q)
    stats: dict
    rel_tol: float
    abs_tol: float
    blown_up: bool = False
    status: str = "reached"
    events: list = field(default_factory=list)   # per event index: [(t, y), ...]
    direction: int = 1

    @property
    def t0(self) -> float:
        return float(self.t[0])

    @property
    def t1(self) -> float:
        return float(self.t[-1])

    def __call__(self, tq):
        scalar = np.isscalar(tq)
        tqs = np.atleast_1d(np.asarray(tq, dtype=float))
        out = np.empty((tqs.size, self.y.shape[1]), dtype=self.y.dtype)
        for i, tv in enumerate(tqs):
            out[i] = self._eval_one(float(tv))
        return out[0] if scalar else out

    def _seg_starts(self):
        return np.array([float(seg[0]) for seg in self.dense])

    def _eval_one(self, tv: float):
        lo, hi = sorted((float(self.t[0]), float(self.t[-1])))
        pad = 1e-12 * (1.0 + max(abs(lo), abs(hi)))
        if not (lo - pad <= tv <= hi + pad):
            raise DomainError(f"t={tv} outside trajectory span [{lo}, {hi}]")
        if not self.dense:
            return self.y[-1]
        starts = self._seg_starts() * self.direction
        idx = int(np.searchsorted(starts, tv * self.direction, side="right") - 1)
        idx = min(max(idx, 0), len(self.dense) - 1)
        t0, h, y0, Q = self.dense[idx]
        th = (tv - float(t0)) / float(h)
        th = min(max(th, 0.0), 1.0)
        powers = np.asarray(th, dtype=y0.dtype) ** np.arange(1, 5)
        return y0 + h * (Q @ powers)

    def sample(self, num: int) -> Tuple[np.ndarray, np.ndarray]:
        ts = np.linspace(float(self.t[0]), float(self.t[-1]), num)
        return ts, self(ts)


def _rms(v, sc):
    v = np.asarray(v, dtype=float)
    return float(np.sqrt(np.mean((v / sc) ** 2)))


def _initial_step(rhs, t0, y0, tspan, rel_tol, abs_tol):
    sc = abs_tol + rel_tol * np.abs(np.asarray(y0, dtype=float))
    f0 = np.asarray(rhs(t0, y0), dtype=float)
    d0 = _rms(y0, sc)
    d1 = _rms(f0, sc)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, 0.1 * tspan)
    y1 = np.asarray(y0, dtype=float) + h0 * f0
    f1 = np.asarray(rhs(t0 + h0, y1), dtype=float)
    d2 = _rms(f1 - f0, sc) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, tspan)


def integrate(rhs, t0: float, state0, t1: float, rel_tol: float = 1e-9,
              abs_tol: float = 1e-11, guard: float = 1e8,
              events: Optional[Sequence[Event]] = None,
              max_steps: int = 10_000_000) -> Trajectory:
    """Integrate state' = rhs(t, state) from t0 to t1 adaptively.

    Backward runs (t1 < t0) are handled by time reflection.  When any
    state component exceeds ``guard`` in absolute value, the run stops
    with ``blown_up=True`` and the truncated trajectory is returned; a
    collapsing step raises StepUnderflowError carrying the partial
    trajectory.
    """
    if rel_tol <= 0 or abs_tol <= 0:
        raise DomainError("tolerances must be positive")
    if t1 == t0:
        raise DomainError("empty integration span")
    y0a = np.atleast_1d(np.asarray(state0))
    if not np.all(np.isfinite(np.asarray(y0a, dtype=float))):
        raise DomainError("non-finite initial state")
    direction = 1 if t1 > t0 else -1
    if direction < 0:
        fwd = rhs
        rhs = lambda s, y: -np.asarray(fwd(t0 - s, y))
        events = [Event(g=(lambda s, y, g0=e.g: g0(t0 - s, y)),
                        direction=-e.direction, terminal=e.terminal)
                  for e in (events or [])]
        tA, tB = 0.0, float(t0 - t1)
    else:
        tA, tB = float(t0), float(t1)

    dtype = np.dtype(y0a.dtype) if y0a.dtype in (np.dtype(np.float64), np.dtype(np.longdouble)) \
        else np.dtype(np.float64)
    scal = dtype.type
    A, C, E, P = _tableau(dtype)
    y = np.array(y0a, dtype=dtype)
    t = scal(tA)
    tB_ = scal(tB)
    span = float(tB - tA)
    events = list(events or [])
    ev_hits: List[list] = [[] for _ in events]
    theta_pows = np.arange(1, 5)

    k = np.empty((7, y.size), dtype=dtype)
    f0 = np.asarray(rhs(float(t), y), dtype=dtype)
    h = scal(_initial_step(lambda tt, yy: np.asarray(rhs(tt, yy), float),
                           float(t), np.asarray(y, float), span, rel_tol, abs_tol))
    ts = [t]
    ys = [y.copy()]
    segs: list = []
    err_old = 1e-4
    nstep = nrej = 0
    nfev = 3
    status = "reached"
    blown = False
    ev_vals = [e.g(float(t), y) for e in events]

    def finish(stat):
        tr_t = np.array([float(x) for x in ts])
        tr_y = np.array(ys)
        if direction < 0:
            tr_t = t0 - tr_t
            segs2 = [(t0 - s0, -hh, yy, -Q) for (s0, hh, yy, Q) in segs]
            hits = [[(t0 - te, ye) for (te, ye) in lst] for lst in ev_hits]
        else:
            segs2, hits = segs, ev_hits
        return Trajectory(t=tr_t, y=tr_y, dense=segs2,
                          stats={"steps": nstep, "rejected": nrej, "rhs_evals": nfev},
                          rel_tol=rel_tol, abs_tol=abs_tol, blown_up=blown,
                          status=stat, events=hits, direction=direction)

    while t < tB_:
        if nstep >= max_steps:
            status = "max_steps"
            break
        if float(h) < 1e-14 * max(abs(float(t)), abs(span), 1.0):
            raise StepUnderflowError(
                f"step size underflow at t={float(t):.6g} (h={float(h):.3e})",
                finish("underflow"))
        last = False
        if t + h >= tB_:
            h = tB_ - t
            last = True
        k[0] = f0
        failed_stage = False
        for i in range(1, 7):
            yi = y + h * (A[i] @ k[:i])
            fi = np.asarray(rhs(float(t + C[i] * h), yi), dtype=dtype)
            if not np.all(np.isfinite(np.asarray(fi, dtype=float))):
                failed_stage = True
                break
            k[i] = fi
        nfev += 6
        if failed_stage:
            nrej += 1
            h = h * scal(0.25)
            last = False
            continue
        y_new = yi  # the stage-7 input is the 5th-order solution (FSAL layout)
        sc = abs_tol + rel_tol * np.maximum(np.abs(np.asarray(y, float)),
                                            np.abs(np.asarray(y_new, float)))
        err = _rms(h * (E @ k), sc)
        nstep += 1
        if err > 1.0:
            nrej += 1
            h = h * scal(min(1.0, max(_FAC_MIN, _SAFETY * err ** -0.2)))
            continue
        Q = k.T @ P
        t_new = tB_ if last else t + h
        stop_here = None
        for ie, ev in enumerate(events):
            v_old = ev_vals[ie]
            v_new = ev.g(float(t_new), y_new)
            crossed = ((v_old < 0 <= v_new) and ev.direction >= 0) or \
                      ((v_old > 0 >= v_new) and ev.direction <= 0)
            if crossed and v_old != 0:
                th_lo, th_hi, g_lo = scal(0.0), scal(1.0), v_old

                def g_at(th):
                    yq = y + h * (Q @ (th ** theta_pows))
                    return ev.g(float(t + th * h), yq)

                for _ in range(90):
                    mid = (th_lo + th_hi) / 2
                    if mid == th_lo or mid == th_hi:
                        break
                    gm = g_at(mid)
                    if gm == 0.0:
                        th_lo = th_hi = mid
                        break
                    if (g_lo < 0) != (gm < 0):
                        th_hi = mid
                    else:
                        th_lo, g_lo = mid, gm
                th = (th_lo + th_hi) / 2
                te = t + th * h
                ye = y + h * (Q @ (th ** theta_pows))
                ev_hits[ie].append((float(te), ye.copy()))
                if ev.terminal and (stop_here is None or float(te) < stop_here[0]):
                    stop_here = (float(te), te, ye)
            ev_vals[ie] = v_new
        if stop_here is not None:
            _, te, ye = stop_here
            segs.append((float(t), h, y.copy(), Q))
            ts.append(te)
            ys.append(np.asarray(ye, dtype=dtype))
            status = "event"
            break
        segs.append((float(t), h, y.copy(), Q))
        t = t_new
        y = y_new
        f0 = k[6].copy()
        ts.append(t)
        ys.append(y.copy())
        if float(np.max(np.abs(np.asarray(y, float)))) > guard:
            status = "blowup"
            blown = True
            break
        fac = _SAFETY * err ** -_EXPO * err_old ** _BETA if err > 0 else _FAC_MAX
        err_old = max(err, 1e-10)
        h = h * scal(min(_FAC_MAX, max(_FAC_MIN, fac)))
    return finish(status)
