"""Hamiltonian energies, slice functionals and their monotonicity.

All functionals act on radial (ODE) data, where the angular blocks
vanish identically; the slice integral over the sphere then reduces to
the surface measure times the radial density, so P_cyl = omega_{n-1} H
and P_sph = omega_{n-1} P_cyl is pure bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np

from .coefficients import (BUILD_SIGMA, hat_constant, oracle_autonomous,
                           printed_nonautonomous_polys)
from .integrate import Trajectory
from .odes import make_nonautonomous_rhs
from .params import (DomainError, Params, Scalar, as_exact, is_exact,
                     special_exponents, unit_sphere_area)
from .polys import UPoly


def _split(y: np.ndarray):
    """Component-major state -> (V, V', V'', V''') arrays of length p."""
    y = np.asarray(y, dtype=float)
    return y[0::4], y[1::4], y[2::4], y[3::4]


def hamiltonian_radial(params: Params, y, sigma: int = BUILD_SIGMA,
                       coeffs: Optional[Dict[str, float]] = None) -> float:
    """Radial Hamiltonian energy of a cylinder state.

    -(<V''',V'> + K3 <V'',V'>) + (|V''|^2 - K2 |V'|^2 - K0 |V|^2)/2
    + |V|^{s+1}/(s+1).
    """
    c = coeffs if coeffs is not None else oracle_autonomous(params.n, params.s, sigma)
    v, v1, v2, v3 = _split(y)
    s = float(params.s)
    nv = float(np.linalg.norm(v))
    return float(
        -(np.dot(v3, v1) + float(c["K3"]) * np.dot(v2, v1))
        + 0.5 * (np.dot(v2, v2) - float(c["K2"]) * np.dot(v1, v1)
                 - float(c["K0"]) * np.dot(v, v))
        + nv ** (s + 1) / (s + 1))


def hamiltonian_derivative_formula(params: Params, y, sigma: int = BUILD_SIGMA,
                                   coeffs: Optional[Dict[str, float]] = None) -> float:
    """K1 |V'|^2 - K3 |V''|^2, the radial monotonicity density."""
    c = coeffs if coeffs is not None else oracle_autonomous(params.n, params.s, sigma)
    _, v1, v2, _ = _split(y)
    return float(float(c["K1"]) * np.dot(v1, v1) - float(c["K3"]) * np.dot(v2, v2))


@dataclass
class EnergySample:
    t: float
    H: float
    dH_formula: float
    dH_numeric: float
    P_cyl: float
    P_sph: float


def pohozaev_series(params: Params, traj: Trajectory, num: int = 201,
                    sigma: int = BUILD_SIGMA) -> List[EnergySample]:
    """Energy series along a trajectory with formula and numeric derivatives.

    dH_numeric uses a 4th-order centered stencil on the dense output;
    the first/last two grid points carry the one-sided neighbors' values
    of the formula route only (excluded from comparisons by convention).
    """
    if len(traj.t) < 5:
        raise DomainError("trajectory too short for an energy series")
    om = unit_sphere_area(params.n)
    coeffs = oracle_autonomous(params.n, params.s, sigma)
    ts = np.linspace(float(traj.t[0]), float(traj.t[-1]), num)
    dt = float(ts[1] - ts[0])
    Hs = np.array([hamiltonian_radial(params, traj(float(t)), sigma, coeffs)
                   for t in ts])
    out: List[EnergySample] = []
    for i, t in enumerate(ts):
        y = traj(float(t))
        dHf = hamiltonian_derivative_formula(params, y, sigma, coeffs)
        if 2 <= i < num - 2:
            dHn = (Hs[i - 2] - 8 * Hs[i - 1] + 8 * Hs[i + 1] - Hs[i + 2]) / (12 * dt)
        else:
            dHn = float("nan")
        H = float(Hs[i])
        out.append(EnergySample(t=float(t), H=H, dH_formula=dHf, dH_numeric=dHn,
                                P_cyl=om * H, P_sph=om * om * H))
    return out


# ---------------------------------------------------------------------------
# limiting levels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PohozaevLevels:
    """The limiting energy levels and their printed/derived variants."""

    n: int
    s: Scalar
    l_star_autonomous: Optional[float]
    l_star_aviles_printed: float
    l_star_aviles_derived: Dict[str, float]      # per hat-constant variant
    l_star_aviles_constant_state: Dict[str, float]

    @property
    def aviles_verdict(self) -> str:
        ref = self.l_star_aviles_printed
        for v in self.l_star_aviles_derived.values():
            if abs(v - ref) <= 1e-9 * max(1.0, abs(ref)):
                return "MATCH"
        return "MISMATCH"


def autonomous_level(n: int, s: Scalar, sigma: int = BUILD_SIGMA):
    """l*(n,s) = (s-1)/(2(s+1)) K0^{(s+1)/(s-1)}; None when K0 <= 0."""
    K0 = oracle_autonomous(n, s, sigma)["K0"]
    if not K0 > 0:
        return None
    s = float(s)
    return (s - 1) / (2 * (s + 1)) * float(K0) ** ((s + 1) / (s - 1))


def equilibrium_energy_exact(n: int, s):
    """Exact split of H at the nontrivial constant state.

    Both H(equilibrium) and -l*(n,s) are rational multiples of the
    common power K0^{(s+1)/(s-1)}; returns
    (prefactor_H, prefactor_neg_lstar, K0, exponent) as Fractions.
    """
    s = as_exact(s)
    if not is_exact(s):
        raise DomainError("exact level identity needs rational s")
    K0 = oracle_autonomous(n, s)["K0"]
    if not K0 > 0:
        raise DomainError("nontrivial equilibrium requires K0 > 0")
    pref_H = Fraction(1, 1) / (s + 1) - Fraction(1, 2)
    pref_neg_lstar = -Fraction(s - 1, 1) / (2 * (s + 1))
    expo = Fraction(s + 1, 1) / (s - 1)
    return pref_H, pref_neg_lstar, K0, expo


def printed_aviles_level(n: int) -> float:
    """The long closed form printed for the lower-critical limiting level."""
    a = 2.0 ** ((n - 8) / (n - 4)) * (n - 4) * \
        float((n - 2) * (n * n - 16)) ** (2.0 * (n - 2) / (n - 4))
    b = float((n - 2) ** 5) * float((n * n - 16)) ** 4
    return (a + b) / (16.0 * (n - 2))


def derived_aviles_level(n: int, variant: str = "theorem") -> float:
    """(q+1)^{-1} Lam^{q+1} + K^0 Lam^2 at Lam = K^0^{(n-4)/4}, q = lower."""
    K0h = float(hat_constant(n, variant))
    q = float(special_exponents(n).lower)
    lam = K0h ** ((n - 4) / 4.0)
    return lam ** (q + 1) / (q + 1) + K0h * lam * lam


def constant_state_aviles_level(n: int, variant: str = "theorem") -> float:
    """Actual limit of the slice energy along the constant state w*.

    The t-weighted quadratic term contributes with a minus sign, giving
    Lam^{q+1}/(q+1) - K^0 Lam^2 < 0 (consistent with the \"-l*\" branch).
    """
    K0h = float(hat_constant(n, variant))
    q = float(special_exponents(n).lower)
    lam = K0h ** ((n - 4) / 4.0)
    return lam ** (q + 1) / (q + 1) - K0h * lam * lam


def limiting_levels(params: Params, sigma: int = BUILD_SIGMA) -> PohozaevLevels:
    variants = ("theorem", "printed-limit")
    return PohozaevLevels(
        n=params.n, s=params.s,
        l_star_autonomous=autonomous_level(params.n, params.s, sigma),
        l_star_aviles_printed=printed_aviles_level(params.n),
        l_star_aviles_derived={v: derived_aviles_level(params.n, v) for v in variants},
        l_star_aviles_constant_state={v: constant_state_aviles_level(params.n, v)
                                      for v in variants},
    )


# ---------------------------------------------------------------------------
# nonautonomous (t-weighted) machinery
# ---------------------------------------------------------------------------

def aviles_hamiltonian(n: int, y, t: float,
                       polys: Optional[Dict[str, UPoly]] = None) -> float:
    """t-weighted radial Hamiltonian of the lower-critical system."""
    if t <= 0:
        raise DomainError("t must be positive")
    co = polys if polys is not None else printed_nonautonomous_polys(n)
    u = 1.0 / float(t)
    K0, K2, K3 = (float(co["K0"](u)), float(co["K2"](u)), float(co["K3"](u)))
    w, w1, w2, w3 = _split(y)
    q = float(special_exponents(n).lower)
    nw = float(np.linalg.norm(w))
    return float(
        -t * (np.dot(w3, w1) + K3 * np.dot(w2, w1))
        + 0.5 * t * (np.dot(w2, w2) - K2 * np.dot(w1, w1) - K0 * np.dot(w, w))
        + nw ** (q + 1) / (q + 1))


def aviles_p_coeffs(n: int, t: float) -> Dict[str, Dict[str, float]]:
    """The four p-coefficients, printed route and definitional route.

    definitional: p3 = -[K~3 + K~3'], p2 = -(2t K~3 - 1)/2,
    p1 = -[K~2 + t K~2' - 2t K~1]/2, p0 = -[K~0 + t K~0']/2,
    built from the printed K~ block.
    """
    if t <= 0:
        raise DomainError("t must be positive")
    printed = {
        "p3": -(n - 4) / t**2 - (n - 4) / t - 2.0 * (n - 4),
        "p2": -(n - 4) / t - (4 * n - 17) / 2.0,
        "p1": (n * (n + 7) * (n - 4) / (16 * t**2) + 3 * n * (n - 4) ** 2 / (8 * t)
               + 5.0 * (7 * n - 10) - 2.0 * (n - 2) * (n - 4) * t),
        "p0": (3 * (n - 4) * n * (n + 4) * (n + 8) / (512 * t**4)
               + (n - 4) ** 2 * n * (n + 4) / (32 * t**3)
               + (n - 4) * n * (n * n - 10 * n + 20) / (32 * t**2)),
    }
    definitional = {k: _eval_tpoly(v, t) for k, v in
                    definitional_p_polys(n).items()}
    return {"printed": printed, "definitional": definitional}


def definitional_p_polys(n: int) -> Dict[str, dict]:
    """Exact definitional p_j as {power-of-t: Fraction} maps.

    Mixed polynomials in t and 1/t; keys are integer powers of t.
    """
    Kt = printed_nonautonomous_polys(n)

    def as_tmap(up: UPoly, tshift: int = 0) -> dict:
        return {tshift - k: c for k, c in enumerate(up.coeffs) if c != 0}

    def tmap_add(*maps):
        out: dict = {}
        for m in maps:
            for k, v in m.items():
                out[k] = out.get(k, 0) + v
        return {k: v for k, v in out.items() if v != 0}

    def tmap_scale(m, c):
        return {k: c * v for k, v in m.items()}

    def du_to_dt(up: UPoly) -> dict:
        # d/dt f(1/t) = -u^2 f'(u) evaluated as a map in t
        d = UPoly([0, 0, -1]) * up.deriv()
        return as_tmap(d)

    def tshift(m, j):
        return {k + j: v for k, v in m.items()}

    p3 = tmap_scale(tmap_add(as_tmap(Kt["K3"]), du_to_dt(Kt["K3"])), -1)
    p2 = tmap_add(tmap_scale(tshift(as_tmap(Kt["K3"]), 1), Fraction(-1)),
                  {0: Fraction(1, 2)})
    p1 = tmap_scale(tmap_add(as_tmap(Kt["K2"]), tshift(du_to_dt(Kt["K2"]), 1),
                             tmap_scale(tshift(as_tmap(Kt["K1"]), 1), -2)),
                    Fraction(-1, 2))
    p0 = tmap_scale(tmap_add(as_tmap(Kt["K0"]), tshift(du_to_dt(Kt["K0"]), 1)),
                    Fraction(-1, 2))
    return {"p3": p3, "p2": p2, "p1": p1, "p0": p0}


def _eval_tpoly(tmap: dict, t: float) -> float:
    return float(sum(float(c) * float(t) ** k for k, c in tmap.items()))


def p0_large_t_sign(n: int) -> int:
    """Sign of the dominant large-t term of p0 (1/t^2 coefficient)."""
    lead = n * n - 10 * n + 20
    return 0 if lead == 0 else (1 if lead > 0 else -1)


def aviles_pohozaev_series(n: int, traj: Trajectory, num: int = 401) -> list:
    """(t, P~_cyl) samples along a trajectory of the t-weighted system."""
    om = unit_sphere_area(n)
    ts = np.linspace(float(traj.t[0]), float(traj.t[-1]), num)
    return [(float(t), om * aviles_hamiltonian(n, traj(float(t)), float(t)))
            for t in ts]


def constant_state_trajectory(n: int, t0: float, t1: float, num: int = 500,
                              variant: str = "theorem",
                              quasi_static: bool = False) -> Trajectory:
    """Synthetic settled trajectory at the constant level w*.

    quasi_static=True follows the slowly varying balance
    w(t) = (t K~0(t))^{(n-4)/4} instead of the frozen constant.
    """
    if not (0 < t0 < t1):
        raise DomainError("need 0 < t0 < t1")
    ts = np.linspace(t0, t1, num)
    K0p = printed_nonautonomous_polys(n)["K0"]
    ys = np.zeros((num, 4))
    if quasi_static:
        for i, t in enumerate(ts):
            ys[i, 0] = (float(t) * float(K0p(1.0 / float(t)))) ** ((n - 4) / 4.0)
    else:
        ys[:, 0] = float(hat_constant(n, variant)) ** ((n - 4) / 4.0)
    return Trajectory(t=ts, y=ys, dense=[], stats={"synthetic": True},
                      rel_tol=0.0, abs_tol=0.0, status="synthetic")


def monotonicity_check_aviles(n: int, traj: Trajectory, settle_tol: float = 1e-3,
                              min_window: float = 20.0) -> str:
    """Single-sign verdict for dP~/dt on the settled tail of a trajectory.

    Returns 'NONINCREASING', 'NONDECREASING', 'CONSTANT' or
    'INCONCLUSIVE' (trajectory too short, or never settled near a
    constant level) -- never a false pass.
    """
    t_lo, t_hi = float(traj.t[0]), float(traj.t[-1])
    if t_hi - t_lo < min_window:
        return "INCONCLUSIVE"
    num = 801
    series = aviles_pohozaev_series(n, traj, num=num)
    ts = np.array([p[0] for p in series])
    Ps = np.array([p[1] for p in series])
    # settled: |W| near a constant, derivatives small on the tail
    ws = np.array([np.linalg.norm(traj(float(t))[0::4]) for t in ts])
    w1 = np.array([np.linalg.norm(traj(float(t))[1::4]) for t in ts])
    tail = ts >= t_lo + 0.25 * (t_hi - t_lo)
    wbar = float(np.mean(ws[tail]))
    if np.all(np.abs(Ps) < 1e-14):
        return "CONSTANT"
    settled = (float(np.max(np.abs(ws[tail] - wbar))) <= settle_tol * max(wbar, 1e-12)
               and float(np.max(w1[tail])) <= settle_tol * max(wbar, 1.0))
    if not settled:
        return "INCONCLUSIVE"
    dP = np.gradient(Ps, ts)
    dtail = dP[tail]
    if np.all(np.abs(dtail) < 1e-15):
        return "CONSTANT"
    if np.all(dtail >= -1e-14 * max(1.0, float(np.max(np.abs(Ps))))):
        return "NONDECREASING"
    if np.all(dtail <= 1e-14 * max(1.0, float(np.max(np.abs(Ps))))):
        return "NONINCREASING"
    return "INCONCLUSIVE"


def nonautonomous_residual_at_constant(n: int, t: float,
                                       variant: str = "theorem") -> float:
    """|RHS| of the t-weighted system along the frozen constant state."""
    rhs = make_nonautonomous_rhs(n)
    w = float(hat_constant(n, variant)) ** ((n - 4) / 4.0)
    out = rhs(t, np.array([w, 0.0, 0.0, 0.0]))
    return float(np.max(np.abs(out)))
