"""Right-hand sides of the reduced cylinder systems, equilibria, spectra.

States are component-major: for p components the vector is
(v_1, v_1', v_1'', v_1''', v_2, ...), length 4p.  The autonomous system
uses the oracle coefficient route with the build sign convention; the
time-dependent system uses the printed coefficient evaluators.
"""

from __future__ import annotations

from typing import Callable, Dict, Optional

import numpy as np

from .coefficients import (BUILD_SIGMA, NonautonomousCoefficients, oracle_autonomous,
                           printed_nonautonomous)
from .params import DomainError, Params, special_exponents


def component_values(y: np.ndarray, p: int) -> np.ndarray:
    """The p zeroth-derivative entries of a component-major state."""
    return y[0::4] if len(y) == 4 * p else y[: 4 * p: 4]


def ray_state(scalars, lam: np.ndarray) -> np.ndarray:
    """Embed a scalar state (v, v', v'', v''') along a direction lam."""
    lam = np.asarray(lam, dtype=float)
    out = np.empty(4 * lam.size)
    for i, li in enumerate(lam):
        out[4 * i: 4 * i + 4] = li * np.asarray(scalars, dtype=float)
    return out


def make_autonomous_rhs(params: Params, sigma: int = BUILD_SIGMA,
                        coeffs: Optional[Dict[str, float]] = None) -> Callable:
    """v_i'''' = |V|^{s-1} v_i - K3 v_i''' - K2 v_i'' - K1 v_i' - K0 v_i.

    |V| is the Euclidean norm over the component values.  At V = 0 the
    product |V|^{s-1} v_i is continued by 0 (s > 1).
    """
    c = coeffs if coeffs is not None else oracle_autonomous(params.n, params.s, sigma)
    K0, K1, K2, K3 = (float(c["K0"]), float(c["K1"]), float(c["K2"]), float(c["K3"]))
    sm1 = float(params.s) - 1.0
    p = params.p

    def rhs(t, y):
        if not np.all(np.isfinite(np.asarray(y, dtype=float))):
            raise DomainError("non-finite state")
        vals = y[0::4]
        vnorm = float(np.sqrt(np.dot(np.asarray(vals, float), np.asarray(vals, float))))
        coup = vnorm ** sm1 if vnorm > 0 else 0.0
        out = np.empty_like(y)
        for i in range(p):
            b = 4 * i
            v, v1, v2, v3 = y[b], y[b + 1], y[b + 2], y[b + 3]
            out[b] = v1
            out[b + 1] = v2
            out[b + 2] = v3
            out[b + 3] = coup * v - K3 * v3 - K2 * v2 - K1 * v1 - K0 * v
        return out

    return rhs


def make_nonautonomous_rhs(n: int, p: int = 1,
                           coeffs: Optional[NonautonomousCoefficients] = None) -> Callable:
    """w_i'''' = t^{-1} |W|^{q-1} w_i - K~3 w''' - K~2 w'' - K~1 w' - K~0 w,

    with q the lower exponent n/(n-4); defined for t > 0 only.
    """
    co = coeffs if coeffs is not None else printed_nonautonomous(n)
    qm1 = float(special_exponents(n).lower) - 1.0
    fk = {k: [float(c) for c in co.polys[k].coeffs] for k in ("K0", "K1", "K2", "K3")}

    def evalp(cs, u):
        acc = 0.0
        for c in reversed(cs):
            acc = acc * u + c
        return acc

    def rhs(t, y):
        if t <= 0:
            raise DomainError(f"time-dependent system requires t > 0, got t={t}")
        u = 1.0 / float(t)
        K0, K1, K2, K3 = (evalp(fk["K0"], u), evalp(fk["K1"], u),
                          evalp(fk["K2"], u), evalp(fk["K3"], u))
        vals = y[0::4]
        wnorm = float(np.sqrt(np.dot(np.asarray(vals, float), np.asarray(vals, float))))
        coup = (wnorm ** qm1) * u if wnorm > 0 else 0.0
        out = np.empty_like(y)
        for i in range(p):
            b = 4 * i
            w, w1, w2, w3 = y[b], y[b + 1], y[b + 2], y[b + 3]
            out[b] = w1
            out[b + 1] = w2
            out[b + 2] = w3
            out[b + 3] = coup * w - K3 * w3 - K2 * w2 - K1 * w1 - K0 * w
        return out

    return rhs


def equilibrium_value(params: Params, sigma: int = BUILD_SIGMA):
    """The nontrivial constant level K0^{1/(s-1)}; None when K0 <= 0."""
    K0 = oracle_autonomous(params.n, params.s, sigma)["K0"]
    if not K0 > 0:
        return None
    return float(K0) ** (1.0 / (float(params.s) - 1.0))


def equilibrium_state(params: Params, sigma: int = BUILD_SIGMA,
                      lam=None) -> np.ndarray:
    v = equilibrium_value(params, sigma)
    if v is None:
        raise DomainError("only the zero equilibrium exists (K0 <= 0)")
    if lam is None:
        lam = np.ones(params.p) / np.sqrt(params.p)
    return ray_state((v, 0.0, 0.0, 0.0), lam)


def linearized_spectrum(params: Params, sigma: int = BUILD_SIGMA) -> np.ndarray:
    """Roots of P(lambda) - s K0, the linearization at the constant level.

    Companion-matrix eigenvalues polished by a few Newton steps; the
    roots reproduce the quartic to ~1e-12 backward error.
    """
    c = oracle_autonomous(params.n, params.s, sigma)
    K0 = float(c["K0"])
    if not K0 > 0:
        raise DomainError("nontrivial equilibrium requires K0 > 0")
    s = float(params.s)
    # leading-first for numpy.roots
    poly = np.array([1.0, float(c["K3"]), float(c["K2"]), float(c["K1"]),
                     K0 - s * K0])
    roots = np.roots(poly)
    dpoly = np.polyder(poly)
    for _ in range(4):
        fv = np.polyval(poly, roots)
        dv = np.polyval(dpoly, roots)
        mask = np.abs(dv) > 1e-30
        roots[mask] = roots[mask] - fv[mask] / dv[mask]
    return np.sort_complex(roots)


def spectrum_backward_error(params: Params, roots: np.ndarray,
                            sigma: int = BUILD_SIGMA) -> float:
    c = oracle_autonomous(params.n, params.s, sigma)
    K0 = float(c["K0"])
    s = float(params.s)
    poly = np.array([1.0, float(c["K3"]), float(c["K2"]), float(c["K1"]),
                     K0 - s * K0])
    scale = max(1.0, float(np.max(np.abs(roots))) ** 4)
    return float(np.max(np.abs(np.polyval(poly, roots)))) / scale
