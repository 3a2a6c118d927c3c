"""Exact solutions and kernels, verified by residuals against the operator.

Everything here is a plain radial evaluator plus, where available,
hand-derived radial derivatives up to fourth order, so the biharmonic
residual can be computed to near machine precision.  Profiles without
exact derivatives fall back to compact-stencil finite differences with
Richardson extrapolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .coefficients import hat_constant, oracle_autonomous, radial_weights
from .params import DomainError, gamma_exponent, special_exponents, unit_sphere_area

_RESIDUAL_RMIN = 1e-8
_RESIDUAL_RMAX = 1e8


# ---------------------------------------------------------------------------
# derivative machinery
# ---------------------------------------------------------------------------

# central stencils: order 1,2 are 8th-order; 3,4 are 6th-order and get a
# Richardson sweep to joint order 8.  (k>0 weights; odd orders are applied
# antisymmetrically, even orders symmetrically plus the center weight.)
_FD = {
    1: (8, None, [4 / 5, -1 / 5, 4 / 105, -1 / 280]),
    2: (8, -205 / 72, [8 / 5, -1 / 5, 8 / 315, -1 / 560]),
    3: (6, None, [-61 / 30, 169 / 120, -3 / 10, 7 / 240]),
    4: (6, 91 / 8, [-122 / 15, 169 / 60, -2 / 5, 7 / 240]),
}


def fd_derivative(f: Callable[[float], float], r: float, order: int) -> float:
    """Central-difference derivative with one Richardson sweep (order <= 4).

    Step h = r * eps^{1/(8+k)} balances the order-8 truncation against
    the eps/h^k roundoff of the k-th derivative (k=1 gives the r*eps^{1/9}
    rule; higher k needs the wider step).
    """
    if order == 0:
        return f(r)
    if order not in _FD:
        raise DomainError(f"derivative order {order} unsupported")
    eps = np.finfo(float).eps
    h = max(abs(r), 1e-3) * eps ** (1.0 / (8.0 + order))
    base, w0, ws = _FD[order]

    def diff(hh):
        if order % 2:
            acc = sum(w * (f(r + k * hh) - f(r - k * hh))
                      for k, w in zip((1, 2, 3, 4), ws))
        else:
            acc = w0 * f(r) + sum(w * (f(r + k * hh) + f(r - k * hh))
                                  for k, w in zip((1, 2, 3, 4), ws))
        return acc / hh**order

    fac = 2.0 ** base
    return (fac * diff(h / 2) - diff(h)) / (fac - 1.0)


@dataclass
class RadialProfile:
    """Radial evaluator with optional exact derivatives and a descriptive tag."""

    f: Callable[[float], float]
    derivs: Optional[Callable[[float], Sequence[float]]] = None
    tag: str = "profile"

    def __call__(self, r: float) -> float:
        if r <= 0:
            raise DomainError("radial profiles are defined for r > 0")
        return self.f(r)

    def derivatives(self, r: float) -> np.ndarray:
        """(u, u', u'', u''', u'''') at r, exact when available."""
        if r <= 0:
            raise DomainError("radial profiles are defined for r > 0")
        if self.derivs is not None:
            return np.asarray(self.derivs(r), dtype=float)
        return np.array([fd_derivative(self.f, r, k) for k in range(5)])

    def bilaplacian(self, n: int, r: float) -> float:
        d = self.derivatives(r)
        N = radial_weights(n)
        return float(sum(N[j] * r ** (j - 4) * d[j] for j in range(5)))

    def residual(self, n: int, r: float, rhs_value: float) -> float:
        """|Delta^2 u - rhs| / max(|rhs|, tiny) at radius r."""
        if not (_RESIDUAL_RMIN <= r <= _RESIDUAL_RMAX):
            raise DomainError(f"residual sampling restricted to "
                              f"[{_RESIDUAL_RMIN}, {_RESIDUAL_RMAX}], got r={r}")
        lhs = self.bilaplacian(n, r)
        scale = max(abs(rhs_value), 1e-300)
        return abs(lhs - rhs_value) / scale


# ---------------------------------------------------------------------------
# bubbles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Bubble:
    """Radially symmetric profile (2 mu / (1 + mu^2 |x-x0|^2))^{(n-4)/2}."""

    n: int
    mu: float = 1.0
    x0: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.mu <= 0:
            raise DomainError("bubble scale mu must be positive")
        if self.n < 5:
            raise DomainError("bubbles need n >= 5")

    def center(self, dim: Optional[int] = None) -> np.ndarray:
        if self.x0 is not None:
            return np.asarray(self.x0, dtype=float)
        return np.zeros(dim or self.n)

    def radial(self, r: float) -> float:
        return float((2 * self.mu / (1 + self.mu**2 * r * r)) ** ((self.n - 4) / 2.0))

    def __call__(self, x) -> float:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        r = float(np.linalg.norm(x - self.center(x.size)))
        return self.radial(r)

    def radial_derivatives(self, r: float) -> np.ndarray:
        """Hand-derived (u, u', u'', u''', u'''') of the radial evaluator."""
        m = self.n - 4
        mu = self.mu
        A = (2 * mu) ** (m / 2.0)
        g = 1 + mu * mu * r * r

        def gp(e):
            return g ** (-(m + e) / 2.0)

        u0 = A * gp(0)
        u1 = -A * m * mu**2 * r * gp(2)
        u2 = -A * m * mu**2 * (gp(2) - (m + 2) * mu**2 * r**2 * gp(4))
        u3 = A * m * (m + 2) * mu**4 * (3 * r * gp(4) - (m + 4) * mu**2 * r**3 * gp(6))
        u4 = A * m * (m + 2) * mu**4 * (3 * gp(4) - 6 * (m + 4) * mu**2 * r**2 * gp(6)
                                        + (m + 4) * (m + 6) * mu**4 * r**4 * gp(8))
        return np.array([u0, u1, u2, u3, u4])

    def profile(self) -> RadialProfile:
        return RadialProfile(self.radial, self.radial_derivatives, tag="bubble")


def bubble_constant(n: int, radii=(0.5, 1.0, 2.0), agreement_tol: float = 1e-9) -> float:
    """Normalizing constant c(n) with Delta^2 u = c(n) u^{upper-1}.

    Measured as the residual ratio of the unit bubble at several radii;
    the evaluations must agree to ``agreement_tol`` relative.
    """
    b = Bubble(n, mu=1.0)
    prof = b.profile()
    power = float(special_exponents(n).upper - 1)
    vals = []
    for r in radii:
        lhs = prof.bilaplacian(n, r)
        vals.append(lhs / b.radial(r) ** power)
    spread = (max(vals) - min(vals)) / max(abs(v) for v in vals)
    if spread > agreement_tol:
        raise ArithmeticError(f"bubble constant evaluations disagree: {vals}")
    return float(sum(vals) / len(vals))


def bubble_constant_closed_form(n: int) -> float:
    """n(n-4)(n^2-4)/16, the value the measured ratio reproduces."""
    return n * (n - 4) * (n * n - 4) / 16.0


# ---------------------------------------------------------------------------
# singular power-law solutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SingularPower:
    """Lam * K0^{1/(s-1)} |x|^{-gamma(s)} on the Gidas--Spruck window."""

    n: int
    s: float
    lam: np.ndarray = field(default_factory=lambda: np.array([1.0]))

    def __post_init__(self):
        lam = np.atleast_1d(np.asarray(self.lam, dtype=float))
        if np.any(lam < 0):
            raise DomainError("direction vector must be nonnegative")
        nrm = float(np.linalg.norm(lam))
        if abs(nrm - 1.0) > 1e-12:
            lam = lam / nrm
        object.__setattr__(self, "lam", lam)
        ex = special_exponents(self.n)
        K0 = oracle_autonomous(self.n, self.s)["K0"]
        if not K0 > 0:
            raise DomainError(
                f"amplitude requires K0 > 0, i.e. s in ({ex.lower}, {ex.critical_power}); "
                f"got s={self.s} with K0={K0}")

    @property
    def gamma(self) -> float:
        return float(gamma_exponent(self.s))

    @property
    def amplitude(self) -> float:
        K0 = float(oracle_autonomous(self.n, self.s)["K0"])
        return K0 ** (1.0 / (float(self.s) - 1.0))

    def radial(self, r: float) -> float:
        return self.amplitude * r ** (-self.gamma)

    def __call__(self, x) -> np.ndarray:
        r = float(np.linalg.norm(np.atleast_1d(np.asarray(x, dtype=float))))
        return self.lam * self.radial(r)

    def radial_derivatives(self, r: float) -> np.ndarray:
        g = self.gamma
        A = self.amplitude
        out = [A * r ** (-g)]
        fall = 1.0
        for k in range(4):
            fall *= (-g - k)
            out.append(A * fall * r ** (-g - k - 1))
        return np.array(out)

    def profile(self) -> RadialProfile:
        return RadialProfile(self.radial, self.radial_derivatives, tag="singular-power")

    def system_residual(self, r: float) -> float:
        """max_i |Delta^2 u_i - |U|^{s-1} u_i| / |U|^{s-1} u_i at radius r."""
        prof = self.profile()
        scalar_rhs = self.radial(r) ** float(self.s)
        res = prof.residual(self.n, r, scalar_rhs)
        return float(res)  # components scale identically along the ray


# ---------------------------------------------------------------------------
# log-corrected profile of the lower-critical regime
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AvilesProfile:
    """amplitude * r^{4-n} (-ln r)^{(4-n)/4} on 0 < r < 1.

    The amplitude is K^_0(n)^{(n-4)/4}; the variant picks which of the
    ledgered K^_0 values is used ('theorem', 'printed-limit' or
    'chain-rule').
    """

    n: int
    variant: str = "theorem"

    @property
    def hat_value(self) -> float:
        return float(hat_constant(self.n, self.variant))

    @property
    def amplitude(self) -> float:
        return self.hat_value ** ((self.n - 4) / 4.0)

    def __call__(self, r: float) -> float:
        if not (0 < r < 1):
            raise DomainError("log-corrected profile is defined on 0 < r < 1")
        t = -math.log(r)
        return self.amplitude * r ** (4 - self.n) * t ** ((4 - self.n) / 4.0)

    def profile(self) -> RadialProfile:
        return RadialProfile(lambda r: self(r), None, tag="log-corrected")


# ---------------------------------------------------------------------------
# periodic-orbit wrapper u(r) = r^{(4-n)/2} v(ln r + T)
# ---------------------------------------------------------------------------

class EmdenFowlerProfile:
    """Radial wrapper of a periodic cylinder orbit.

    orbit: a Trajectory over (at least) one fundamental period,
    period: the fundamental period used for periodic extension,
    shift: phase T in v(ln r + T).
    """

    def __init__(self, n: int, orbit, period: float, shift: float = 0.0):
        if period <= 0:
            raise DomainError("period must be positive")
        self.n = n
        self.orbit = orbit
        self.period = float(period)
        self.shift = float(shift)
        self._t0 = float(orbit.t[0])

    def _fold(self, tau: float) -> float:
        span = self.period
        return self._t0 + ((tau - self._t0) % span)

    def v(self, tau: float) -> float:
        return float(self.orbit(self._fold(tau))[0])

    def __call__(self, r: float) -> float:
        if r <= 0:
            raise DomainError("r must be positive")
        return r ** ((4 - self.n) / 2.0) * self.v(math.log(r) + self.shift)

    def profile(self) -> RadialProfile:
        return RadialProfile(lambda r: self(r), None, tag="emden-fowler")


# ---------------------------------------------------------------------------
# Kelvin transform and the ball kernels
# ---------------------------------------------------------------------------

def inversion_map(x0, mu: float, x) -> np.ndarray:
    """I(x) = x0 + (mu/|x-x0|)^2 (x - x0)."""
    if mu <= 0:
        raise DomainError("inversion radius must be positive")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    d = x - x0
    q = float(np.dot(d, d))
    if q == 0:
        raise DomainError("inversion undefined at the center")
    return x0 + (mu * mu / q) * d


def kelvin_transform(profile: Callable, x0, mu: float, n: int) -> Callable:
    """x -> (mu/|x-x0|)^{n-4} profile(I(x))."""
    if mu <= 0:
        raise DomainError("mu must be positive")
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))

    def transformed(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        d = x - x0
        dist = float(np.linalg.norm(d))
        if dist == 0:
            raise DomainError("Kelvin transform undefined at the center")
        return (mu / dist) ** (n - 4) * profile(inversion_map(x0, mu, x))

    return transformed


def green_ball(n: int, x, y):
    """(G1, H1) for the unit ball.

    G1 uses the image form |x-y|^{2-n} - (|x| |y - x/|x|^2|)^{2-n}
    (symmetric, vanishing on the boundary); H1 is the Poisson kernel
    (1-|x|^2) / (omega_{n-1} |x-y|^n) for |y| = 1.
    """
    if n < 3:
        raise DomainError("kernels need n >= 3")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    rx, ry = float(np.linalg.norm(x)), float(np.linalg.norm(y))
    if rx >= 1 + 1e-14:
        raise DomainError("x must lie in the closed unit ball")
    d = float(np.linalg.norm(x - y))
    om = unit_sphere_area(n)
    G1 = None
    if ry <= 1 + 1e-12:
        if d == 0:
            raise DomainError("G1 undefined at coincident points")
        # |x| |y - x/|x|^2| = sqrt(|x|^2 |y|^2 - 2 x.y + 1), symmetric in x, y
        image = math.sqrt(max(rx * rx * ry * ry - 2 * float(np.dot(x, y)) + 1.0, 0.0))
        G1 = (d ** (2 - n) - image ** (2 - n)) / ((n - 2) * om)
    H1 = None
    if abs(ry - 1.0) <= 1e-12:
        if d == 0:
            raise DomainError("H1 undefined at coincident points")
        H1 = (1 - rx * rx) / (om * d ** n)
    return G1, H1


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def profile_table(profile: RadialProfile, r_lo: float, r_hi: float,
                  num: int = 200) -> np.ndarray:
    """Log-spaced (r, u, u', u'', u''', u'''') table."""
    if not (0 < r_lo < r_hi):
        raise DomainError("need 0 < r_lo < r_hi")
    rs = np.geomspace(r_lo, r_hi, num)
    rows = np.empty((num, 6))
    for i, r in enumerate(rs):
        rows[i, 0] = r
        rows[i, 1:] = profile.derivatives(float(r))
    return rows
