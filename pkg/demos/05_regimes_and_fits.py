"""Classifying (n, s) and recovering asymptotic profiles from samples.

The trichotomy in s decides which singular model applies near the
origin; the fitters then recover exponents and amplitudes from sampled
profiles and can tell a pure power from the log-corrected profile.

Run:  python demos/05_regimes_and_fits.py
"""

from fractions import Fraction

import numpy as np

from fowler4 import (AvilesProfile, SingularPower, classify_regime,
                     fit_log_corrected, fit_power_law, residual_decay_check)

print("== regime chart for n = 5 ==")
for s in (Fraction(3), Fraction(5), Fraction(7), Fraction(9), Fraction(10)):
    rep = classify_regime(5, s)
    amp = "" if rep.predicted_amplitude is None else \
        f", amplitude {rep.predicted_amplitude:.6f}"
    print(f"  s={str(s):>3s}: {rep.regime.value:13s} {rep.description}{amp}")

print()
print("== round-trip: fit the exact power solution at (5, 7) ==")
sp = SingularPower(5, 7.0)
rs = np.geomspace(1e-3, 1e2, 40)
rep = fit_power_law([(float(r), sp.radial(float(r))) for r in rs])
print(f"  exponent {rep.exponent:.12f} (target {sp.gamma:.12f}), "
      f"amplitude {rep.amplitude:.12f} (target {sp.amplitude:.12f})")

print()
print("== telling the log-corrected profile from a pure power (n=5) ==")
ap = AvilesProfile(5)
rs = np.geomspace(1e-8, 1e-3, 40)
pow_rep = fit_power_law([(float(r), ap(float(r))) for r in rs])
log_rep = fit_log_corrected([(float(r), ap(float(r))) for r in rs], 5)
print(f"  naive power fit: exponent {pow_rep.exponent:.4f}, "
      f"rms residual {pow_rep.residual:.2e}")
print(f"  log-corrected fit: log exponent {log_rep.log_exponent:.6f} "
      f"(target {(4 - 5) / 4:.2f}), rms residual {log_rep.residual:.2e}")
print(f"  amplitude distances to the ledgered variants: "
      f"{ {k: round(log_rep.amplitude_distance(k), 6) for k in log_rep.amplitude_targets} }")

print()
print("== residual decay along the settled constant of the slow regime ==")
for n in (5, 8):
    out = residual_decay_check(n)
    print(f"  n={n}: fitted decay rate {out['rate']:.4f} (O(1/t) predicted)")
