"""
Improving a source with a weakly tapped chain
=============================================

N identical imperfect sources feed a cascade of beam splitters that
funnels everything into one strong arm, weakly coupled (strength
epsilon) to the kept output mode.  Detecting D photons in the strong arm
heralds a kept state whose one-photon odds beat the raw source, by up to
D(N-D)/(N-1) in the weak-tap limit.
"""

import math

import numpy as np

from photonpost import (
    InputSpec,
    build_chain,
    chain_asymptotics,
    condition_mixed,
    detection_coefficients,
    figures_of_merit,
    improvement_threshold,
    run_chain,
)

n, detected, p = 4, 2, 0.2
gain_limit, two_photon_limit = chain_asymptotics(n, detected)
print(f"N = {n} sources at p = {p}, D = {detected} detected")
print(f"weak-tap limits: ratio gain {gain_limit:.4f}, two-photon level {two_photon_limit:.4f}")
print()

# the trade-off: weaker taps give better output but rarer heralds
print("epsilon    herald prob     c1 (kept)   ratio gain")
for eps in (0.4, 0.2, 0.1, 0.05, 0.01, 0.001):
    res = run_chain(n, eps, p, detected)
    rep = figures_of_merit(res, InputSpec.two_level([p] * n))
    gain = rep.ratio_out / rep.ratio_in
    print(
        f"{eps:7.3f} {res.pattern_probability:14.8f} {res.normalized[1]:11.6f} {gain:12.6f}"
    )

print()
print(f"c1 approaches {8 / 33:.6f} (= 8/33) as the tap closes, versus p = {p} raw.")
print()

# the improvement window: conditioning helps only below a threshold p
chain = build_chain(n, 1e-3)
coeffs = detection_coefficients(chain.interferometer, chain.pattern_for(detected))
r_star = improvement_threshold(coeffs)
p_star = r_star / (1 + r_star)
print(f"improvement closes at p* = {p_star:.5f} (sqrt(2)-1 = {math.sqrt(2) - 1:.5f})")
for p_test in (0.3, 0.41, 0.42, 0.5):
    res = run_chain(n, 1e-3, p_test, detected)
    verdict = "improves" if res.normalized[1] > p_test else "does not improve"
    print(f"  p = {p_test:4.2f}: c1 = {res.normalized[1]:.5f}  -> {verdict}")
