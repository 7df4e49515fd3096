"""
What a single beam splitter can and cannot do
=============================================

Two imperfect single-photon sources (vacuum with probability 1-p, one
photon with probability p) enter a beam splitter; a detector watches one
output port.  Conditioning on the detector reading can reshape the kept
mode's photon statistics, but the one-photon-to-vacuum ratio never beats
the input ratio scaled by the photon head room.
"""

import math

import numpy as np

from photonpost import (
    DetectionPattern,
    InputSpec,
    beam_splitter,
    condition_mixed,
    figures_of_merit,
    haar_random,
)

p = 0.2
spec = InputSpec.two_level([p, p])
ratio_in = p / (1 - p)
print(f"source: p = {p}, input ratio R_in = {ratio_in:.6f}")
print()

# sweep the splitting angle and condition on each possible detector reading
print("theta/pi   D=0: R_out      D=1: R_out      D=2 prob")
for frac in (0.1, 0.25, 0.35, 0.5):
    theta = frac * math.pi
    bs = beam_splitter(theta)
    row = [f"{frac:8.2f}"]
    for detected in (0, 1):
        res = condition_mixed(spec, bs, DetectionPattern((detected,)))
        q = res.unnormalized
        ratio = q[1] / q[0] if q[0] > 0 else math.inf
        row.append(f"{ratio:14.6f}")
    res2 = condition_mixed(spec, bs, DetectionPattern((2,)))
    row.append(f"{res2.pattern_probability:12.6f}")
    print(" ".join(row))

print()
print("Detecting zero photons keeps the ratio at R_in exactly; detecting")
print("one pushes vacuum up, never down.  The general bound is")
print("R_out <= R_in * (M - D) with M occupied modes and D detected photons.")
print()

# hammer the claim with random unitaries, tracking the worst case
rng = np.random.default_rng(7)
worst = -math.inf
for k in range(500):
    u = haar_random(2, seed=int(rng.integers(0, 2**31)))
    for detected in (0, 1):
        res = condition_mixed(spec, u, DetectionPattern((detected,)))
        q = res.unnormalized
        if q[0] <= 0:
            continue
        worst = max(worst, q[1] / q[0] - ratio_in * (2 - detected))
print(f"500 random 2-mode networks, all patterns: max(R_out - bound) = {worst:.3e}")
print("(never positive beyond float noise: the no-go holds)")

# merit report for one concrete case
res = condition_mixed(spec, beam_splitter(0.25 * math.pi), DetectionPattern((1,)))
report = figures_of_merit(res, spec)
print()
print("balanced splitter, one photon detected:")
print(f"  heralding probability  {res.pattern_probability:.6f}")
print(f"  kept-mode distribution {np.round(res.normalized, 6)}")
print(f"  R_out = {report.ratio_out:.6f} vs allowed {report.ratio_bound:.6f}")
