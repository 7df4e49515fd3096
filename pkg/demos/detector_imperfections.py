"""
How real detectors dent the improvement
=======================================

The chain scheme heralds on "0 photons here, D photons there".  Real
detectors miss photons, cannot count past "two or more", and fire in the
dark.  This sweep compares the ideal heralded one-photon probability
against progressively worse detector stacks, for 4 sources at p = 0.2.
"""

import numpy as np

from photonpost import (
    BUCKET,
    DetectorModel,
    InputSpec,
    ObservedPattern,
    build_chain,
    condition_mixed,
    observe,
    benchmark_detector_suite,
)

n, p = 4, 0.2


def sweep_point(eps, scenario, two_photon_prob=0.001):
    scheme = build_chain(n, eps)
    if scenario == "two-photon inputs":
        dist = {0: 1.0 - p - two_photon_prob, 1: p, 2: two_photon_prob}
        spec = InputSpec(tuple(dict(dist) for _ in range(n)))
    else:
        spec = InputSpec.two_level([p] * n)
    if scenario == "ideal":
        res = condition_mixed(spec, scheme.interferometer, scheme.pattern_for(2))
    else:
        cap = spec.max_total()
        if scenario == "bucket tap":
            vac, tap = DetectorModel.exact(cap), DetectorModel.bucket(cap)
        elif scenario in ("90% efficiency", "two-photon inputs"):
            vac = DetectorModel.vacuum_inefficient(cap)
            tap = DetectorModel.bucket(cap)
        else:  # dark counts
            vac, tap = benchmark_detector_suite(cap)
        res = observe(
            spec,
            scheme.interferometer,
            ObservedPattern((BUCKET,) + (0,) * (n - 2)),
            [tap] + [vac] * (n - 2),
        )
    c1 = 0.0 if res.zero_probability else float(res.normalized[1])
    return res.pattern_probability, c1


scenarios = ("ideal", "bucket tap", "90% efficiency", "dark counts", "two-photon inputs")
grid = np.geomspace(0.01, 0.42, 12)

print(f"heralded one-photon probability c1, {n} sources at p = {p} (raw = 0.2)")
print()
header = "epsilon " + "".join(f"{s:>20}" for s in scenarios)
print(header)
for eps in grid:
    cells = [f"{eps:7.3f}"]
    for s in scenarios:
        _, c1 = sweep_point(eps, s)
        cells.append(f"{c1:20.6f}")
    print("".join(cells))

print()
print("Reading the table:")
print(" - a bucket tap ('two or more') barely moves the curve;")
print(" - 10% vacuum-detector loss costs a flat ~0.003 in c1;")
print(" - dark counts and two-photon input contamination (both 0.1%) kill the")
print("   weak-tap limit, but a band of moderate epsilon still beats 0.2;")
print(" - at 0.4% two-photon contamination that band closes:")

worst = max(sweep_point(eps, "two-photon inputs", 0.004)[1] for eps in grid)
print(f"   best c1 over the grid at 0.4% contamination = {worst:.6f} < 0.2")
