"""Figures of merit for conditioned single-photon output.

Three numbers summarize a photon-number distribution q[n]:

* ratio      q[1]/q[0], how much one-photon beats vacuum,
* two-photon (q[2]/q[1])/(q[1]/q[0]), zero for a clean source and 1/2
  for Poisson light,
* fano       variance/mean, below one for sub-Poissonian light.

A two-level source with single-photon probability p has ratio p/(1-p)
and fano 1-p.  Passive optics plus detection can raise the ratio by at
most a factor (occupied modes - detected photons); that bound is checked
wherever results are produced.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .conditioner import ConditionalResult, DetectionPattern
from .errors import ZeroProbabilityPattern
from .fock import InputSpec, distribution_moments
from .interferometer import Interferometer
from .permanent import permanent_with_multiplicity


@dataclass(frozen=True)
class MeritReport:
    """Output figures of merit next to their input counterparts.

    ratio_out is math.inf when the output has no vacuum component;
    two_photon_out and fano_out are None when their defining ratios are
    0/0.  ratio_bound is ratio_in times (occupied modes - detected), None
    when the result does not carry an exact detection pattern.
    """

    ratio_out: float
    two_photon_out: float | None
    fano_out: float | None
    ratio_in: float
    fano_in: float
    improves_single_photon: bool
    ratio_bound: float | None

    def to_json_dict(self) -> dict:
        def enc(x):
            if x is None:
                return None
            if math.isinf(x):
                return "infinity"
            return float(x)

        return {
            "ratio_out": enc(self.ratio_out),
            "two_photon_out": enc(self.two_photon_out),
            "fano_out": enc(self.fano_out),
            "ratio_in": enc(self.ratio_in),
            "fano_in": enc(self.fano_in),
            "improves_single_photon": bool(self.improves_single_photon),
            "ratio_bound": enc(self.ratio_bound),
        }


def figures_of_merit(result: ConditionalResult, spec: InputSpec) -> MeritReport:
    """Summarize a conditional result against its source."""
    if result.zero_probability or result.pattern_probability <= 0.0:
        raise ZeroProbabilityPattern(
            "figures of merit are undefined for an impossible pattern"
        )
    q = result.normalized
    q0 = float(q[0])
    q1 = float(q[1]) if q.size > 1 else 0.0
    q2 = float(q[2]) if q.size > 2 else 0.0

    ratio_out = math.inf if q0 == 0.0 else q1 / q0
    if q2 == 0.0:
        two_photon = 0.0
    elif q1 == 0.0 or q0 == 0.0:
        two_photon = None
    else:
        two_photon = (q2 / q1) / (q1 / q0)
    mean, var = distribution_moments(enumerate(q))
    fano_out = None if mean == 0.0 else var / mean

    p = spec.p_max()
    ratio_in = math.inf if p >= 1.0 else p / (1.0 - p)
    detected = result.detected_total()
    bound = None
    if detected is not None and not math.isinf(ratio_in):
        bound = ratio_in * (spec.occupied_modes() - detected)
    return MeritReport(
        ratio_out=ratio_out,
        two_photon_out=two_photon,
        fano_out=fano_out,
        ratio_in=ratio_in,
        fano_in=1.0 - p,
        improves_single_photon=bool(q1 > p),
        ratio_bound=bound,
    )


def detection_coefficients(
    interf: Interferometer,
    pattern: DetectionPattern,
    active_modes: Sequence[int] | None = None,
) -> np.ndarray:
    """Source-independent weights of the conditional output.

    With every active mode firing at the same single-photon probability p
    and r = p/(1-p), the conditional output obeys

        normalized[n1]  proportional to  coeffs[n1] * r**n1 / n1!

    coeffs[n1] sums |per(L[n, s])|^2 over the ways to pick n1 + detected
    of the active modes.  They depend only on the interferometer and the
    pattern, which makes improvement questions a property of the optics.
    """
    n = interf.n_modes
    if len(pattern) != n - 1:
        raise ZeroProbabilityPattern(
            f"pattern covers {len(pattern)} detectors, expected {n - 1}"
        )
    if active_modes is None:
        active_modes = range(n)
    active = sorted(set(int(i) for i in active_modes))
    if any(i < 0 or i >= n for i in active):
        raise ValueError(f"active mode out of range in {active}")
    detected = pattern.total()
    cap = len(active) - detected
    if cap < 0:
        return np.zeros(0)
    matrix = interf.matrix
    row_base = list(pattern.counts)
    coeffs = np.zeros(cap + 1)
    for n1 in range(cap + 1):
        row_reps = [n1] + row_base
        total = detected + n1
        acc = 0.0
        for chosen in itertools.combinations(active, total):
            col_reps = [0] * n
            for i in chosen:
                col_reps[i] = 1
            amp = permanent_with_multiplicity(matrix, row_reps, col_reps)
            acc += amp.real * amp.real + amp.imag * amp.imag
        coeffs[n1] = acc
    return coeffs


def improvement_predicate(coeffs: Sequence[float], ratio_in: float) -> bool:
    """Whether the output one-photon probability exceeds the input's.

    Equivalent to normalized[1] > p for a uniform two-level source with
    p = ratio_in / (1 + ratio_in); the form below shows the improvement
    window shrinking as multiphoton terms grow with ratio_in.
    """
    d = np.asarray(coeffs, dtype=float)
    if d.size < 2:
        return False
    rhs = d[0]
    for n in range(2, d.size):
        rhs += d[n] * ratio_in**n / math.factorial(n)
    return bool(d[1] > rhs)


def improvement_threshold(coeffs: Sequence[float]) -> float:
    """Largest input ratio below which the predicate holds.

    Returns 0.0 when no improvement exists even for a faint source and
    math.inf when the improvement never closes (no multiphoton terms).
    Bisection is run to 1e-12 absolute.
    """
    d = np.asarray(coeffs, dtype=float)
    if d.size < 2 or d[1] <= d[0]:
        return 0.0

    def excess(r: float) -> float:
        rhs = d[0]
        for n in range(2, d.size):
            rhs += d[n] * r**n / math.factorial(n)
        return d[1] - rhs

    if d.size == 2 or not np.any(d[2:] > 0):
        return math.inf
    lo, hi = 0.0, 1.0
    while excess(hi) > 0:
        hi *= 2.0
        if hi > 1e18:
            return math.inf
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
