"""Conditional output statistics behind photodetection.

The kept mode is always mode 1 (index 0); detectors watch modes 2..N.
For diagonal inputs the conditional state of mode 1 is again diagonal,
so everything reduces to a vector of unnormalized number-state weights.

The weight of finding n1 photons in mode 1 together with the pattern
(n2..nN) at the detectors is

    c~[n1] = (1 / (n1! * prod_j nj!)) * sum_s  W_s  |per(L[n, s])|^2

where the sum runs over emission configurations s with the same total as
n, W_s is the emission probability divided by prod_i s_i!, and L[n, s]
repeats column i of the interferometer s_i times and row j n_j times.
Summing c~ over n1 gives exactly the probability of seeing the pattern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch
from .fock import InputSpec, PhotonConfig, compositions, enumerate_inputs
from .interferometer import Interferometer
from .permanent import permanent_with_multiplicity

# c~ entries are sums of non-negative terms; anything below this is
# floating-point dust and gets clamped to zero.
NEGATIVE_CLAMP = -1e-14


@dataclass(frozen=True)
class DetectionPattern:
    """Exact photon counts on the detector modes 2..N (index 0 is mode 2)."""

    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValueError(f"negative count in detection pattern {counts}")
        object.__setattr__(self, "counts", counts)

    def total(self) -> int:
        return sum(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)


@dataclass(frozen=True, eq=False)
class ConditionalResult:
    """Number-state weights of the kept mode after conditioning.

    unnormalized[n1] is c~[n1] as above; their sum is the probability of
    the detection pattern, and normalized[] is the conditional
    distribution (all zeros, flagged, when the pattern cannot occur).
    """

    unnormalized: np.ndarray
    pattern: object
    pattern_probability: float
    normalized: np.ndarray
    zero_probability: bool

    @classmethod
    def from_unnormalized(cls, values, pattern=None) -> "ConditionalResult":
        arr = np.asarray(values, dtype=float).copy()
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("expected a 1-D coefficient vector")
        low = arr.min() if arr.size else 0.0
        if low < NEGATIVE_CLAMP:
            raise ValueError(f"coefficient {low} is negative beyond roundoff")
        np.clip(arr, 0.0, None, out=arr)
        prob = float(arr.sum())
        if prob > 0.0:
            normalized = arr / prob
            zero = False
        else:
            normalized = np.zeros_like(arr)
            zero = True
        arr.setflags(write=False)
        normalized.setflags(write=False)
        return cls(
            unnormalized=arr,
            pattern=pattern,
            pattern_probability=prob,
            normalized=normalized,
            zero_probability=zero,
        )

    def detected_total(self):
        """Total detected photons when the pattern is exact, else None."""
        if isinstance(self.pattern, DetectionPattern):
            return self.pattern.total()
        return None

    def coefficient(self, n1: int) -> float:
        if 0 <= n1 < self.unnormalized.size:
            return float(self.unnormalized[n1])
        return 0.0


def _check_shapes(spec: InputSpec, interf: Interferometer, pattern: DetectionPattern):
    n = interf.n_modes
    if spec.n_modes != n:
        raise DimensionMismatch(
            f"input has {spec.n_modes} modes, interferometer has {n}"
        )
    if len(pattern) != n - 1:
        raise DimensionMismatch(
            f"pattern covers {len(pattern)} detectors, expected {n - 1}"
        )


def condition_mixed(
    spec: InputSpec, interf: Interferometer, pattern: DetectionPattern
) -> ConditionalResult:
    """Conditional output of mode 1 given exact detector counts.

    Sums squared permanents over every emission configuration consistent
    with the photon total; n1 runs up to the source maximum minus the
    detected total (an impossible pattern yields the flagged zero result).
    """
    _check_shapes(spec, interf, pattern)
    detected = pattern.total()
    cap = spec.max_total() - detected
    if cap < 0:
        return ConditionalResult.from_unnormalized([0.0], pattern=pattern)
    pat_norm = 1.0
    for nj in pattern:
        pat_norm *= math.factorial(nj)
    matrix = interf.matrix
    coeffs = np.zeros(cap + 1)
    for n1 in range(cap + 1):
        row_reps = (n1,) + pattern.counts
        acc = 0.0
        for s, weight in enumerate_inputs(spec, detected + n1):
            amp = permanent_with_multiplicity(matrix, row_reps, s.counts)
            acc += weight * (amp.real * amp.real + amp.imag * amp.imag)
        coeffs[n1] = acc / (math.factorial(n1) * pat_norm)
    return ConditionalResult.from_unnormalized(coeffs, pattern=pattern)


def condition_mixed_bs_closed_form(
    dist1, dist2, element: Interferometer, detected: int
) -> ConditionalResult:
    """Two-mode special case in closed form (no permanents).

    dist1 and dist2 are the photon-number distributions feeding the two
    inputs of `element`; `detected` photons are seen on output mode 2.
    Matches condition_mixed on the same data to ~1e-10 per coefficient.
    """
    if element.n_modes != 2:
        raise DimensionMismatch("closed form applies to a two-mode element")
    if detected < 0:
        raise ValueError("detected photon count must be non-negative")
    spec = InputSpec((dist1, dist2))
    l11, l12 = element.matrix[0, 0], element.matrix[0, 1]
    l21, l22 = element.matrix[1, 0], element.matrix[1, 1]
    d = detected
    cap = spec.max_total() - d
    if cap < 0:
        return ConditionalResult.from_unnormalized(
            [0.0], pattern=DetectionPattern((d,))
        )
    coeffs = np.zeros(cap + 1)
    sup1, sup2 = spec.support(0), spec.support(1)
    for k in sup1:
        pk = spec.prob(0, k)
        for l in sup2:
            n1 = k + l - d
            if n1 < 0 or n1 > cap:
                continue
            ql = spec.prob(1, l)
            amp = 0j
            for m in range(max(0, n1 - k), min(l, n1) + 1):
                # m photons of the second input end up in the kept mode
                amp += (
                    l11 ** (n1 - m)
                    * l21 ** (k - n1 + m)
                    * l12**m
                    * l22 ** (l - m)
                    / (
                        math.factorial(n1 - m)
                        * math.factorial(k - n1 + m)
                        * math.factorial(m)
                        * math.factorial(l - m)
                    )
                )
            coeffs[n1] += (
                pk
                * ql
                * math.factorial(k)
                * math.factorial(l)
                * math.factorial(n1)
                * math.factorial(d)
                * (amp.real * amp.real + amp.imag * amp.imag)
            )
    return ConditionalResult.from_unnormalized(coeffs, pattern=DetectionPattern((d,)))


@dataclass(frozen=True, eq=False)
class PureState:
    """Superposition over photon-number configurations.

    amplitudes maps PhotonConfig -> complex; configurations all share the
    same mode count.  States are expected to be normalized to 1e-10; the
    is_normalized flag records whether this one is.
    """

    amplitudes: dict
    is_normalized: bool

    NORM_TOL = 1e-10

    @classmethod
    def from_amplitudes(cls, amplitudes, require_normalized: bool = True) -> "PureState":
        amps = {}
        n_modes = None
        for config, a in dict(amplitudes).items():
            if not isinstance(config, PhotonConfig):
                config = PhotonConfig(tuple(config))
            if n_modes is None:
                n_modes = len(config)
            elif len(config) != n_modes:
                raise DimensionMismatch("mixed mode counts in one pure state")
            a = complex(a)
            if a != 0:
                amps[config] = a
        norm = math.sqrt(sum(abs(a) ** 2 for a in amps.values()))
        ok = abs(norm - 1.0) <= cls.NORM_TOL
        if require_normalized and not ok:
            raise ValueError(f"state norm {norm} is not 1 within {cls.NORM_TOL}")
        return cls(amplitudes=dict(amps), is_normalized=ok)

    @classmethod
    def two_level_product(cls, alpha: complex, beta: complex, n_modes: int) -> "PureState":
        """(alpha |0> + beta |1>) on every mode."""
        amps = {}
        for bits in _binary_configs(n_modes):
            amp = 1 + 0j
            for b in bits:
                amp *= beta if b else alpha
            if amp != 0:
                amps[PhotonConfig(bits)] = amp
        return cls.from_amplitudes(amps, require_normalized=False)

    @property
    def n_modes(self) -> int:
        for config in self.amplitudes:
            return len(config)
        return 0

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def amplitude(self, config) -> complex:
        if not isinstance(config, PhotonConfig):
            config = PhotonConfig(tuple(config))
        return self.amplitudes.get(config, 0j)


def _binary_configs(n_modes: int):
    for idx in range(1 << n_modes):
        yield tuple((idx >> (n_modes - 1 - k)) & 1 for k in range(n_modes))


def propagate_pure(state: PureState, interf: Interferometer) -> PureState:
    """Send a pure state through an interferometer.

    Output amplitude of configuration n from input s is
    per(L[n, s]) / sqrt(prod n_i! prod s_i!); the norm is preserved to
    ~1e-10 for the photon numbers this package targets.
    """
    n = interf.n_modes
    if state.n_modes not in (0, n):
        raise DimensionMismatch(
            f"state has {state.n_modes} modes, interferometer has {n}"
        )
    matrix = interf.matrix
    out: dict[PhotonConfig, complex] = {}
    for s, a_in in state.amplitudes.items():
        total = s.total()
        s_fact = 1.0
        for si in s:
            s_fact *= math.factorial(si)
        for counts in compositions(total, n):
            amp = permanent_with_multiplicity(matrix, counts, s.counts)
            if amp == 0:
                continue
            n_fact = 1.0
            for ni in counts:
                n_fact *= math.factorial(ni)
            config = PhotonConfig(counts)
            out[config] = out.get(config, 0j) + a_in * amp / math.sqrt(
                n_fact * s_fact
            )
    return PureState.from_amplitudes(out, require_normalized=False)


def condition_pure(
    state: PureState, pattern: DetectionPattern
) -> tuple[PureState | None, float]:
    """Project the detector modes of a pure state onto exact counts.

    Returns the renormalized state of mode 1 and the probability of the
    detection; a zero-probability pattern gives (None, 0.0).
    """
    if state.n_modes and len(pattern) != state.n_modes - 1:
        raise DimensionMismatch(
            f"pattern covers {len(pattern)} detectors, state has "
            f"{state.n_modes} modes"
        )
    kept: dict[PhotonConfig, complex] = {}
    for config, a in state.amplitudes.items():
        if tuple(config)[1:] == pattern.counts:
            kept[PhotonConfig((config[0],))] = a
    probability = sum(abs(a) ** 2 for a in kept.values())
    # below ~1e-30 the surviving amplitudes are cancellation dust (squared
    # float roundoff) and renormalizing them would manufacture a state
    if probability <= 1e-30:
        return None, 0.0
    scale = 1.0 / math.sqrt(probability)
    out = {c: a * scale for c, a in kept.items()}
    return PureState.from_amplitudes(out, require_normalized=False), float(probability)
