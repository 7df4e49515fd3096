"""Imperfect photodetection as classical post-processing.

A detector is a stochastic response matrix P(reported | true).  Reported
outcomes are either exact counts or the bucket ">=2" for detectors that
saturate.  Observing a pattern of reported outcomes mixes the exact
conditional results over every true pattern the detectors could have
seen, weighted by the product of per-detector response probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .conditioner import ConditionalResult, DetectionPattern, condition_mixed
from .errors import DimensionMismatch, NotNormalized
from .fock import InputSpec
from .interferometer import Interferometer

BUCKET = ">=2"

ROW_SUM_TOL = 1e-12


def _outcome_key(outcome) -> str:
    return outcome if isinstance(outcome, str) else str(int(outcome))


@dataclass(frozen=True, eq=False)
class DetectorModel:
    """Stochastic map from true photon count to reported outcome.

    response[t, k] = P(outcomes[k] | t photons arrived), defined for
    t = 0..cap; every row sums to one within 1e-12.
    """

    outcomes: tuple
    response: np.ndarray

    def __post_init__(self):
        outcomes = tuple(
            o if isinstance(o, str) else int(o) for o in self.outcomes
        )
        resp = np.array(self.response, dtype=float)
        if resp.ndim != 2 or resp.shape[1] != len(outcomes):
            raise DimensionMismatch(
                f"response shape {resp.shape} does not match {len(outcomes)} outcomes"
            )
        if np.any(resp < 0):
            raise NotNormalized("response probabilities must be non-negative")
        sums = resp.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > ROW_SUM_TOL):
            raise NotNormalized(
                f"response rows must sum to one within {ROW_SUM_TOL}"
            )
        resp.setflags(write=False)
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "response", resp)

    @property
    def cap(self) -> int:
        return self.response.shape[0] - 1

    def report_probability(self, reported, true_count: int) -> float:
        if true_count < 0 or true_count > self.cap:
            raise DimensionMismatch(
                f"true count {true_count} outside the modeled range 0..{self.cap}"
            )
        for k, o in enumerate(self.outcomes):
            if o == reported:
                return float(self.response[true_count, k])
        return 0.0

    def true_support(self, reported) -> list[tuple[int, float]]:
        """(true_count, probability) pairs that can produce the report."""
        for k, o in enumerate(self.outcomes):
            if o == reported:
                col = self.response[:, k]
                return [(t, float(p)) for t, p in enumerate(col) if p > 0.0]
        return []

    @classmethod
    def exact(cls, cap: int) -> "DetectorModel":
        """Perfect number-resolving detector for counts 0..cap."""
        return cls(tuple(range(cap + 1)), np.eye(cap + 1))

    @classmethod
    def vacuum_inefficient(
        cls, cap: int, miss: Sequence[float] = (0.10, 0.01, 0.001)
    ) -> "DetectorModel":
        """Counts reported truthfully except small counts can read as vacuum.

        miss[k] is the probability that k+1 photons register as none.
        """
        resp = np.eye(cap + 1)
        for k, m in enumerate(miss):
            t = k + 1
            if t > cap:
                break
            resp[t, t] = 1.0 - m
            resp[t, 0] = m
        return cls(tuple(range(cap + 1)), resp)

    @classmethod
    def bucket(
        cls, cap: int, dark_one: float = 0.0, dark_zero: float = 0.0
    ) -> "DetectorModel":
        """Detector that cannot resolve beyond "two or more".

        Outcomes are 0, 1 and the bucket; two or more photons always land
        in the bucket, while dark_one and dark_zero let one photon or
        vacuum be misread as the bucket.
        """
        outcomes = (0, 1, BUCKET)
        resp = np.zeros((cap + 1, 3))
        resp[0] = (1.0 - dark_zero, 0.0, dark_zero)
        if cap >= 1:
            resp[1] = (0.0, 1.0 - dark_one, dark_one)
        for t in range(2, cap + 1):
            resp[t] = (0.0, 0.0, 1.0)
        return cls(outcomes, resp)

    def to_json_dict(self) -> dict:
        return {
            "outcomes": list(self.outcomes),
            "response": [[float(x) for x in row] for row in self.response],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "DetectorModel":
        return cls(tuple(data["outcomes"]), np.array(data["response"], dtype=float))


def benchmark_detector_suite(cap: int = 8) -> tuple[DetectorModel, DetectorModel]:
    """The benchmark detector pair used throughout the sweeps.

    Returns (vacuum_detector, tap_detector): the vacuum detectors miss
    1, 2, 3 photons with probabilities 10%, 1%, 0.1%; the tap detector
    buckets everything at two or more and dark-counts one photon into the
    bucket at 0.1% and vacuum at 0.0001%.
    """
    vacuum = DetectorModel.vacuum_inefficient(cap)
    tap = DetectorModel.bucket(cap, dark_one=1e-3, dark_zero=1e-6)
    return vacuum, tap


@dataclass(frozen=True)
class ObservedPattern:
    """Reported outcome per detector (ints or the ">=2" bucket)."""

    outcomes: tuple

    def __post_init__(self):
        outs = tuple(
            o if isinstance(o, str) else int(o) for o in self.outcomes
        )
        for o in outs:
            if isinstance(o, str) and o != BUCKET:
                raise ValueError(f"unknown reported outcome {o!r}")
            if isinstance(o, int) and o < 0:
                raise ValueError(f"negative reported count {o}")
        object.__setattr__(self, "outcomes", outs)

    def __len__(self) -> int:
        return len(self.outcomes)

    def __iter__(self):
        return iter(self.outcomes)


def observe(
    spec: InputSpec,
    interf: Interferometer,
    observed: ObservedPattern,
    models: Sequence[DetectorModel],
) -> ConditionalResult:
    """Conditional output given reported (possibly misread) outcomes.

    Mixes the unnormalized exact-pattern results over all true patterns
    with a nonzero response factor; the summed weights then give the
    probability of the reported pattern, so completeness over all
    reports is inherited from the response rows being stochastic.
    """
    n = interf.n_modes
    if len(observed) != n - 1 or len(models) != n - 1:
        raise DimensionMismatch(
            f"need {n - 1} reported outcomes and detector models, got "
            f"{len(observed)} and {len(models)}"
        )
    max_total = spec.max_total()
    supports = []
    for obs, model in zip(observed, models):
        sup = [(t, p) for t, p in model.true_support(obs) if t <= max_total]
        if not sup:
            return ConditionalResult.from_unnormalized([0.0], pattern=observed)
        supports.append(sup)

    results: list[tuple[float, ConditionalResult]] = []
    min_detected = None

    def rec(idx: int, counts: list[int], factor: float, remaining: int):
        nonlocal min_detected
        if idx == len(supports):
            pattern = DetectionPattern(tuple(counts))
            res = condition_mixed(spec, interf, pattern)
            results.append((factor, res))
            d = pattern.total()
            if min_detected is None or d < min_detected:
                min_detected = d
            return
        for t, p in supports[idx]:
            if t > remaining:
                continue
            counts.append(t)
            rec(idx + 1, counts, factor * p, remaining - t)
            counts.pop()

    rec(0, [], 1.0, max_total)
    if min_detected is None:
        return ConditionalResult.from_unnormalized([0.0], pattern=observed)
    cap = max_total - min_detected
    mixed = np.zeros(cap + 1)
    for factor, res in results:
        arr = res.unnormalized
        mixed[: arr.size] += factor * arr
    return ConditionalResult.from_unnormalized(mixed, pattern=observed)
