"""Photon-number configurations and per-mode input distributions.

A source is described mode by mode: each mode carries a diagonal
photon-number distribution (no coherences between number states).  The
two-level case, vacuum with probability 1-p and one photon with
probability p, is the common one; small multiphoton admixtures are
supported through explicit per-mode distributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import NotNormalized

# Per-mode probabilities must sum to one this tightly at construction.
PROB_SUM_TOL = 1e-12


@dataclass(frozen=True)
class PhotonConfig:
    """Occupation-number vector; counts[i] photons sit in mode i."""

    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if len(counts) < 1:
            raise ValueError("a photon configuration needs at least one mode")
        if any(c < 0 for c in counts):
            raise ValueError(f"negative photon count in {counts}")
        object.__setattr__(self, "counts", counts)

    def total(self) -> int:
        return sum(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, i):
        return self.counts[i]


def _as_distribution(entry) -> tuple[tuple[int, float], ...]:
    """Normalize one mode's distribution to sorted (count, prob) pairs.

    Accepts a mapping {count: prob} or an iterable of (count, prob) pairs.
    Zero-probability entries are dropped; they carry no support.
    """
    if isinstance(entry, Mapping):
        pairs = list(entry.items())
    else:
        pairs = [(int(n), float(q)) for n, q in entry]
    seen = {}
    for n, q in pairs:
        n = int(n)
        q = float(q)
        if n < 0:
            raise ValueError(f"negative photon count {n} in distribution")
        if q < 0 or q > 1 + PROB_SUM_TOL:
            raise NotNormalized(f"probability {q} outside [0, 1]")
        if n in seen:
            raise ValueError(f"duplicate photon count {n} in distribution")
        seen[n] = q
    total = sum(seen.values())
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise NotNormalized(f"mode probabilities sum to {total}, expected 1")
    return tuple(sorted((n, q) for n, q in seen.items() if q > 0.0))


@dataclass(frozen=True)
class InputSpec:
    """Per-mode photon-number distributions for a multimode source.

    distributions[i] is a sorted tuple of (count, probability) pairs with
    positive probabilities summing to one.
    """

    distributions: tuple[tuple[tuple[int, float], ...], ...]

    def __post_init__(self):
        dists = tuple(_as_distribution(d) for d in self.distributions)
        if len(dists) < 1:
            raise ValueError("an input needs at least one mode")
        object.__setattr__(self, "distributions", dists)

    @classmethod
    def two_level(cls, ps: Sequence[float]) -> "InputSpec":
        """Vacuum/one-photon sources with P(1 photon) = ps[i] per mode."""
        dists = []
        for p in ps:
            p = float(p)
            if p < 0 or p > 1:
                raise NotNormalized(f"single-photon probability {p} outside [0, 1]")
            dists.append(((0, 1.0 - p), (1, p)))
        return cls(tuple(dists))

    @property
    def n_modes(self) -> int:
        return len(self.distributions)

    def support(self, mode: int) -> tuple[int, ...]:
        return tuple(n for n, _ in self.distributions[mode])

    def prob(self, mode: int, count: int) -> float:
        for n, q in self.distributions[mode]:
            if n == count:
                return q
        return 0.0

    def p_max(self) -> float:
        """Largest single-photon probability over the modes."""
        return max(self.prob(i, 1) for i in range(self.n_modes))

    def occupied_modes(self) -> int:
        """Number of modes whose distribution is not a point mass at vacuum."""
        count = 0
        for dist in self.distributions:
            if len(dist) != 1 or dist[0][0] != 0:
                count += 1
        return count

    def max_total(self) -> int:
        """Largest photon total the source can emit."""
        return sum(dist[-1][0] for dist in self.distributions)

    def is_two_level(self) -> bool:
        return all(n in (0, 1) for dist in self.distributions for n, _ in dist)

    def weight(self, config: Sequence[int]) -> float:
        """Probability of emitting exactly the given configuration."""
        counts = tuple(config)
        if len(counts) != self.n_modes:
            raise ValueError("configuration length does not match mode count")
        w = 1.0
        for i, c in enumerate(counts):
            w *= self.prob(i, c)
            if w == 0.0:
                return 0.0
        return w


def enumerate_inputs(
    spec: InputSpec, total_photons: int
) -> Iterator[tuple[PhotonConfig, float]]:
    """Yield (config, weight) for every way the source emits total_photons.

    Weights are the emission probability divided by the product of the
    per-mode factorials, the combination that multiplies squared
    permanents in the conditional-output formula.  Two-level sources have
    unit factorials, so there the weight is just the plain probability.
    Configurations appear in ascending lexicographic order.
    """
    n = spec.n_modes
    supports = [spec.support(i) for i in range(n)]
    caps = [s[-1] if s else 0 for s in supports]
    # suffix_caps[i] = most photons modes i..n-1 can still absorb
    suffix_caps = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_caps[i] = suffix_caps[i + 1] + caps[i]

    prefix = [0] * n

    def rec(i: int, remaining: int, weight: float):
        if i == n:
            if remaining == 0:
                yield PhotonConfig(tuple(prefix)), weight
            return
        if remaining > suffix_caps[i]:
            return
        for c in supports[i]:
            if c > remaining:
                break
            q = spec.prob(i, c)
            prefix[i] = c
            yield from rec(i + 1, remaining - c, weight * q / math.factorial(c))
        prefix[i] = 0

    if total_photons < 0:
        return
    yield from rec(0, total_photons, 1.0)


def compositions(total: int, n_modes: int) -> Iterator[tuple[int, ...]]:
    """All ways to place `total` photons into `n_modes` modes, lexicographic."""
    if n_modes < 1:
        return
    if n_modes == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, n_modes - 1):
            yield (first,) + rest


def distribution_moments(coeffs: Iterable[tuple[int, float]]) -> tuple[float, float]:
    """Mean and variance of a photon-number distribution.

    coeffs holds (count, probability) pairs; probabilities must sum to one
    within 1e-9 or NotNormalized is raised.
    """
    pairs = [(int(n), float(q)) for n, q in coeffs]
    total = sum(q for _, q in pairs)
    if abs(total - 1.0) > 1e-9:
        raise NotNormalized(f"distribution sums to {total}, expected 1")
    mean = sum(n * q for n, q in pairs)
    second = sum(n * n * q for n, q in pairs)
    return mean, second - mean * mean
