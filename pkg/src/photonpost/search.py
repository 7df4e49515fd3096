"""Randomized searches for improvement and no-go verification.

Candidates are sampled Haar-randomly and scored over every detection
pattern; local refinement then climbs in a beam-splitter-angle
parameterization of the unitary group (a product of two-mode couplers,
unitary by construction, so no factorization of sampled matrices is ever
needed).  A negative verdict always means "no counterexample found at
this budget", nothing stronger.  Every evaluation also checks the ratio
bound, so the search doubles as a correctness tripwire.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from .conditioner import ConditionalResult, DetectionPattern, condition_mixed
from .errors import BadParameters
from .fock import InputSpec, compositions
from .interferometer import Interferometer, beam_splitter, compose, embed_two_mode, haar_random
from .schemes import chain_element_angles

BOUND_SLACK = 1e-9
IMPROVEMENT_SLACK = 1e-9

OBJECTIVES = ("single_photon", "ratio", "single_photon_no_pairs")


@dataclass(frozen=True)
class SearchTask:
    """A search or verification job; seeds make it reproducible."""

    n_modes: int
    p_max: float
    objective: str = "single_photon"
    trials: int = 1000
    refine_iters: int = 200
    seed: int = 0
    include_chain_seed: bool = True
    chain_epsilon: float = 1e-3

    def __post_init__(self):
        if self.n_modes < 2:
            raise BadParameters("searches need at least two modes")
        if not (0.0 < self.p_max < 1.0):
            raise BadParameters(f"p_max must sit inside (0, 1), got {self.p_max}")
        if self.objective not in OBJECTIVES:
            raise BadParameters(
                f"objective {self.objective!r} not one of {OBJECTIVES}"
            )


@dataclass
class SearchReport:
    """Outcome of a search, self-contained enough to reproduce."""

    kind: str
    n_modes: int
    p_max: float
    objective: str
    seed: int
    trials: int
    refine_iters: int
    trials_run: int
    best_value: float
    best_pattern: tuple[int, ...]
    best_interferometer: Interferometer | None
    verdict: str
    bound_violations: int

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n_modes": self.n_modes,
            "p_max": self.p_max,
            "objective": self.objective,
            "seed": self.seed,
            "budget": {"trials": self.trials, "refine_iters": self.refine_iters},
            "trials_run": self.trials_run,
            "best_value": self.best_value,
            "best_pattern": list(self.best_pattern),
            "best_interferometer": (
                None
                if self.best_interferometer is None
                else self.best_interferometer.to_json_dict()
            ),
            "verdict": self.verdict,
            "bound_violations": self.bound_violations,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SearchReport":
        interf = data.get("best_interferometer")
        return cls(
            kind=data["kind"],
            n_modes=int(data["n_modes"]),
            p_max=float(data["p_max"]),
            objective=data["objective"],
            seed=int(data["seed"]),
            trials=int(data["budget"]["trials"]),
            refine_iters=int(data["budget"]["refine_iters"]),
            trials_run=int(data["trials_run"]),
            best_value=float(data["best_value"]),
            best_pattern=tuple(int(x) for x in data["best_pattern"]),
            best_interferometer=(
                None if interf is None else Interferometer.from_json_dict(interf)
            ),
            verdict=data["verdict"],
            bound_violations=int(data["bound_violations"]),
        )


def detector_patterns(n_modes: int, max_detected: int) -> list[DetectionPattern]:
    """Every detection pattern with at most max_detected photons."""
    pats = []
    for d in range(max_detected + 1):
        for counts in compositions(d, n_modes - 1):
            pats.append(DetectionPattern(counts))
    return pats


def _objective_value(result: ConditionalResult, objective: str) -> float:
    if result.zero_probability:
        return 0.0
    q = result.normalized
    q0 = float(q[0])
    q1 = float(q[1]) if q.size > 1 else 0.0
    if objective == "single_photon":
        return q1
    if objective == "ratio":
        if q0 <= 0.0:
            return math.inf if q1 > 0 else 0.0
        return q1 / q0
    q2 = float(q[2]) if q.size > 2 else 0.0
    return q1 if q2 <= 1e-9 else 0.0


def _check_bound(result: ConditionalResult, spec: InputSpec) -> bool:
    """True when the ratio bound holds (always expected)."""
    if not spec.is_two_level() or result.zero_probability:
        return True
    q = result.unnormalized
    q0 = float(q[0])
    q1 = float(q[1]) if q.size > 1 else 0.0
    detected = result.detected_total()
    if detected is None:
        return True
    p = spec.p_max()
    ratio_in = p / (1.0 - p)
    allowed = ratio_in * (spec.occupied_modes() - detected) + BOUND_SLACK
    if q0 <= 0.0:
        return q1 <= 1e-12
    return q1 / q0 <= allowed


def evaluate_candidate(
    interf: Interferometer,
    spec: InputSpec,
    objective: str,
    patterns: Sequence[DetectionPattern],
) -> tuple[float, tuple[int, ...], int]:
    """Best objective value over the given patterns, plus bound violations."""
    best = -math.inf
    best_pattern: tuple[int, ...] = ()
    violations = 0
    for pattern in patterns:
        result = condition_mixed(spec, interf, pattern)
        if not _check_bound(result, spec):
            violations += 1
        value = _objective_value(result, objective)
        if value > best:
            best = value
            best_pattern = pattern.counts
    return best, best_pattern, violations


def evaluate_single(
    interf: Interferometer, spec: InputSpec, objective: str, pattern: DetectionPattern
) -> float:
    """Objective value of one (interferometer, pattern) pair."""
    return _objective_value(condition_mixed(spec, interf, pattern), objective)


def reevaluate(report: SearchReport) -> float:
    """Recompute the reported best value from the stored record."""
    if report.best_interferometer is None:
        raise BadParameters("report carries no interferometer to re-evaluate")
    spec = InputSpec.two_level([report.p_max] * report.n_modes)
    return evaluate_single(
        report.best_interferometer,
        spec,
        report.objective,
        DetectionPattern(report.best_pattern),
    )


# ---------------------------------------------------------------------------
# angle parameterization


def pair_order(n_modes: int) -> list[tuple[int, int]]:
    """Coupler pair ordering; the chain layout occupies the first slots."""
    line = [(n_modes - 1 - k, n_modes - k) for k in range(1, n_modes - 1)]
    line.append((0, 1))
    rest = sorted(p for p in itertools.combinations(range(n_modes), 2) if p not in line)
    return line + rest


def unitary_from_angles(n_modes: int, angles: Sequence[float]) -> Interferometer:
    """Compose a unitary from (theta, phi) pairs along pair_order."""
    pairs = pair_order(n_modes)
    if len(angles) != 2 * len(pairs):
        raise BadParameters(
            f"expected {2 * len(pairs)} angles for {n_modes} modes, got {len(angles)}"
        )
    elements = []
    for k, (i, j) in enumerate(pairs):
        theta, phi = angles[2 * k], angles[2 * k + 1]
        elements.append(embed_two_mode(beam_splitter(theta, phi), (i, j), n_modes))
    return compose(*elements)


def chain_seed_angles(n_modes: int, epsilon: float) -> np.ndarray:
    """Angle vector reproducing the chain (up to input phases, which are
    irrelevant for diagonal inputs)."""
    pairs = pair_order(n_modes)
    x = np.zeros(2 * len(pairs))
    for k, (i, j, theta, phi) in enumerate(chain_element_angles(n_modes, epsilon)):
        assert pairs[k] == (i, j)
        x[2 * k] = theta
        x[2 * k + 1] = phi
    return x


def _trial_seeds(seed: int, count: int) -> list[int]:
    state = np.random.SeedSequence(seed).generate_state(count, dtype=np.uint64)
    return [int(s) for s in state]


# ---------------------------------------------------------------------------
# searches


def search_improvement(task: SearchTask) -> SearchReport:
    """Look for interferometers beating the source's single-photon odds.

    Haar-random restarts score every pattern; the best angle-space starts
    (the chain layout when requested, plus seeded random angles) are then
    polished with Nelder-Mead.  The verdict flags improvement when the
    best value clears the input benchmark by more than 1e-9.
    """
    n = task.n_modes
    spec = InputSpec.two_level([task.p_max] * n)
    patterns = detector_patterns(n, n - 1)
    evals = 0
    violations = 0
    best_value = -math.inf
    best_pattern: tuple[int, ...] = ()
    best_interf: Interferometer | None = None

    def consider(interf: Interferometer):
        nonlocal best_value, best_pattern, best_interf, evals, violations
        value, pattern, bad = evaluate_candidate(interf, spec, task.objective, patterns)
        evals += 1
        violations += bad
        if value > best_value:
            best_value = value
            best_pattern = pattern
            best_interf = interf

    for trial_seed in _trial_seeds(task.seed, task.trials):
        consider(haar_random(n, trial_seed))

    starts: list[np.ndarray] = []
    if task.include_chain_seed and n >= 3:
        starts.append(chain_seed_angles(n, task.chain_epsilon))
    rng = np.random.default_rng(np.random.SeedSequence((task.seed, 0x5EED)))
    n_angles = n * (n - 1)
    starts.append(rng.uniform(0.0, math.pi, size=n_angles))
    if task.refine_iters > 0:
        for x0 in starts:
            def negated(x: np.ndarray) -> float:
                nonlocal evals, violations
                interf = unitary_from_angles(n, x)
                value, _, bad = evaluate_candidate(
                    interf, spec, task.objective, patterns
                )
                evals += 1
                violations += bad
                return -value

            res = optimize.minimize(
                negated,
                x0,
                method="Nelder-Mead",
                options={
                    "maxiter": task.refine_iters,
                    "xatol": 1e-10,
                    "fatol": 1e-12,
                },
            )
            interf = unitary_from_angles(n, res.x)
            consider(interf)

    benchmark = (
        task.p_max
        if task.objective in ("single_photon", "single_photon_no_pairs")
        else task.p_max / (1.0 - task.p_max)
    )
    improved = best_value > benchmark + IMPROVEMENT_SLACK
    return SearchReport(
        kind="search",
        n_modes=n,
        p_max=task.p_max,
        objective=task.objective,
        seed=task.seed,
        trials=task.trials,
        refine_iters=task.refine_iters,
        trials_run=evals,
        best_value=float(best_value),
        best_pattern=best_pattern,
        best_interferometer=best_interf,
        verdict="improvement found" if improved else "none found",
        bound_violations=violations,
    )


def verify_nogo_small(
    n_modes: int,
    p_max: float,
    trials: int,
    seed: int,
    refine_iters: int = 80,
) -> SearchReport:
    """Hunt for single-photon improvement where theory forbids it.

    Meant for 2 and 3 modes: Haar-random trials scan every pattern, then
    a coordinate-wise compass search refines from seeded angle starts.
    """
    if n_modes not in (2, 3):
        raise BadParameters(
            f"exhaustive verification is limited to 2 or 3 modes, got {n_modes}"
        )
    task = SearchTask(
        n_modes=n_modes,
        p_max=p_max,
        objective="single_photon",
        trials=trials,
        refine_iters=refine_iters,
        seed=seed,
        include_chain_seed=False,
    )
    n = task.n_modes
    spec = InputSpec.two_level([task.p_max] * n)
    patterns = detector_patterns(n, n)
    evals = 0
    violations = 0
    best_value = -math.inf
    best_pattern: tuple[int, ...] = ()
    best_interf: Interferometer | None = None

    def score(interf: Interferometer) -> float:
        nonlocal best_value, best_pattern, best_interf, evals, violations
        value, pattern, bad = evaluate_candidate(interf, spec, task.objective, patterns)
        evals += 1
        violations += bad
        if value > best_value:
            best_value = value
            best_pattern = pattern
            best_interf = interf
        return value

    for trial_seed in _trial_seeds(seed, trials):
        score(haar_random(n, trial_seed))

    if refine_iters > 0:
        n_angles = n * (n - 1)
        rng = np.random.default_rng(np.random.SeedSequence((seed, 0xC0FFEE)))
        for _ in range(3):
            x = rng.uniform(0.0, math.pi, size=n_angles)
            step = 0.4
            current = score(unitary_from_angles(n, x))
            remaining = refine_iters
            while remaining > 0 and step > 1e-4:
                improved = False
                for i in range(n_angles):
                    for delta in (step, -step):
                        y = x.copy()
                        y[i] += delta
                        value = score(unitary_from_angles(n, y))
                        remaining -= 1
                        if value > current:
                            current = value
                            x = y
                            improved = True
                            break
                    if remaining <= 0:
                        break
                if not improved:
                    step *= 0.5
        # best_* already tracks every scored point

    found = best_value > p_max + IMPROVEMENT_SLACK
    return SearchReport(
        kind="nogo-small",
        n_modes=n,
        p_max=p_max,
        objective="single_photon",
        seed=seed,
        trials=trials,
        refine_iters=refine_iters,
        trials_run=evals,
        best_value=float(best_value),
        best_pattern=best_pattern,
        best_interferometer=best_interf,
        verdict="counterexample found" if found else "none found",
        bound_violations=violations,
    )


def verify_nogo_patterns(
    n_modes: int, p_max: float, trials: int, seed: int
) -> SearchReport:
    """Check the one-mode-left and single-click no-go statements.

    Per trial: a Haar-random interferometer faces (a) a random two-level
    source, patterns detecting one photon fewer than the occupied modes,
    and (b) a uniform source with every single-click pattern and the
    empty pattern.  The output ratio must never beat the input ratio.
    """
    n = n_modes
    evals = 0
    violations = 0
    worst_excess = -math.inf
    best_pattern: tuple[int, ...] = ()
    best_interf: Interferometer | None = None
    ratio_in = p_max / (1.0 - p_max)

    def ratio_of(result: ConditionalResult) -> float:
        q = result.unnormalized
        if result.zero_probability or float(q[0]) <= 0.0:
            return 0.0
        return (float(q[1]) if q.size > 1 else 0.0) / float(q[0])

    seeds = _trial_seeds(seed, trials)
    rng = np.random.default_rng(np.random.SeedSequence((seed, 0xA11CE)))
    uniform_spec = InputSpec.two_level([p_max] * n)
    single_clicks = [
        DetectionPattern(tuple(1 if j == i else 0 for j in range(n - 1)))
        for i in range(n - 1)
    ] + [DetectionPattern((0,) * (n - 1))]

    for trial_seed in seeds:
        interf = haar_random(n, trial_seed)

        occupied = int(rng.integers(2, n + 1))
        modes = rng.permutation(n)[:occupied]
        ps = np.zeros(n)
        ps[modes] = rng.uniform(0.1 * p_max, p_max, size=occupied)
        ps[modes[0]] = p_max
        random_spec = InputSpec.two_level(ps.tolist())
        for counts in compositions(occupied - 1, n - 1):
            pattern = DetectionPattern(counts)
            result = condition_mixed(random_spec, interf, pattern)
            evals += 1
            if not _check_bound(result, random_spec):
                violations += 1
            excess = ratio_of(result) - ratio_in
            if excess > worst_excess:
                worst_excess = excess
                best_pattern = pattern.counts
                best_interf = interf

        for pattern in single_clicks:
            result = condition_mixed(uniform_spec, interf, pattern)
            evals += 1
            if not _check_bound(result, uniform_spec):
                violations += 1
            excess = ratio_of(result) - ratio_in
            if excess > worst_excess:
                worst_excess = excess
                best_pattern = pattern.counts
                best_interf = interf

    found = worst_excess > IMPROVEMENT_SLACK
    return SearchReport(
        kind="nogo-patterns",
        n_modes=n,
        p_max=p_max,
        objective="ratio",
        seed=seed,
        trials=trials,
        refine_iters=0,
        trials_run=evals,
        best_value=float(ratio_in + worst_excess),
        best_pattern=best_pattern,
        best_interferometer=best_interf,
        verdict="counterexample found" if found else "none found",
        bound_violations=violations,
    )
