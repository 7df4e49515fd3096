import math

import numpy as np
import pytest

from photonpost import (
    BadDistributionShape,
    BadParameters,
    DegenerateTheta,
    DetectionPattern,
    InputSpec,
    beam_splitter,
    build_chain,
    build_chain_from_elements,
    chain_asymptotics,
    chain_element_angles,
    condition_mixed,
    pure_stage2_params,
    pure_success_probability,
    pure_three_mode_pipeline,
    purify_super_poissonian,
    run_chain,
)


# chain construction ----------------------------------------------------------


def test_chain_rows_closed_form():
    eps = 0.1
    chain = build_chain(4, eps)
    u = chain.interferometer.matrix
    a = math.sqrt(1 - eps**2)
    row_kept = np.array([-eps, a / math.sqrt(3), a / math.sqrt(3), a / math.sqrt(3)])
    row_tap = np.array([a, eps / math.sqrt(3), eps / math.sqrt(3), eps / math.sqrt(3)])
    assert np.allclose(u[0], row_kept, atol=1e-12)
    assert np.allclose(u[1], row_tap, atol=1e-12)
    assert np.allclose(u @ u.conj().T, np.eye(4), atol=1e-12)


def test_chain_matches_element_product():
    for n in range(3, 7):
        direct = build_chain(n, 0.07).interferometer.matrix
        staged = build_chain_from_elements(n, 0.07).interferometer.matrix
        # defining rows agree; the completion of the remaining rows may
        # differ by basis choice, so compare conditional outputs instead
        spec = InputSpec.two_level([0.1] * n)
        pattern = DetectionPattern((n // 2,) + (0,) * (n - 2))
        a = condition_mixed(spec, build_chain(n, 0.07).interferometer, pattern)
        b = condition_mixed(
            spec, build_chain_from_elements(n, 0.07).interferometer, pattern
        )
        assert np.allclose(a.unnormalized, b.unnormalized, atol=1e-12)
        assert np.allclose(direct[0], staged[0], atol=1e-12) or np.allclose(
            np.abs(direct[0]), np.abs(staged[0]), atol=1e-12
        )


def test_chain_element_reflectivities():
    angles = chain_element_angles(5, 0.2)
    # the cascade splits off 1/2, then 1/3, then 1/4 of the light
    splitting = [math.cos(theta) ** 2 for (_, _, theta, _) in angles[:-1]]
    assert np.allclose(splitting, [1 / 2, 1 / 3, 1 / 4], atol=1e-12)
    i, j, theta, phi = angles[-1]
    assert (i, j) == (0, 1)
    assert np.isclose(math.cos(theta), 0.2)
    assert np.isclose(phi, math.pi)


def test_pattern_for_places_taps_on_second_mode():
    chain = build_chain(5, 0.1)
    assert chain.pattern_for(3).counts == (3, 0, 0, 0)


def test_chain_rejects_bad_shapes():
    with pytest.raises(BadParameters):
        build_chain(2, 0.1)
    with pytest.raises(BadParameters):
        build_chain(4, 0.0)
    with pytest.raises(BadParameters):
        build_chain(4, 1.5)


# asymptotic figures -----------------------------------------------------------


def test_asymptotics_peak_values():
    gain, two_photon = chain_asymptotics(4, 2)
    assert np.isclose(gain, 4 / 3)
    assert np.isclose(two_photon, 3 / 8)
    gain, _ = chain_asymptotics(9, 5)
    assert np.isclose(gain, 2.5)


def test_three_modes_never_amplify():
    for d in (1, 2):
        gain, _ = chain_asymptotics(3, d)
        assert gain <= 1.0 + 1e-12


def test_asymptotics_match_weak_tap_chain():
    p = 0.01
    r_in = p / (1 - p)
    for n, d in ((4, 2), (5, 2), (6, 3)):
        res = run_chain(n, 1e-3, p, d)
        q = res.unnormalized
        gain_limit, g2_limit = chain_asymptotics(n, d)
        gain = (q[1] / q[0]) / r_in
        assert np.isclose(gain, gain_limit, rtol=0.01)
        g2 = q[2] * q[0] / q[1] ** 2 if len(q) > 2 else 0.0
        assert np.isclose(g2, g2_limit, rtol=0.02)


def test_single_photon_limit_eight_over_thirtythree():
    # N=4, D=2, p=0.2: the conditioned one-photon weight approaches 8/33
    res = run_chain(4, 1e-4, 0.2, 2)
    assert np.isclose(res.normalized[1], 8 / 33, atol=1e-4)


# pure-state scheme ------------------------------------------------------------


def test_stage2_angles_at_the_peak():
    tp, pp = pure_stage2_params(math.pi / 4, math.pi)
    assert np.isclose(tp, math.acos(1 / 3), atol=1e-12)
    assert np.isclose(pp, 0.0, atol=1e-12)


def test_stage2_degenerate_theta():
    with pytest.raises(DegenerateTheta):
        pure_stage2_params(math.pi / 2, 0.3)
    with pytest.raises(DegenerateTheta):
        pure_stage2_params(0.0, 0.3)


def test_success_probability_peak():
    assert np.isclose(
        pure_success_probability(math.pi / 4, math.pi, 1.0), 16 / 81, atol=1e-12
    )
    assert np.isclose(
        pure_success_probability(math.pi / 4, math.pi, 0.5),
        16 / 81 * 0.5**6,
        atol=1e-12,
    )


def reference_success_probability(theta: float, phi: float, beta_mag: float) -> float:
    """Rational closed form derived by eliminating the stage-two angle."""
    s = math.sin(2 * theta)
    c = math.cos(phi) * s
    num = 0.5 * s**2 * (1 - c) * (0.5 * s**2 - 1 + c) ** 2
    den = (0.25 * s**2 + 1 - c) ** 3
    return beta_mag**6 * num / den


def test_success_probability_against_rational_form():
    rng = np.random.default_rng(61)
    for _ in range(40):
        theta = rng.uniform(0.05, math.pi / 2 - 0.05)
        phi = rng.uniform(0.0, 2 * math.pi)
        got = pure_success_probability(theta, phi, 1.0)
        want = reference_success_probability(theta, phi, 1.0)
        assert np.isclose(got, want, atol=1e-10)


def test_pipeline_yields_pure_single_photon():
    rng = np.random.default_rng(62)
    for _ in range(15):
        theta = rng.uniform(0.1, math.pi / 2 - 0.1)
        phi = rng.uniform(0.0, 2 * math.pi)
        beta = rng.uniform(0.3, 1.0) * np.exp(1j * rng.uniform(0, 2 * math.pi))
        state, prob = pure_three_mode_pipeline(theta, phi, beta)
        want = pure_success_probability(theta, phi, abs(beta))
        assert np.isclose(prob, want, atol=1e-10)
        if state is None:
            assert prob < 1e-12
            continue
        fidelity = abs(state.amplitude((1,))) ** 2
        assert fidelity >= 1.0 - 1e-10


def test_pipeline_peak_probability():
    state, prob = pure_three_mode_pipeline(math.pi / 4, math.pi, 1.0)
    assert np.isclose(prob, 16 / 81, atol=1e-12)
    assert abs(state.amplitude((1,))) ** 2 >= 1.0 - 1e-12


def test_pipeline_dark_source_never_fires():
    state, prob = pure_three_mode_pipeline(math.pi / 4, math.pi, 0.0)
    assert prob == 0.0
    assert state is None


# super-Poissonian purification -------------------------------------------------


def test_purify_gapped_two_photon_mixture():
    res = purify_super_poissonian({0: 0.9, 2: 0.1}, beam_splitter(0.7, 0.2))
    assert np.isclose(res.normalized[1], 1.0, atol=1e-12)
    assert res.pattern.counts == (1,)


def test_purify_one_and_three():
    res = purify_super_poissonian({1: 0.5, 3: 0.5}, beam_splitter(1.1, 0.0))
    assert np.isclose(res.normalized[1], 1.0, atol=1e-12)
    assert res.pattern.counts == (2,)


def test_purify_probability_scales_with_top_weight():
    bs = beam_splitter(math.pi / 4, 0.0)
    lo = purify_super_poissonian({0: 0.95, 2: 0.05}, bs)
    hi = purify_super_poissonian({0: 0.5, 2: 0.5}, bs)
    assert hi.pattern_probability > lo.pattern_probability


def test_purify_rejects_bad_distributions():
    bs = beam_splitter(0.8, 0.0)
    with pytest.raises(BadDistributionShape):
        purify_super_poissonian({0: 1.0}, bs)
    with pytest.raises(BadDistributionShape):
        # the count right below the top must be empty
        purify_super_poissonian({0: 0.5, 1: 0.3, 2: 0.2}, bs)


def test_purify_needs_two_mode_element():
    from photonpost import haar_random

    with pytest.raises(BadDistributionShape):
        purify_super_poissonian({0: 0.9, 2: 0.1}, haar_random(3, seed=1))
