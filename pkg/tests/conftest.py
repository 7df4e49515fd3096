"""Suite-wide tripwire: the output/input ratio bound must hold everywhere.

For a two-level input with uniform best probability p and M occupied
modes, detecting D photons can raise the one-to-zero photon ratio by at
most a factor (M - D), and not at all when D = 0 or D = M - 1.  The
fixture below wraps condition_mixed in every module that calls it, so a
violation fails the specific test that produced it, wherever it ran.
"""

import pytest

import photonpost
from photonpost import cli, conditioner, detectors, schemes, search
from photonpost.conditioner import DetectionPattern

BOUND_SLACK = 1e-9

_original = conditioner.condition_mixed


def _checked_condition_mixed(spec, interf, pattern, *args, **kwargs):
    result = _original(spec, interf, pattern, *args, **kwargs)
    if (
        isinstance(pattern, DetectionPattern)
        and spec.is_two_level()
        and not result.zero_probability
    ):
        p = spec.p_max()
        if 0.0 < p < 1.0:
            ratio_in = p / (1.0 - p)
            m = spec.occupied_modes()
            d = pattern.total()
            q = result.unnormalized
            q0 = float(q[0])
            q1 = float(q[1]) if q.size > 1 else 0.0
            if q0 > 0.0:
                ratio_out = q1 / q0
                assert ratio_out <= ratio_in * (m - d) + BOUND_SLACK, (
                    f"ratio bound violated: {ratio_out} > {ratio_in} * ({m} - {d})"
                )
                if d == 0 or d == m - 1:
                    assert ratio_out <= ratio_in + BOUND_SLACK, (
                        f"strict ratio bound violated at D={d}, M={m}: "
                        f"{ratio_out} > {ratio_in}"
                    )
    return result


@pytest.fixture(autouse=True, scope="session")
def ratio_bound_tripwire():
    holders = [conditioner, schemes, detectors, search, cli, photonpost]
    for mod in holders:
        mod.condition_mixed = _checked_condition_mixed
    yield
    for mod in holders:
        mod.condition_mixed = _original
