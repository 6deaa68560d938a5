import math

import numpy as np
import pytest

from degenpop.analytic import (amplitudes_at, amplitudes_many,
                               delta_kick_response, flat_top_quartic,
                               flatness_frequency, leakage_estimate,
                               probabilities_2state, probabilities_at,
                               probabilities_cosine_form,
                               probabilities_nstate_sym, trajectory,
                               trajectory_to_csv)
from degenpop.control import design_3state, pulse_for_design
from degenpop.coupling import standard_2state, standard_3state, symmetric_nstate
from degenpop.dressed import (decompose_2state, decompose_3state,
                              decompose_general, decompose_symmetric_nstate)
from degenpop.errors import (DegenerateSpectrum, DimensionTooSmall,
                             DomainError, FirstComponentZero, OutOfDomain)
from degenpop.pulses import HarmonicPulse

SQRT2 = math.sqrt(2.0)


def test_amplitudes_start_in_state_one():
    for basis in (decompose_2state(0.0, 0.3),
                  decompose_3state(0.2, 1.0, [0.0, 0.1, -0.1]),
                  decompose_symmetric_nstate(6, -1.0, 0.0)):
        a = amplitudes_at(basis, 0.0)
        e1 = np.zeros(basis.n, dtype=complex)
        e1[0] = 1.0
        assert np.allclose(a, e1, atol=1e-12)


def test_amplitudes_2state_quarter_turn():
    b = decompose_2state(0.0, 0.0)
    a = amplitudes_at(b, 0.5 * math.pi)
    assert np.allclose(a, [0.0, -1.0j], atol=1e-12)


def test_amplitudes_3state_complete_transfer():
    b = decompose_3state(0.0, 1.0, [0.0, 0.0, 0.0])
    a = amplitudes_at(b, math.pi / SQRT2)
    assert abs(abs(a[1]) - 1.0) < 1e-12
    assert abs(a[0]) < 1e-12
    assert abs(a[2]) < 1e-12


def test_amplitudes_many_matches_single():
    b = decompose_3state(0.4, 0.9, [0.0, 0.2, -0.1])
    actions = np.linspace(0.0, 5.0, 23)
    many = amplitudes_many(b, actions)
    for k, a in enumerate(actions):
        assert np.allclose(many[k], amplitudes_at(b, float(a)), atol=1e-13)


def test_probabilities_at_zero_action():
    b = decompose_2state(0.0, 1.0)
    assert np.allclose(probabilities_at(b, 0.0), [1.0, 0.0], atol=1e-12)


def test_probabilities_equipartition_point():
    b = decompose_3state(0.0, 1.0, [0.0, 0.0, 0.0])
    p = probabilities_at(b, math.pi / (2.0 * SQRT2))
    assert np.allclose(p, [0.25, 0.25, 0.5], atol=1e-12)


def test_probabilities_table_row_rounded_values():
    # 3-decimal design values still give transfer within 1e-6
    b = decompose_3state(-2.530, 1.0, [0.0, 0.0, 0.0])
    p = probabilities_at(b, 1.656)
    assert p[1] >= 1.0 - 1e-6


def test_probabilities_closure_check_rejects_bad_weight():
    b = decompose_symmetric_nstate(6, -1.0, 0.0)
    probabilities_at(b, 1.3, multiplicity=4)
    with pytest.raises(ArithmeticError):
        probabilities_at(b, 1.3, multiplicity=2)


def test_cosine_form_matches_squared_amplitudes():
    rng = np.random.default_rng(17)
    probes = 0
    while probes < 1000:
        alpha, beta = rng.uniform(-3, 3, 2)
        eps = rng.uniform(-1, 1, 3)
        try:
            b = decompose_3state(alpha, beta, eps)
        except (DegenerateSpectrum, FirstComponentZero):
            continue
        for action in rng.uniform(0.0, 8.0, 5):
            p = probabilities_at(b, float(action))
            for state in (1, 2, 3):
                q = probabilities_cosine_form(b, float(action), state)
                assert abs(p[state - 1] - q) <= 1e-12
            probes += 5


def test_probabilities_2state_values():
    assert np.allclose(probabilities_2state(0.0, 0.5 * math.pi), [0.0, 1.0],
                       atol=1e-12)
    assert np.allclose(probabilities_2state(0.0, 0.0), [1.0, 0.0], atol=0)
    assert np.allclose(probabilities_2state(0.0, 0.25 * math.pi), [0.5, 0.5],
                       atol=1e-12)


def test_probabilities_2state_ignores_eps():
    a = np.linspace(0.0, 3.0, 50)
    assert np.allclose(probabilities_2state(0.0, a),
                       probabilities_2state(2.5, a), atol=0)


def test_probabilities_nstate_sym_endpoints():
    assert np.allclose(probabilities_nstate_sym(3, 0.0), [1.0, 0.0, 0.0],
                       atol=1e-12)
    p = probabilities_nstate_sym(3, 2.0 * math.pi)
    assert abs(p[0]) < 1e-12
    assert abs(p[1] - 1.0) < 1e-12
    p = probabilities_nstate_sym(3, math.pi)
    assert np.allclose(p, [0.25, 0.25, 0.5], atol=1e-12)


def test_probabilities_nstate_sym_closure_identity():
    for n in (3, 4, 5, 10, 100):
        theta = np.linspace(0.0, 4.0 * math.pi, 100)
        p = probabilities_nstate_sym(n, theta)
        total = p[:, 0] + p[:, 1] + (n - 2) * p[:, 2]
        assert np.max(np.abs(total - 1.0)) <= 1e-12


def test_probabilities_nstate_sym_manifold_share_shrinks():
    theta = np.linspace(0.0, 2.0 * math.pi, 200)
    p = probabilities_nstate_sym(10 ** 4, theta)
    assert np.max((10 ** 4 - 2) * p[:, 2]) <= 0.5 + 1e-12
    p502 = probabilities_nstate_sym(502, math.pi)
    assert p502[2] <= 1e-3


def test_probabilities_nstate_sym_rejects_small_n():
    with pytest.raises(DimensionTooSmall):
        probabilities_nstate_sym(2, 1.0)


def test_trajectory_2state_peaks_at_quarter_periods():
    pulse = HarmonicPulse(chi=0.5 * math.pi, omega=1.0)
    model = standard_2state(0.0, 0.0, pulse)
    basis = decompose_general(model)
    times = np.linspace(0.0, pulse.period, 401)
    traj = trajectory(model, basis, times)
    p2 = traj.probabilities[:, 1]
    assert abs(p2[100] - 1.0) < 1e-12   # T/4
    assert abs(p2[300] - 1.0) < 1e-12   # 3T/4
    assert np.argmax(p2) in (100, 300)
    assert np.max(np.abs(traj.closure - 1.0)) <= 1e-9


def test_trajectory_empty_times():
    pulse = HarmonicPulse(chi=1.0, omega=1.0)
    model = standard_2state(0.0, 0.0, pulse)
    traj = trajectory(model, decompose_general(model), [])
    assert traj.times.size == 0
    assert traj.probabilities.shape[0] == 0


def test_trajectory_rejects_negative_times():
    pulse = HarmonicPulse(chi=1.0, omega=1.0)
    model = standard_2state(0.0, 0.0, pulse)
    with pytest.raises(OutOfDomain):
        trajectory(model, decompose_general(model), [-1.0, 0.0])


def test_trajectory_side_band_count_grows_with_alpha():
    def maxima_count(n1, n2):
        design = design_3state(n1, n2)
        pulse = pulse_for_design(design, 1.0)
        model = standard_3state(design.alpha, 1.0, np.zeros(3), pulse)
        basis = decompose_general(model)
        times = np.linspace(0.0, pulse.quarter_period, 2001)
        p1 = trajectory(model, basis, times).probabilities[:, 0]
        inner = p1[1:-1]
        return int(np.sum((inner > p1[:-2]) & (inner > p1[2:])))

    assert maxima_count(35, 1) > maxima_count(3, 3)


def test_trajectory_reduced_closure_weighted():
    pulse = HarmonicPulse(chi=2.0, omega=1.0)
    model = symmetric_nstate(8, -5.0 / 3.0, 0.0, pulse)
    basis = decompose_general(model)
    times = np.linspace(0.0, pulse.period, 300)
    traj = trajectory(model, basis, times)
    assert np.max(np.abs(traj.closure - 1.0)) <= 1e-9
    plain = np.sum(traj.probabilities, axis=1)
    assert np.max(np.abs(plain - 1.0)) > 1e-3  # unweighted sum is not conserved


def test_trajectory_csv_format():
    pulse = HarmonicPulse(chi=1.0, omega=1.0)
    model = standard_2state(0.0, 0.0, pulse)
    traj = trajectory(model, decompose_general(model), [0.0, 1.0])
    text = trajectory_to_csv(traj)
    lines = text.strip().split("\n")
    assert lines[0] == "t,P1,P2,closure"
    assert len(lines) == 3
    assert lines[1].startswith("0,1,")


def test_flat_top_quartic_values():
    assert flat_top_quartic(1.0, 0.0) == 1.0
    assert abs(flat_top_quartic(1.0, 0.1) - (1.0 - math.pi ** 2 / 16.0 * 1e-4)) < 1e-15
    assert abs(flat_top_quartic(0.5, 1.0) - (1.0 - math.pi ** 2 / 16.0 * 0.0625)) < 1e-15


def test_flat_top_error_is_sixth_order():
    def err(u):
        exact = math.sin(0.5 * math.pi * math.cos(u)) ** 2
        return abs(exact - flat_top_quartic(1.0, u))

    r1 = err(0.04) / err(0.02)
    r2 = err(0.08) / err(0.04)
    assert 48.0 <= r1 <= 80.0
    assert 48.0 <= r2 <= 80.0


def test_leakage_estimate_values():
    assert leakage_estimate(0.0, 1.0) == 0.0
    assert abs(leakage_estimate(0.01, 1.0) - 3.75563e-4) < 1e-8
    assert abs(leakage_estimate(0.1, 1.0) - 3.75563e-2) < 1e-6


def test_flatness_frequency_values():
    assert abs(flatness_frequency(1e-4, 1.0) - 0.11284) < 1e-5
    assert abs(flatness_frequency(1.0, 1.0) - 1.12838) < 1e-5
    assert abs(flatness_frequency(0.01, 2.0) - 0.5 * flatness_frequency(0.01, 1.0)) < 1e-14


def test_flatness_frequency_domain():
    for bad in (0.0, -0.1, 1.5):
        with pytest.raises(DomainError):
            flatness_frequency(bad, 1.0)
    with pytest.raises(DomainError):
        flatness_frequency(0.5, 0.0)


def test_delta_kick_response_step():
    assert np.allclose(delta_kick_response(0.5, 1.0), [1.0, 0.0], atol=0)
    assert np.allclose(delta_kick_response(1.0, 1.0), [0.0, 1.0], atol=0)
    assert np.allclose(delta_kick_response(1.5, 1.0), [0.0, 1.0], atol=0)
    arr = delta_kick_response(np.array([0.0, 0.999, 1.0, 2.0]), 1.0)
    assert np.array_equal(arr[:, 1], [0.0, 0.0, 1.0, 1.0])
