import numpy as np
import pytest

from dicecontrol import golden
from dicecontrol.lrtest import (
    log_likelihood,
    lr_power_table,
    lr_statistics,
    lr_test,
    lr_threshold,
    mle_theta,
    simulate_lr_power,
)
from dicecontrol.simulation import HandSample, RngStream, simulate_hands

EXAMPLE = HandSample.from_run_length(golden.WORKED_EXAMPLE["counts"])


def test_worked_example_sample_shape():
    assert EXAMPLE.n == 500 and EXAMPLE.max_length == 43


def test_worked_example():
    out = lr_test("ss", EXAMPLE)
    assert out.theta_hat == pytest.approx(0.231991, abs=1e-3)
    assert out.statistic == pytest.approx(2.12142, abs=1e-3)
    assert not out.reject
    assert out.log_lik_hat >= out.log_lik_null


def test_worked_example_scaled_likelihoods():
    log_scale = EXAMPLE.n * np.log(golden.WORKED_EXAMPLE["scale"])
    ll_hat = log_likelihood("ss", EXAMPLE, golden.WORKED_EXAMPLE["theta_hat"])
    ll_null = log_likelihood("ss", EXAMPLE, 0.0)
    assert np.exp(ll_hat + log_scale) == pytest.approx(golden.WORKED_EXAMPLE["scaled_lik_hat"], rel=1e-4)
    assert np.exp(ll_null + log_scale) == pytest.approx(golden.WORKED_EXAMPLE["scaled_lik_null"], rel=1e-4)


def test_threshold():
    assert lr_threshold(0.05) == pytest.approx(3.8415, abs=1e-4)


def test_statistic_ignores_order():
    lengths = simulate_hands("ws", 0.15, 300, RngStream(3))
    shuffled = np.random.default_rng(1).permutation(lengths)
    a, b = lr_test("ws", lengths), lr_test("ws", shuffled)
    assert a.statistic == b.statistic and a.theta_hat == b.theta_hat


def test_adding_an_observation_lowers_loglik(model):
    lengths = list(simulate_hands(model, 0.3, 50, RngStream(8)))
    for t in (0.0, 0.4, 0.9):
        assert log_likelihood(model, lengths + [7], t) < log_likelihood(model, lengths, t)


def test_boundary_mle_gives_zero_statistic(model):
    out = lr_test(model, [2] * 40)
    assert out.theta_hat == 0.0 and out.statistic == 0.0 and not out.reject


def test_empty_sample_rejected():
    with pytest.raises(ValueError):
        mle_theta("ss", HandSample({}))


def test_mle_is_a_maximum(model):
    lengths = simulate_hands(model, 0.5, 500, RngStream(21))
    t = mle_theta(model, lengths)
    best = log_likelihood(model, lengths, t)
    for probe in np.linspace(0, 1, 41):
        assert log_likelihood(model, lengths, probe) <= best + 1e-9


def test_batched_statistics_match_single_samples(model):
    samples = [simulate_hands(model, 0.2, 500, RngStream(4, r)) for r in range(12)]
    width = max(int(s.max()) for s in samples) - 1
    counts = np.array([np.bincount(s - 2, minlength=width) for s in samples])
    thetas, stats = lr_statistics(model, counts)
    for s, t, stat in zip(samples, thetas, stats):
        out = lr_test(model, s)
        assert stat == pytest.approx(out.statistic, abs=1e-6)
        assert t == pytest.approx(out.theta_hat, abs=1e-4)


def test_power_simulation_is_deterministic_and_worker_free():
    serial = simulate_lr_power("ss", 0.2, n=100, reps=600, seed=3, workers=1)
    again = simulate_lr_power("ss", 0.2, n=100, reps=600, seed=3, workers=1)
    parallel = simulate_lr_power("ss", 0.2, n=100, reps=600, seed=3, workers=2)
    assert serial == again == parallel
    assert serial.std_err == pytest.approx(np.sqrt(serial.power * (1 - serial.power) / 600))


def test_power_table_rows():
    rows = lr_power_table("ws", reps=250, gains=(0.05,))
    assert rows[0].theta == pytest.approx(0.139835, abs=1e-5)
    assert rows[0].lbar_power == pytest.approx(0.7987, abs=5e-5)
    assert 0 <= rows[0].lr.power <= 1


def test_power_argument_checks():
    with pytest.raises(ValueError):
        simulate_lr_power("ss", 0.1, reps=0)
