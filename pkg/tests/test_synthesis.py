import numpy as np
import pytest

from twomedia import inversion, optics, sky, synthesis
from twomedia.errors import ValidationError
from twomedia.synthesis import NoiseModel


def test_zero_wind_zero_noise_gives_zeros(paper, site, half_hourly):
    s = synthesis.synthesize_series(sky.WindVector(0.0, 0.0, 0.0), site, paper, half_hourly)
    assert np.all(s.a_m == 0.0)
    assert len(s) == 48


def test_paper_series_extremes(paper, site, paper_wind, start):
    epochs = sky.schedule(start, sky.SIDEREAL_DAY, 10.0)
    s = synthesis.synthesize_series(paper_wind, site, paper, epochs)
    # the +/-1 km/s tolerance on the velocity extremes is +/-0.0034 in A_m
    assert s.a_m.max() == pytest.approx(1.601, abs=0.0034)
    assert s.a_m.min() == pytest.approx(0.467, abs=0.0034)


def test_noise_bounded_by_amplitude(paper, site, paper_wind, half_hourly):
    clean = synthesis.synthesize_series(paper_wind, site, paper, half_hourly)
    amp = clean.a_m.max() / 100
    assert round(amp, 3) == 0.016
    for seed in range(20):
        noisy = synthesis.synthesize_series(paper_wind, site, paper, half_hourly, NoiseModel(amp, seed))
        assert np.max(np.abs(noisy.a_m - clean.a_m)) <= amp


def test_same_seed_bit_identical(paper, site, paper_wind, half_hourly):
    a = synthesis.synthesize_series(paper_wind, site, paper, half_hourly, NoiseModel(0.016, 7))
    b = synthesis.synthesize_series(paper_wind, site, paper, half_hourly, NoiseModel(0.016, 7))
    c = synthesis.synthesize_series(paper_wind, site, paper, half_hourly, NoiseModel(0.016, 8))
    assert a.a_m.tobytes() == b.a_m.tobytes()
    assert a.a_m.tobytes() != c.a_m.tobytes()


def test_normal_noise_option(paper, site, paper_wind, half_hourly):
    noise = NoiseModel(0.01, 3, "normal")
    s = synthesis.synthesize_series(paper_wind, site, paper, half_hourly, noise)
    assert np.std(s.a_m - s.a_m_clean) == pytest.approx(0.01, rel=0.4)


def test_noise_model_validation():
    with pytest.raises(ValidationError):
        NoiseModel(-1.0)
    with pytest.raises(ValidationError):
        NoiseModel(0.1, distribution="cauchy")


def test_series_validation(paper, site):
    with pytest.raises(ValidationError):
        synthesis.MeasurementSeries(site, paper, [2.0, 1.0], [0.1, 0.2])
    with pytest.raises(ValidationError):
        synthesis.MeasurementSeries(site, paper, [1.0, 2.0], [0.1, np.nan])
    with pytest.raises(ValidationError):
        synthesis.synthesize_series(sky.WindVector(0.0, 0.0, 0.0), site, paper, [])


def test_noiseless_point_inversion_recovers_v_hor(paper, site, paper_wind, half_hourly):
    s = synthesis.synthesize_series(paper_wind, site, paper, half_hourly)
    v = sky.horizontal_projection(paper_wind, site, half_hourly)
    back = inversion.invert_velocity_point(s.a_m, paper)
    np.testing.assert_allclose(back, v, rtol=1e-12)


def test_sweep_ratios_follow_permittivity_difference():
    table = synthesis.epsilon_sweep(synthesis.figure3_pairs(), 480_000.0)
    x = table.column("x_m")
    assert table.column("deps") == pytest.approx([0.000594, 0.003, 0.9994], rel=1e-12)
    np.testing.assert_allclose(x / x[1], table.column("deps") / 0.003, rtol=1e-12)


def test_sweep_degenerate_pair_is_zero():
    table = synthesis.epsilon_sweep([("air/air", optics.AIR, optics.AIR)], 480_000.0)
    assert table.rows[0].x_m == 0.0


def test_sweep_rejects_inverted_pair_and_empty_list():
    with pytest.raises(ValidationError):
        synthesis.epsilon_sweep([("air/CS2", optics.AIR, optics.CS2)], 1e5)
    with pytest.raises(ValidationError):
        synthesis.epsilon_sweep([], 1e5)


def test_microwave_row_reduces_onto_optical_line():
    table = synthesis.epsilon_sweep(synthesis.figure3_pairs(microwave=True), 480_000.0)
    micro = table.rows[-1]
    assert micro.wavelength == 0.1
    assert micro.x_m_raw == pytest.approx(micro.x_m * 6e-6, rel=1e-12)
    per_deps = table.column("x_m") / table.column("deps")
    np.testing.assert_allclose(per_deps, per_deps[1], rtol=1e-12)


def test_sweep_loglog_collinear_before_noise():
    table = synthesis.epsilon_sweep(synthesis.figure3_pairs(microwave=True), 3e5)
    fit = inversion.fit_loglog_slope(table)
    assert fit.slope == pytest.approx(1.0, abs=1e-12)
    assert fit.max_residual < 1e-12
