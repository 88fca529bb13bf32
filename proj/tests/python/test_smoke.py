import math

import numpy as np
import pytest

import algebroid_mech as am


def test_gallery_ids_and_defaults():
    ids = am.gallery_ids()
    assert "vertical_disk" in ids and "rolling_ball" in ids
    assert am.default_params("rolling_ball")["C1"] == 1.0


def test_lambert_w():
    assert am.lambert_w0(0.0) == 0.0
    assert am.lambert_w0(math.e) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(am.DomainError):
        am.lambert_w0(-1.0)


def test_disk_phi_follows_closed_form():
    disk = am.instantiate("vertical_disk")
    state = np.concatenate([disk.q0, disk.section("reference", disk.q0)])
    times, states = disk.simulate(state, 0.0, 1.0, 1e-3)
    assert states.shape == (1001, 6)
    phi = 2.0 * np.arctan(np.exp(-times + 0.3))
    assert np.max(np.abs(states[:, 3] - phi)) < 1e-6


def test_ball_reference_residual_and_lift():
    ball = am.instantiate("rolling_ball", {"k": 0.8}, omega="linear")
    q = np.array([0.4, 0.1, -0.3])
    assert np.max(np.abs(ball.hj_residual("reference", q))) < 1e-9
    assert ball.verify_lift("reference", 2.0) < 1e-6


def test_errors_map_to_python_exceptions():
    with pytest.raises(am.UsageError):
        am.instantiate("pendulum")
    td = am.instantiate("time_dependent_free")
    with pytest.raises(am.DomainError):
        td.section("reference", np.array([0.0, 1.0]))


def test_cli_round_trip():
    code, report = am.cli("flag-rank", "vertical_disk", "--point", "0,0,0,0")
    assert code == 0
    assert report["ranks"] == [2, 3, 4, 4]
    code, again = am.cli("flag-rank", "vertical_disk", "--point", "0,0,0,0")
    assert again == report
    with pytest.raises(am.UsageError):
        am.cli("simulate", "pendulum")
