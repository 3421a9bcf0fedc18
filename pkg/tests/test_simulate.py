import numpy as np
import pytest

from sraar import (
    MotionBounds,
    MotionTrajectory,
    SHEPP_LOGAN_ELLIPSES,
    TrajectoryGenConfig,
    corrupt,
    dft2,
    generate_trajectory,
    load_ground_truth,
    render_ellipses,
    save_array,
    shepp_logan,
)
from reference_impls import point_in_ellipse


def oracle_phantom_sample(r, c, n):
    x = (c - n // 2) / (n // 2)
    y = (n // 2 - r) / (n // 2)
    value = 0.0
    for amp, a, b, x0, y0, phi in SHEPP_LOGAN_ELLIPSES:
        if point_in_ellipse(x, y, a, b, x0, y0, phi):
            value += amp
    return value


class TestPhantom:
    def test_shape_and_dtype(self):
        img = shepp_logan(64)
        assert img.shape == (64, 64)
        assert img.dtype == np.complex128
        assert np.all(img.imag == 0)

    def test_value_range(self):
        img = shepp_logan(128).real
        assert img.min() >= -1e-15  # additive float residue where ellipses cancel
        assert img.max() <= 1.0
        assert img.max() > 0.9  # skull rim carries full intensity

    def test_corner_outside_and_center_inside(self):
        img = shepp_logan(64).real
        assert img[0, 0] == 0.0
        assert img[32, 32] == oracle_phantom_sample(32, 32, 64)

    def test_every_pixel_matches_membership_oracle(self):
        n = 32
        img = shepp_logan(n).real
        for r in range(n):
            for c in range(n):
                assert img[r, c] == oracle_phantom_sample(r, c, n), (r, c)

    def test_outer_shells_mirror_in_x(self):
        # both large ellipses are centered on x = 0 and unrotated, so their
        # rendering is even in x; column N - c carries column c's value
        img = render_ellipses(64, SHEPP_LOGAN_ELLIPSES[:2]).real
        mirrored = np.roll(img[:, ::-1], 1, axis=1)
        assert np.array_equal(img, mirrored)

    def test_bad_sizes(self):
        for n in (0, 3, 12, 100):
            with pytest.raises(ValueError):
                shepp_logan(n)


class TestLoadGroundTruth(object):
    def test_normalizes_peak_modulus(self, tmp_path):
        img = 3.25 * shepp_logan(16)
        path = tmp_path / "gt.srr"
        save_array(path, img)
        loaded = load_ground_truth(path)
        assert np.abs(loaded).max() == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(loaded, img / np.abs(img).max(), atol=1e-6)

    def test_zero_image_rejected(self, tmp_path):
        path = tmp_path / "zero.srr"
        save_array(path, np.zeros((8, 8), dtype=np.complex128))
        with pytest.raises(ValueError):
            load_ground_truth(path)


class TestGenerateTrajectory:
    def test_deterministic_per_seed(self):
        cfg = TrajectoryGenConfig(MotionBounds(5.0, 5.0), 8, 7)
        a = generate_trajectory(cfg, 64)
        b = generate_trajectory(cfg, 64)
        assert np.array_equal(a.shifts, b.shifts)

    def test_seeds_differ(self):
        bounds = MotionBounds(5.0, 5.0)
        a = generate_trajectory(TrajectoryGenConfig(bounds, 8, 0), 64)
        b = generate_trajectory(TrajectoryGenConfig(bounds, 8, 1), 64)
        assert not np.array_equal(a.shifts, b.shifts)

    def test_peak_hits_bound_exactly(self):
        for seed in range(100):
            traj = generate_trajectory(TrajectoryGenConfig(MotionBounds(5.0, 3.0), 8, seed), 128)
            assert abs(np.abs(traj.dx).max() - 5.0) < 1e-12
            assert abs(np.abs(traj.dy).max() - 3.0) < 1e-12

    def test_zero_bounds_give_zero_trajectory(self):
        traj = generate_trajectory(TrajectoryGenConfig(MotionBounds(0.0, 0.0), 8, 3), 64)
        assert np.array_equal(traj.shifts, np.zeros((64, 2)))

    def test_increments_stay_small(self):
        for seed in range(100):
            traj = generate_trajectory(TrajectoryGenConfig(MotionBounds(4.0, 4.0), 8, seed), 256)
            assert np.abs(np.diff(traj.shifts, axis=0)).max() <= 1.0

    def test_higher_smoothness_smaller_jumps(self):
        bounds = MotionBounds(5.0, 5.0)
        for seed in range(20):
            rough = generate_trajectory(TrajectoryGenConfig(bounds, 2, seed), 128)
            fine = generate_trajectory(TrajectoryGenConfig(bounds, 16, seed), 128)
            rough_jump = np.abs(np.diff(rough.shifts, axis=0)).mean()
            fine_jump = np.abs(np.diff(fine.shifts, axis=0)).mean()
            assert fine_jump < rough_jump

    def test_gauge_weights_zero_the_weighted_mean(self, rng):
        cfg = TrajectoryGenConfig(MotionBounds(5.0, 3.0), 8, 4)
        w = rng.uniform(0.1, 2.0, 128)
        traj = generate_trajectory(cfg, 128, gauge_weights=w)
        wn = w / w.sum()
        assert abs(wn @ traj.dx) <= 1e-10
        assert abs(wn @ traj.dy) <= 1e-10
        # rescaling happens after centering, so the bounds stay exact
        assert abs(np.abs(traj.dx).max() - 5.0) < 1e-12
        assert abs(np.abs(traj.dy).max() - 3.0) < 1e-12

    def test_bad_gauge_weights(self):
        cfg = TrajectoryGenConfig(MotionBounds(5.0, 5.0), 8, 0)
        with pytest.raises(ValueError):
            generate_trajectory(cfg, 64, gauge_weights=np.zeros(64))
        with pytest.raises(ValueError):
            generate_trajectory(cfg, 64, gauge_weights=np.ones(32))

    def test_bad_smoothness(self):
        for bad in (0, -1, 1.5):
            with pytest.raises(ValueError):
                TrajectoryGenConfig(MotionBounds(5.0, 5.0), bad, 0)

    def test_bad_line_count(self):
        with pytest.raises(ValueError):
            generate_trajectory(TrajectoryGenConfig(MotionBounds(5.0, 5.0), 8, 0), 0)


class TestCorrupt:
    def test_zero_trajectory_noiseless_is_plain_dft(self, phantom64):
        out = corrupt(phantom64, MotionTrajectory.zero(64))
        assert np.array_equal(out, dft2(phantom64))

    def test_noiseless_preserves_amplitudes(self, phantom64, rng):
        traj = MotionTrajectory(rng.uniform(-5, 5, size=(64, 2)))
        out = corrupt(phantom64, traj)
        np.testing.assert_allclose(np.abs(out), np.abs(dft2(phantom64)), rtol=1e-14)

    def test_noise_deterministic_per_seed(self, phantom64):
        traj = MotionTrajectory.zero(64)
        a = corrupt(phantom64, traj, noise_snr_db=20.0, seed=11)
        b = corrupt(phantom64, traj, noise_snr_db=20.0, seed=11)
        c = corrupt(phantom64, traj, noise_snr_db=20.0, seed=12)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)

    @pytest.mark.parametrize("snr_db", [10.0, 30.0])
    def test_measured_snr_matches_request(self, phantom64, snr_db):
        clean = dft2(phantom64)
        signal_power = np.sum(np.abs(clean) ** 2)
        traj = MotionTrajectory.zero(64)
        measured = []
        for seed in range(50):
            noisy = corrupt(phantom64, traj, noise_snr_db=snr_db, seed=seed)
            noise_power = np.sum(np.abs(noisy - clean) ** 2)
            measured.append(10.0 * np.log10(signal_power / noise_power))
        measured = np.asarray(measured)
        assert np.all(np.abs(measured - snr_db) < 0.5)
        assert abs(measured.mean() - snr_db) < 0.1
