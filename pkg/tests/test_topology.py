import numpy as np
import pytest

from oracles import bfs_component_count
from topocpd.errors import InvalidInputError
from topocpd.series import PointCloud
from topocpd.topology import BettiMatrix, ScaleGrid, betti0_sequence, betti_matrix


def cloud(values, origin=1):
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    return PointCloud(arr, origin_index=origin)


def random_orthogonal(dim, rng):
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)))
    return q * np.sign(np.diag(r))


# --- scale grid -------------------------------------------------------------


def test_default_grid_is_fifty_hundredth_steps():
    g = ScaleGrid.default()
    assert g.size == 50
    assert np.allclose(g.scales, 0.01 * np.arange(50))


def test_uniform_grid():
    g = ScaleGrid.uniform(4, 0.25)
    assert np.allclose(g.scales, [0.0, 0.25, 0.5, 0.75])


def test_grid_must_increase():
    with pytest.raises(InvalidInputError):
        ScaleGrid([0.2, 0.1])
    with pytest.raises(InvalidInputError):
        ScaleGrid([0.1, 0.1])


def test_grid_rejects_negative_scales():
    with pytest.raises(InvalidInputError):
        ScaleGrid([-0.1, 0.2])


# --- component counts on one cloud -----------------------------------------


def test_three_point_line_counts():
    seq = betti0_sequence(cloud([0.0, 0.1, 0.3]), ScaleGrid([0.05, 0.15, 0.25, 0.35]))
    assert list(seq.counts) == [3, 2, 1, 1]


def test_coincident_points_are_one_component_everywhere():
    seq = betti0_sequence(cloud([2.0, 2.0, 2.0, 2.0]), ScaleGrid([0.0, 0.1, 0.2]))
    assert list(seq.counts) == [1, 1, 1]


def test_scattered_points_stay_separate_below_min_distance():
    seq = betti0_sequence(cloud([0.0, 10.0, 20.0]), ScaleGrid([0.0, 1.0, 2.0]))
    assert list(seq.counts) == [3, 3, 3]


def test_counts_match_bfs_oracle_on_random_clouds():
    rng = np.random.default_rng(7)
    for _ in range(60):
        w = int(rng.integers(2, 21))
        d = int(rng.choice([1, 3, 5]))
        pts = rng.normal(size=(w, d))
        scales = np.unique(np.round(rng.uniform(0.0, 3.0, size=6), 6))
        scales.sort()
        seq = betti0_sequence(cloud(pts), ScaleGrid(scales))
        expected = [bfs_component_count(pts, e) for e in scales]
        assert list(seq.counts) == expected


def test_counts_monotone_and_bounded():
    rng = np.random.default_rng(11)
    for _ in range(30):
        w = int(rng.integers(2, 30))
        pts = rng.normal(size=(w, 2))
        seq = betti0_sequence(cloud(pts), ScaleGrid.default())
        counts = np.asarray(seq.counts)
        assert (np.diff(counts) <= 0).all()
        assert counts.min() >= 1
        assert counts.max() <= w


def test_counts_invariant_under_translation_and_rotation():
    rng = np.random.default_rng(3)
    grid = ScaleGrid.default()
    for _ in range(20):
        pts = rng.normal(size=(8, 3))
        base = betti0_sequence(cloud(pts), grid)
        q = random_orthogonal(3, rng)
        moved = pts @ q.T + rng.normal(size=3)
        moved_seq = betti0_sequence(cloud(moved), grid)
        assert list(base.counts) == list(moved_seq.counts)


def test_sequence_keeps_window_origin():
    seq = betti0_sequence(cloud([0.0, 1.0], origin=17), ScaleGrid([0.5]))
    assert seq.window_origin == 17


# --- stacking clouds into a matrix ------------------------------------------


def test_matrix_rows_match_per_cloud_sequences():
    rng = np.random.default_rng(5)
    grid = ScaleGrid.default()
    clouds = [cloud(rng.normal(size=(6, 2)), origin=i + 1) for i in range(4)]
    mat = betti_matrix(clouds, grid)
    assert isinstance(mat, BettiMatrix)
    assert mat.counts.shape == (4, 50)
    assert mat.n_windows == 4
    assert mat.window_size == 6
    for i, c in enumerate(clouds):
        assert np.array_equal(mat.row(i).counts, betti0_sequence(c, grid).counts)


def test_matrix_rejects_mixed_window_sizes():
    clouds = [cloud([0.0, 1.0]), cloud([0.0, 1.0, 2.0])]
    with pytest.raises(InvalidInputError):
        betti_matrix(clouds, ScaleGrid([0.5]))


def test_matrix_rejects_empty_cloud_list():
    with pytest.raises(InvalidInputError):
        betti_matrix([], ScaleGrid([0.5]))
