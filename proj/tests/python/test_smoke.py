import math

import numpy as np
import pytest

import kkmeans


def blobs(n, d, k, seed):
    rng = np.random.default_rng(seed)
    centres = rng.uniform(-1, 1, size=(k, d))
    labels = rng.integers(0, k, size=n)
    return centres[labels] + 0.1 * rng.standard_normal((n, d))


def test_gram_and_kernel_hand_values():
    np.testing.assert_array_equal(kkmeans.compute_gram(np.eye(2)), np.eye(2))
    k = kkmeans.apply_kernel(np.eye(2), "polynomial")
    np.testing.assert_array_equal(k, [[4, 1], [1, 4]])
    g = kkmeans.apply_kernel(np.eye(2), "gaussian")
    assert g[0, 1] == pytest.approx(math.exp(-2))
    assert kkmeans.select_gram_algorithm(50000, 100) == "gemm"
    assert kkmeans.select_gram_algorithm(10000, 10000) == "syrk"


def test_gram_matches_numpy():
    p = np.random.default_rng(1).standard_normal((40, 5))
    for method in ("gemm", "syrk", "auto"):
        np.testing.assert_allclose(kkmeans.compute_gram(p, method), p @ p.T, rtol=1e-12, atol=1e-12)


def test_selection_matrix_and_products():
    labels = np.array([1, 0, 1], dtype=np.int32)
    v = kkmeans.selection_matrix(labels, 2)
    assert v.shape == (2, 3)
    assert v.nnz == 3
    np.testing.assert_array_equal(v.to_dense(), [[0, 1, 0], [0.5, 0, 0.5]])
    kern = kkmeans.apply_kernel(kkmeans.compute_gram(np.arange(6.0).reshape(3, 2) / 6), "linear")
    np.testing.assert_allclose(kkmeans.spmm_neg2_kvt(kern, v), -2 * kern @ v.to_dense().T)
    z = np.array([1.0, 2.0, 3.0])
    np.testing.assert_allclose(kkmeans.spmv_scaled(2.0, v, z), 2 * v.to_dense() @ z)


def test_drivers_agree_and_separate_blobs():
    pts = blobs(120, 3, 3, 7)
    a = kkmeans.run_popcorn(pts, 3, seed=4, precision="f64")
    b = kkmeans.run_baseline(pts, 3, seed=4, precision="f64")
    np.testing.assert_array_equal(a["labels"], b["labels"])
    assert a["iterations_run"] == 30
    assert len(a["objective_history"]) == 30
    assert set(a["timings"]) == {"kernel_matrix", "pairwise_distances", "argmin_update"}

    lin = kkmeans.run_popcorn(pts, 3, seed=4, kernel="linear", precision="f64")
    lloyd = kkmeans.run_lloyd(pts, 3, seed=4, kernel="linear", precision="f64")
    np.testing.assert_array_equal(lin["labels"], lloyd["labels"])

    f32 = kkmeans.run_popcorn(pts.astype(np.float32), 3, seed=4)
    assert f32["labels"].shape == (120,)


def test_objective_and_init():
    labels = kkmeans.init_assignments(100, 10, 42)
    assert labels[:5].tolist() == [7, 6, 7, 1, 9]
    assert sorted(set(labels.tolist())) == list(range(10))
    kern = np.array([[1.0, 0.0], [0.0, 1.0]])
    assert kkmeans.compute_objective(kern, np.array([0, 0], dtype=np.int32)) == pytest.approx(1.0)


def test_analysis():
    assert kkmeans.intensity_distances(2, 1) == {"flops": 18, "bytes": 104, "intensity": 18 / 104}
    assert kkmeans.intensity_kernel_matrix(1, 1)["intensity"] == 2 / 12
    assert kkmeans.kernel_cost_model("polynomial", 2, 100) == (30000, 20000)
    assert kkmeans.augmented_distance_oracle(np.array([3.0]), np.array([7.0])) == 16.0
    assert kkmeans.augmented_distance_oracle(np.array([4.0, 3, 2]), np.array([5.0, 2, 3])) == 3.0


def test_errors_and_loader(tmp_path):
    with pytest.raises(kkmeans.LabelError):
        kkmeans.selection_matrix(np.array([0, 5], dtype=np.int32), 2)
    with pytest.raises(ValueError):
        kkmeans.run_popcorn(np.zeros((3, 2)), 5)
    with pytest.raises(kkmeans.DimensionError):
        kkmeans.row_argmin(np.zeros((0, 2)))
    path = tmp_path / "a.svm"
    path.write_text("1 1:0.5 3:2.0\n-1 2:1\n")
    np.testing.assert_array_equal(kkmeans.load_dataset(path), [[0.5, 0, 2], [0, 1, 0]])
    bad = tmp_path / "b.svm"
    bad.write_text("1 1:x\n")
    with pytest.raises(kkmeans.ParseError):
        kkmeans.load_dataset(bad)
