import os
from pathlib import Path

import numpy as np
import pytest

import dkmeans as dk

DATA_DIR = Path(os.environ.get("DKMEANS_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def four_points():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [10.0, 0.0], [11.0, 0.0]])
    return dk.Dataset(pts, labels=["pos", "pos", "neg", "neg"])


def test_distance_and_centroid():
    assert dk.squared_distance([0, 0], [3, 4]) == 25.0
    assert dk.centroid(np.array([[0, 0], [2, 0], [1, 3]])) == [1.0, 1.0]
    with pytest.raises(dk.Error):
        dk.squared_distance([0, 0], [1, 2, 3])


def test_pooled_mean_update():
    assert dk.pooled_mean_update([0, 0], 3, [4, 0], 1) == [1.0, 0.0]
    with pytest.raises(ValueError):
        dk.pooled_mean_update([0, 0], 0, [4, 0], 1)


def test_run_kmeans():
    pts = np.array([[0, 0], [0, 0], [9, 9], [9, 9]], dtype=float)
    cl = dk.run_kmeans(dk.Dataset(pts), dk.Config(k=2))
    assert cl.objective == 0.0
    assert cl.terminated_by == dk.Termination.Converged
    assert sorted(map(tuple, cl.centres.tolist())) == [(0.0, 0.0), (9.0, 9.0)]
    assert list(cl.objective_trace) == sorted(cl.objective_trace, reverse=True)


def test_run_discriminative_four_points():
    clustering, splits = dk.run_discriminative(four_points(), dk.Config(k=2))
    assert clustering.centres.tolist() == [[-4.5, 0.0], [15.5, 0.0]]
    assert clustering.terminated_by == dk.Termination.MaxClusters
    assert len(splits) == 1
    assert splits[0].w_used_positive == 0.5
    converged, _ = dk.run_discriminative(four_points(), dk.Config(k=4))
    assert converged.terminated_by == dk.Termination.Converged
    warm, more = dk.run_discriminative(four_points(), dk.Config(k=4), warm_start=converged.centres)
    assert more == []
    assert warm.centres.tolist() == converged.centres.tolist()


def test_dataset_validation():
    with pytest.raises(dk.Error):
        dk.Dataset(np.array([[0.0, np.nan]]))
    with pytest.raises(dk.Error):
        dk.Dataset(np.zeros((2, 2)), labels=["pos"])
    with pytest.raises(dk.Error):
        dk.run_discriminative(dk.Dataset(np.zeros((2, 1))), dk.Config())


def test_identity_models_and_classify():
    data = dk.three_identity_data(seed=1)
    assert len(data) == 60
    models = dk.train_identity_models(data, dk.Algorithm.Discriminative, dk.Config(k=4))
    assert [m.identity for m in models] == [0, 1, 2]
    assert dk.classify(data.points[0].tolist(), models) in (0, 1, 2)
    assert dk.ssd_of(data, models) >= 0.0


def test_leave_one_out():
    data = dk.load_csv(str(DATA_DIR / "three_identities.csv"))
    report = dk.compare_leave_one_out(data, dk.Config(k=3))
    counts = np.array(report.classic.confusion.counts)
    assert counts.sum(axis=1).tolist() == [20, 20, 20]
    assert len(report.ssd_records) == 60
    assert {r.benefit for r in report.ssd_records} <= {-1, 0, 1}
    again = dk.leave_one_out(data, dk.Algorithm.Discriminative, dk.Config(k=3), threads=1)
    assert again.predictions == report.discriminative.predictions


def test_experiment_and_pca(tmp_path):
    data, clustering, splits = dk.run_experiment("e1", dk.Config())
    assert clustering.terminated_by == dk.Termination.Converged
    assert len(splits) > 0
    projected, eigenvalues = dk.pca_project(data, 2)
    assert projected.shape == (len(data), 2)
    assert eigenvalues[0] >= eigenvalues[1]
    path = tmp_path / "e1.csv"
    dk.save_csv(data, str(path))
    assert np.array_equal(dk.load_csv(str(path)).points, data.points)
