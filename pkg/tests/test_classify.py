import json

import numpy as np
import pytest

import oracles
from blochclf.classify import (
    LabeledDataset,
    NmcModel,
    classify_nmc,
    classify_qc,
    discriminant_function,
    model_from_dict,
    model_to_dict,
    oracle_combine,
    predict,
    predict_nmc,
    predict_qc,
    qc_distances,
    qdf_coefficients,
    quantum_centroid,
    quantum_discriminant,
    train_nmc,
    train_qc,
)
from blochclf.encoding import encode, inverse_stereographic
from blochclf.errors import DimensionMismatchError, InvalidInputError, TrainingError


def ds(points, labels, classes=0):
    return LabeledDataset(np.asarray(points, float), np.asarray(labels), classes)


def test_dataset_validation():
    with pytest.raises(InvalidInputError):
        ds([[1, 2]], [0, 1])
    with pytest.raises(InvalidInputError):
        ds([[np.nan, 1]], [0])
    with pytest.raises(InvalidInputError):
        ds([[1, 2]], [0.5])
    with pytest.raises(InvalidInputError):
        ds([[1, 2]], [3], 2)
    d = ds([[0, 0], [1, 1], [2, 2]], [0, 1, 1])
    assert d.class_count == 2 and d.class_sizes() == [1, 2] and len(d) == 3
    assert ds([[0, 0]], [0], 3).class_sizes() == [1, 0, 0]


def test_empty_class_rejected_at_training():
    d = ds([[0, 0], [1, 1]], [0, 0], 2)
    with pytest.raises(TrainingError):
        train_nmc(d)
    with pytest.raises(TrainingError):
        train_qc(d)


def test_classical_centroids(rng):
    assert np.allclose(train_nmc(ds([[0, 0], [2, 2]], [0, 0])).centroids, [[1, 1]])
    assert np.allclose(train_nmc(ds([[5, -3]], [0])).centroids, [[5, -3]])
    X = rng.normal(size=(50, 2))
    want = [sum(p[i] for p in X.tolist()) / 50 for i in range(2)]
    assert np.allclose(train_nmc(ds(X, np.zeros(50, int))).centroids[0], want)


def test_nmc_predictions():
    model = NmcModel(np.array([[0.0, 0.0], [10.0, 10.0]]))
    assert classify_nmc(model, (1, 1)) == 0
    assert classify_nmc(model, (5, 5)) == 0  # tie goes to the lower index
    assert classify_nmc(model, (9, 9)) == 1
    with pytest.raises(DimensionMismatchError):
        predict_nmc(model, [[1, 2, 3]])


def test_nmc_agrees_with_discriminant(rng):
    a, b = rng.normal(size=2), rng.normal(size=2) + 3
    model = NmcModel(np.array([a, b]))
    for v in rng.uniform(-10, 10, (1000, 2)):
        df = discriminant_function(a, b, v)
        if abs(df) > 1e-9:
            assert classify_nmc(model, v) == (0 if df > 0 else 1)


def test_discriminant_values(rng):
    assert discriminant_function((1, 0), (-1, 0), (2, 5)) == 8
    assert discriminant_function((1, 0), (-1, 0), (0, 7)) == 0
    for a, b, v in rng.uniform(-10, 10, (1000, 3, 2)):
        want = oracles.euclid(v, b) ** 2 - oracles.euclid(v, a) ** 2
        assert discriminant_function(a, b, v) == pytest.approx(want, abs=1e-9)


def test_qdf_example_sign():
    c = qdf_coefficients(encode((1, 0)), encode((-1, 0)))
    assert quantum_discriminant(c, inverse_stereographic((2, 5))) > 0


def test_qdf_zero_on_bisector():
    c = qdf_coefficients(encode((1, 0)), encode((-1, 0)))
    assert abs(quantum_discriminant(c, inverse_stereographic((0, 3.7)))) <= 1e-9


def test_qdf_scaled_discriminant(rng):
    # QDF = 2 DF / ((1 + |v|^2)(1 + |a|^2)), an algebraic consequence of the encoding
    for a, b, v in rng.uniform(-20, 20, (1000, 3, 2)):
        c = qdf_coefficients(encode(a), encode(b))
        want = 2 * discriminant_function(a, b, v) / ((1 + v @ v) * (1 + a @ a))
        assert quantum_discriminant(c, inverse_stereographic(v)) == pytest.approx(want, rel=1e-7, abs=1e-12)


def test_qdf_rejects_off_sphere():
    c = qdf_coefficients(encode((1, 0)), encode((-1, 0)))
    with pytest.raises(InvalidInputError):
        quantum_discriminant(c, [0.1, 0.1, 0.1])
    with pytest.raises(DimensionMismatchError):
        quantum_discriminant(c, [1.0, 0.0])


def test_quantum_centroid_examples():
    c = quantum_centroid(np.array([[1.0, 0.0], [-1.0, 0.0]]))
    assert np.allclose(c.matrix, np.eye(2) / 2, atol=1e-15)
    single = quantum_centroid(np.array([[1.0, 3.0]]))
    assert np.allclose(single.matrix, encode((1, 3)).matrix)
    assert single.purity == pytest.approx(1, abs=1e-12)
    with pytest.raises(TrainingError):
        quantum_centroid(np.empty((0, 2)))


def test_quantum_centroid_is_mixed(rng):
    X = rng.normal(scale=3, size=(50, 2))
    c = quantum_centroid(X)
    assert abs(np.trace(c.matrix) - 1) < 1e-12
    assert c.purity < 1
    assert np.linalg.eigvalsh(c.matrix).min() >= -1e-12
    assert np.allclose(c.matrix, np.mean([oracles.density(v) for v in X], axis=0), atol=1e-14)


def test_scaling_moves_quantum_centroid_only(rng):
    X = rng.normal(size=(40, 2)) + (1.5, -0.5)
    mu = X.mean(axis=0)
    Y = mu + 2.0 * (X - mu)
    assert np.allclose(Y.mean(axis=0), mu)
    shift = np.max(np.abs(quantum_centroid(X).matrix - quantum_centroid(Y).matrix))
    assert shift > 1e-6


def test_qc_examples():
    centroid_data = ds([[0, 0], [10, 10]], [0, 1])
    model = train_qc(centroid_data)
    assert classify_qc(model, (0.1, 0.1)) == 0
    assert classify_qc(model, (0, 0)) == 0
    assert classify_qc(model, (10, 10)) == 1


def test_qc_multiclass_brute_force(rng):
    X = np.vstack([rng.normal(loc=m, size=(20, 2)) for m in ((0, 0), (4, 0), (0, 4))])
    y = np.repeat([0, 1, 2], 20)
    model = train_qc(ds(X, y))
    centroids = [np.mean([oracles.density(v) for v in X[y == k]], axis=0) for k in range(3)]
    queries = rng.uniform(-3, 7, (200, 2))
    want = oracles.nearest([oracles.density(q) for q in queries], centroids, oracles.trace_distance)
    assert predict_qc(model, queries).tolist() == want
    assert qc_distances(model, queries).shape == (200, 3)


def test_qc_requires_two_features():
    with pytest.raises(DimensionMismatchError):
        train_qc(ds([[1, 2, 3]], [0]))


def test_oracle_combine(rng):
    truth = np.array([0, 1, 1, 0])
    a = np.array([0, 0, 0, 1])
    b = np.array([1, 1, 0, 1])
    assert oracle_combine(a, b, truth).tolist() == [0, 1, 0, 1]
    for _ in range(100):
        t = rng.integers(0, 3, 50)
        pa, pb = rng.integers(0, 3, 50), rng.integers(0, 3, 50)
        o = oracle_combine(pa, pb, t)
        assert (o != t).sum() <= min((pa != t).sum(), (pb != t).sum())
    with pytest.raises(DimensionMismatchError):
        oracle_combine([0], [0, 1], [0])


@pytest.mark.parametrize("trainer", [train_nmc, train_qc])
def test_model_round_trip(rng, trainer):
    X = rng.normal(size=(30, 2))
    y = np.repeat([0, 1, 2], 10)
    model = trainer(ds(X, y))
    again = model_from_dict(json.loads(json.dumps(model_to_dict(model))))
    assert predict(again, X).tolist() == predict(model, X).tolist()


def test_model_from_bad_dict():
    for bad in ({"kind": "svm"}, {"kind": "nmc"}, {"kind": "qc", "centroids": [{"matrix": [[1]]}]}):
        with pytest.raises(InvalidInputError):
            model_from_dict(bad)
    with pytest.raises(TypeError):
        predict(object(), [[1, 2]])


def test_subset_keeps_class_count():
    d = ds([[0, 0], [1, 1], [2, 2]], [0, 1, 2])
    sub = d.subset([0, 2])
    assert sub.class_count == 3 and sub.labels.tolist() == [0, 2]
