import math

import numpy as np
import pytest

from blochclf.classify import LabeledDataset
from blochclf.datasets import (
    GAUSSIAN,
    THREE_GAUSSIAN,
    GaussianClass,
    describe,
    format_csv,
    generate_gaussian,
    generate_moon,
    generate_three_gaussian,
    holdout_split,
    load_csv,
    parse_csv,
    save_csv,
)
from blochclf.errors import InvalidInputError, ParseError


def test_gaussian_counts_and_determinism():
    a = generate_gaussian(GAUSSIAN, 7)
    b = generate_gaussian(GAUSSIAN, 7)
    assert len(a) == 200 and a.class_sizes() == [100, 100]
    assert format_csv(a) == format_csv(b)
    assert format_csv(a) != format_csv(generate_gaussian(GAUSSIAN, 8))


def test_class_spec_validation():
    with pytest.raises(InvalidInputError):
        GaussianClass((0, 0), (1, 1), 0)
    with pytest.raises(InvalidInputError):
        GaussianClass((0, 0), (1, -1), 5)
    with pytest.raises(InvalidInputError):
        GaussianClass((0, 0, 0), (1, 1), 5)


def _z_scores(generate, spec, seeds):
    """Standardized sample-mean errors and variance ratios, pooled over seeds."""
    zs, ratios = [], []
    for seed in seeds:
        d = generate(seed)
        for k, cls in enumerate(spec.classes):
            pts = d.members(k)
            zs.append((pts.mean(axis=0) - cls.mean) / np.sqrt(cls.variances) * math.sqrt(len(pts)))
            ratios.append(pts.var(axis=0, ddof=1) / cls.variances)
    return np.ravel(zs), np.ravel(ratios)


def test_gaussian_statistics():
    zs, ratios = _z_scores(lambda s: generate_gaussian(GAUSSIAN, s), GAUSSIAN, range(200))
    # about 0.27% of means fall outside 3 sigma/sqrt(n) by chance
    assert np.mean(np.abs(zs) > 3) <= 0.01
    assert abs(zs.mean()) < 0.1 and abs(zs.std() - 1) < 0.1
    # one chi-square sd at n = 100 is about 14%, so 25% holds for roughly 92% of draws
    assert np.mean(np.abs(ratios - 1) <= 0.25) >= 0.85
    assert abs(ratios.mean() - 1) < 0.02


def test_three_gaussian():
    d = generate_three_gaussian(0)
    assert d.class_sizes() == [150, 150, 150]
    assert set(d.labels.tolist()) == {0, 1, 2}
    zs, ratios = _z_scores(generate_three_gaussian, THREE_GAUSSIAN, range(200))
    assert np.mean(np.abs(zs) > 3) <= 0.01
    assert abs(zs.mean()) < 0.1 and abs(zs.std() - 1) < 0.1
    assert abs(ratios.mean() - 1) < 0.02


def test_moon_noiseless_arc():
    d = generate_moon(100, 0.0, 1)
    upper = d.members(0)
    assert np.all(np.abs((upper ** 2).sum(axis=1) - 1) <= 1e-9)
    lower = d.members(1)
    assert np.all(np.abs(((lower - (1, 0.5)) ** 2).sum(axis=1) - 1) <= 1e-9)


def test_moon_determinism_and_validation():
    assert format_csv(generate_moon(100, 0.1, 3)) == format_csv(generate_moon(100, 0.1, 3))
    assert generate_moon(1, 0.0).class_sizes() == [1, 1]
    with pytest.raises(InvalidInputError):
        generate_moon(0)
    with pytest.raises(InvalidInputError):
        generate_moon(10, -0.1)


def test_csv_round_trip(tmp_path):
    d = generate_three_gaussian(2, 20)
    path = tmp_path / "d.csv"
    save_csv(d, path, header=True)
    back = load_csv(path)
    assert np.array_equal(back.patterns, d.patterns)
    assert np.array_equal(back.labels, d.labels)


def test_small_hand_written_file(tmp_path):
    path = tmp_path / "tiny.csv"
    path.write_text("1.0,2.0,0\n-3,4.5,1\n\n0,0,1\n")
    d = load_csv(path)
    assert len(d) == 3 and d.class_sizes() == [1, 2]


def test_header_and_label_remap():
    d = parse_csv("x,y,class\n0,0,1\n1,1,2\n2,2,2\n")
    assert d.labels.tolist() == [0, 1, 1]
    assert d.label_values == (1, 2)
    assert format_csv(d).splitlines()[0].endswith(",1")
    assert "1: 1, 2: 2" in describe(d)


@pytest.mark.parametrize(
    "text, line",
    [
        ("0,0,0\n1,abc,1\n", 2),
        ("0,0,0\n1,1\n1,1,1\n", 2),
        ("0,0,0\n\n0,0,0.5\n", 3),
        ("0,0,0\nh,e,ader\n", 2),
        ("0,nan,0\n", 1),
        ("5\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_csv(text, "bad.csv")
    assert info.value.line == line
    assert f"bad.csv:{line}" in str(info.value)


def test_empty_file():
    with pytest.raises(ParseError):
        parse_csv("x,y,label\n")


def test_holdout_split():
    d = generate_gaussian(GAUSSIAN, 0)
    train, test = holdout_split(d, 0.3, 11)
    assert len(train) + len(test) == 200
    assert test.class_sizes() == [30, 30]
    again = holdout_split(d, 0.3, 11)
    assert np.array_equal(again[1].patterns, test.patterns)
    merged = np.vstack([train.patterns, test.patterns])
    assert sorted(map(tuple, merged.tolist())) == sorted(map(tuple, d.patterns.tolist()))
    with pytest.raises(InvalidInputError):
        holdout_split(d, 1.0, 0)


def test_holdout_keeps_a_training_pattern():
    d = LabeledDataset(np.array([[0.0, 0], [1, 1], [2, 2]]), np.array([0, 1, 1]))
    train, test = holdout_split(d, 0.9, 0)
    assert train.class_sizes() == [1, 1]


def test_banana_shaped_file_loads(tmp_path):
    # Same layout as the two-class benchmark file: +-1 labels, uneven classes.
    rng = np.random.default_rng(0)
    labels = np.r_[np.full(2376, -1), np.full(2924, 1)]
    X = rng.normal(size=(5300, 2))
    path = tmp_path / "banana.csv"
    path.write_text("".join(f"{x!r},{y!r},{lab}\n" for (x, y), lab in zip(X.tolist(), labels.tolist())))
    d = load_csv(path)
    assert len(d) == 5300 and d.class_sizes() == [2376, 2924]
    assert d.label_values == (-1, 1)
