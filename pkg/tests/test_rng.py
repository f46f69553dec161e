import pytest

from blochclf.rng import SplitMix64, derive_seed


def test_reference_vector():
    g = SplitMix64(1234567)
    assert g.next_u64() == 6457827717110365317
    assert g.next_u64() == 3203168211198807973


def test_uniform_range_and_determinism():
    a, b = SplitMix64(9), SplitMix64(9)
    xs = [a.random() for _ in range(1000)]
    assert xs == [b.random() for _ in range(1000)]
    assert all(0 <= x < 1 for x in xs)


def test_normal_moments():
    g = SplitMix64(3)
    zs = [g.normal() for _ in range(20000)]
    mean = sum(zs) / len(zs)
    var = sum((z - mean) ** 2 for z in zs) / (len(zs) - 1)
    assert abs(mean) < 0.03 and abs(var - 1) < 0.04


def test_below_and_shuffle():
    g = SplitMix64(5)
    assert all(0 <= g.below(7) < 7 for _ in range(500))
    items = list(range(20))
    g.shuffle(items)
    assert sorted(items) == list(range(20)) and items != list(range(20))
    with pytest.raises(ValueError):
        g.below(0)


def test_derived_seeds_differ():
    assert len({derive_seed(42, i) for i in range(100)}) == 100
    assert derive_seed(42, 1) == derive_seed(42, 1)
