import numpy as np
import pytest

from swih import KernelSpec, Quantizer, SceneSpec, generate_scene, likelihood_map, peak, target_model
from swih.errors import SpecError
from swih.image import encode_pgm


def test_deterministic():
    spec = SceneSpec(seed=11)
    a = generate_scene(spec)
    b = generate_scene(spec)
    assert encode_pgm(a[0]) == encode_pgm(b[0])
    assert encode_pgm(a[1]) == encode_pgm(b[1])
    assert a[2] == b[2]
    assert encode_pgm(generate_scene(SceneSpec(seed=12))[0]) != encode_pgm(a[0])


def test_clean_plant_scores_one():
    spec = SceneSpec(seed=5, width=90, height=80, kw=15, kh=11, clutter=0.0, corruption=0.0)
    search, tpl, truth = generate_scene(spec)
    x, y = truth
    assert np.array_equal(search.pixels[y - 5:y + 6, x - 7:x + 8], tpl.pixels)
    q = Quantizer(16)
    k = KernelSpec("manhattan", 15, 11)
    center, score = peak(likelihood_map(search, target_model(tpl, q, k), q, k))
    assert center == truth and score == pytest.approx(1.0, abs=1e-12)


def test_plant_center_respected():
    search, tpl, truth = generate_scene(SceneSpec(seed=1, plant_center=(20, 30), corruption=0.0))
    assert truth == (20, 30)
    assert np.array_equal(search.pixels[15:46, 5:36], tpl.pixels)


def test_corruption_touches_only_outer_ring():
    spec = SceneSpec(seed=3, plant_center=(60, 60), corruption=1.0, clutter=0.0)
    search, tpl, _ = generate_scene(spec)
    patch = search.pixels[45:76, 45:76]
    assert np.array_equal(patch[1:-1, 1:-1], tpl.pixels[1:-1, 1:-1])


def test_decoys_share_plain_histogram():
    spec = SceneSpec(seed=8, clutter=0.6, corruption=0.5)
    search, tpl, truth = generate_scene(spec)
    q = Quantizer(16)
    k = KernelSpec("manhattan", 31, 31)
    plain = likelihood_map(search, target_model(tpl, q, k, "plain"), q, k, "plain")
    (px, py), score = peak(plain)
    assert score == pytest.approx(1.0, abs=1e-12) and (px, py) != truth


@pytest.mark.parametrize("kwargs", [dict(plant_center=(5, 5)), dict(kw=30), dict(clutter=1.5),
                                    dict(width=20, height=20)])
def test_invalid_spec(kwargs):
    with pytest.raises(SpecError):
        SceneSpec(seed=0, **kwargs)


def test_weighted_beats_plain_over_seeds():
    q = Quantizer(16)
    k = KernelSpec("manhattan", 31, 31)
    hits = {"swih": 0, "plain": 0}
    for seed in range(500, 520):
        search, tpl, truth = generate_scene(SceneSpec(seed=seed, corruption=0.5, clutter=0.6))
        for method in hits:
            center, _ = peak(likelihood_map(search, target_model(tpl, q, k, method), q, k, method))
            hits[method] += center == truth
    assert hits["swih"] >= hits["plain"]
    assert hits["swih"] >= 17
