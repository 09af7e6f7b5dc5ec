# SPDX-License-Identifier: Apache-2.0
"""Smoke tests for the python bindings: import, demosaic, attack, search."""

import os
from pathlib import Path

import numpy as np
import pytest

import stripesim as ss


def data_dir() -> Path:
    return Path(os.environ.get("STRIPESIM_DATA_DIR", "data"))


def test_demosaic_constant_frame():
    frame = np.full((8, 8), 128, dtype=np.uint8)
    for fn in (ss.demosaic_direct, ss.demosaic_bilinear):
        rgb = fn(frame)
        assert rgb.shape == (8, 8, 3)
        assert rgb.dtype == np.uint8
        assert (rgb == 128).all()


def test_demosaic_direct_2x2_block():
    frame = np.array([[100, 50], [70, 20]], dtype=np.uint8)
    rgb = ss.demosaic_direct(frame)
    assert tuple(rgb[0, 0]) == (100, 50, 20)
    assert tuple(rgb[1, 1]) == (100, 70, 20)


def test_ppm_round_trip(tmp_path):
    rng = np.random.default_rng(7)
    img = rng.integers(0, 256, size=(5, 9, 3), dtype=np.uint8)
    path = tmp_path / "img.ppm"
    ss.write_ppm(img, path)
    assert (ss.read_ppm(path) == img).all()


def test_scene_recognizes_green():
    spec = ss.SceneSpec()
    image, roi = ss.generate_scene(spec)
    assert image.shape == (964, 1280, 3)
    result = ss.recognize(image, roi)
    assert result.outcome == ss.Outcome.Green
    assert result.score_green > 0.12


def test_attack_flips_green_to_red():
    image, roi = ss.generate_scene(ss.SceneSpec())
    curve = ss.QECurve.from_csv(data_dir() / "mt9p006_qe.csv")

    field = ss.StripeField()
    field.region = ss.covering_stripe_region(roi, 1.5, image.shape[0], image.shape[1])
    field.direction = ss.Direction.Left
    field.model = ss.FieldModel.Linear
    field.i_min = 0.0
    field.i_max = 1100.0

    attacked = ss.render_stripe(image, field, ss.LaserSpec(650.0), curve, ss.NoiseParams.none())
    assert ss.recognize(attacked, roi).outcome == ss.Outcome.Red
    # Untouched outside the stripe.
    top = field.region.top_row
    assert (attacked[:top] == image[:top]).all()


def test_render_is_deterministic_per_seed():
    image, roi = ss.generate_scene(ss.SceneSpec())
    curve = ss.QECurve.from_csv(data_dir() / "mt9p006_qe.csv")
    field = ss.StripeField()
    field.region = ss.covering_stripe_region(roi, 1.5, image.shape[0], image.shape[1])
    field.i_max = 900.0
    noise = ss.NoiseParams()
    noise.seed = 123
    a = ss.render_stripe(image, field, ss.LaserSpec(650.0), curve, noise)
    b = ss.render_stripe(image, field, ss.LaserSpec(650.0), curve, noise)
    assert (a == b).all()
    noise.seed = 124
    c = ss.render_stripe(image, field, ss.LaserSpec(650.0), curve, noise)
    assert not (a == c).all()


def test_grid_search_counts_and_baseline_error():
    image, roi = ss.generate_scene(ss.SceneSpec())
    curve = ss.QECurve.from_csv(data_dir() / "mt9p006_qe.csv")
    fmap = ss.run_grid(image, roi, curve, ss.SearchGrid.red_laser_default())
    assert len(fmap.entries) == 225
    assert fmap.feasible_count > 0
    summary = ss.summarize(fmap)
    assert summary.best.outcome == ss.Outcome.Red

    bad = ss.SearchGrid.red_laser_default()
    bad.goal = ss.Goal.RtoG  # the scene shows green
    with pytest.raises(RuntimeError):
        ss.run_grid(image, roi, curve, bad)


def test_shutter_plan_and_defense():
    cfg = ss.ShutterConfig()
    pulse = ss.plan_pulse(cfg, 400, 100, 1.5)
    assert pulse.width == pytest.approx(150.0 / (964.0 * 45.458))
    fractions = np.asarray(ss.affected_rows(cfg, pulse, 0))
    assert int((fractions >= 1.0).sum()) == 150
    assert ss.stripe_contiguity(list(fractions), 0.5) == 150

    cfg.order = ss.ReadoutOrder.RandomPermutation
    cfg.seed = 5
    scattered = np.asarray(ss.affected_rows(cfg, pulse, 0))
    assert int((scattered >= 1.0).sum()) == 150
    assert ss.stripe_contiguity(list(scattered), 0.5) <= 20
