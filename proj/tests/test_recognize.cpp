// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "stripesim/errors.hpp"
#include "stripesim/recognize.hpp"
#include "stripesim/scene.hpp"
#include "stripesim/search.hpp"
#include "stripesim/stripe.hpp"
#include "test_helpers.hpp"

using namespace stripesim;

TEST_CASE("rgb_to_hsv hits the standard anchors") {
    const Hsv red = rgb_to_hsv(255, 0, 0);
    CHECK(red.hue == doctest::Approx(0.0));
    CHECK(red.saturation == doctest::Approx(1.0));
    CHECK(red.value == doctest::Approx(1.0));

    const Hsv green = rgb_to_hsv(0, 255, 0);
    CHECK(green.hue == doctest::Approx(120.0));
    CHECK(green.saturation == doctest::Approx(1.0));
    CHECK(green.value == doctest::Approx(1.0));

    const Hsv gray = rgb_to_hsv(128, 128, 128);
    CHECK(gray.hue == 0.0);
    CHECK(gray.saturation == 0.0);
    CHECK(gray.value == doctest::Approx(0.502).epsilon(1e-3));

    const Hsv blue = rgb_to_hsv(0, 0, 255);
    CHECK(blue.hue == doctest::Approx(240.0));
    const Hsv magenta_ish = rgb_to_hsv(255, 0, 128);
    CHECK(magenta_ish.hue > 300.0);
}

TEST_CASE("an all-white ROI is a DoS") {
    const RgbImage img = RgbImage::filled(50, 50, 255, 255, 255);
    TrafficLightROI roi;
    roi.top = 5;
    roi.left = 5;
    roi.height = 30;
    roi.width = 20;
    const Detection d = detect(img, roi);
    CHECK_FALSE(d.detected);
    CHECK(d.confidence == doctest::Approx(0.0));
    CHECK(recognize(img, roi).outcome == Outcome::DoS);
}

TEST_CASE("a structureless dark ROI is a DoS even without wash-out") {
    const RgbImage img = RgbImage::filled(50, 50, 20, 20, 20);
    TrafficLightROI roi;
    roi.top = 0;
    roi.left = 0;
    roi.height = 40;
    roi.width = 40;
    const Detection d = detect(img, roi);
    CHECK_FALSE(d.detected);          // value channel has zero variance
    CHECK(d.confidence == doctest::Approx(1.0)); // but nothing is washed out
}

TEST_CASE("the synthetic scene is detected with high confidence") {
    const Scene scene = generate(test_helpers::default_scene_spec(LitLamp::Green));
    const Detection d = detect(scene.image, scene.roi);
    CHECK(d.detected);
    CHECK(d.confidence > 0.9);
}

TEST_CASE("classification counts hue masks over the lamp boxes") {
    const Scene scene = generate(test_helpers::default_scene_spec(LitLamp::Green));
    const RecognitionResult res = classify(scene.image, scene.roi);
    CHECK(res.outcome == Outcome::Green);

    // Independent count: lit disc pixels that pass the saturation/value gate,
    // over the total lamp-box pixels.
    std::size_t total = 0;
    std::size_t green = 0;
    for (const LampBox& lamp : scene.roi.lamps) {
        total += std::size_t(lamp.height) * std::size_t(lamp.width);
        for (int r = lamp.top; r < lamp.top + lamp.height; ++r)
            for (int c = lamp.left; c < lamp.left + lamp.width; ++c) {
                const Hsv hsv = rgb_to_hsv(scene.image.at(r, c, 0), scene.image.at(r, c, 1),
                                           scene.image.at(r, c, 2));
                if (hsv.saturation >= 0.35 && hsv.value >= 0.35 && hsv.hue >= 90.0 &&
                    hsv.hue <= 160.0)
                    ++green;
            }
    }
    CHECK(res.score_green == doctest::Approx(double(green) / double(total)));
    CHECK(res.confidence == doctest::Approx(res.score_green));
    CHECK(res.score_red == 0.0);
    CHECK(res.score_red + res.score_yellow + res.score_green <= 1.0);
}

TEST_CASE("all lamps dark classifies as Black") {
    const Scene scene = generate(test_helpers::default_scene_spec(LitLamp::None));
    const RecognitionResult res = recognize(scene.image, scene.roi);
    CHECK(res.outcome == Outcome::Black);
}

TEST_CASE("unattacked scenes recognize as their lit color") {
    CHECK(recognize(generate(test_helpers::default_scene_spec(LitLamp::Red)).image,
                    generate(test_helpers::default_scene_spec(LitLamp::Red)).roi)
              .outcome == Outcome::Red);
    CHECK(recognize(generate(test_helpers::default_scene_spec(LitLamp::Green)).image,
                    generate(test_helpers::default_scene_spec(LitLamp::Green)).roi)
              .outcome == Outcome::Green);
    CHECK(recognize(generate(test_helpers::default_scene_spec(LitLamp::Yellow)).image,
                    generate(test_helpers::default_scene_spec(LitLamp::Yellow)).roi)
              .outcome == Outcome::Yellow);
}

TEST_CASE("recoloring the lit lamp flips the outcome") {
    const SceneSpec spec = test_helpers::default_scene_spec(LitLamp::Green);
    Scene scene = generate(spec);
    REQUIRE(recognize(scene.image, scene.roi).outcome == Outcome::Green);
    // Rewrite every lit (green) pixel to pure red.
    for (int r = 0; r < scene.image.rows; ++r)
        for (int c = 0; c < scene.image.cols; ++c) {
            if (scene.image.at(r, c, 0) == spec.lit_green.r &&
                scene.image.at(r, c, 1) == spec.lit_green.g &&
                scene.image.at(r, c, 2) == spec.lit_green.b) {
                scene.image.at(r, c, 0) = 255;
                scene.image.at(r, c, 1) = 0;
                scene.image.at(r, c, 2) = 0;
            }
        }
    CHECK(recognize(scene.image, scene.roi).outcome == Outcome::Red);
}

TEST_CASE("recognition is deterministic") {
    const Scene scene = generate(test_helpers::default_scene_spec(LitLamp::Green));
    const RecognitionResult a = recognize(scene.image, scene.roi);
    const RecognitionResult b = recognize(scene.image, scene.roi);
    CHECK(a.outcome == b.outcome);
    CHECK(a.confidence == b.confidence);
    CHECK(a.score_red == b.score_red);
}

TEST_CASE("spoof arc: red score grows with strength until the clamp regime") {
    const Scene scene = generate(test_helpers::default_scene_spec(LitLamp::Green));
    const QECurve curve = test_helpers::bundled_qe();
    const StripeRegion region =
        covering_stripe_region(scene.roi, 1.5, scene.image.rows, scene.image.cols);

    double prev_red = -1.0;
    bool seen_dos = false;
    for (double strength = 0.0; strength <= 6000.0; strength += 250.0) {
        StripeField field;
        field.region = region;
        field.direction = Direction::Left;
        field.model = FieldModel::Linear;
        field.i_min = strength;
        field.i_max = strength;
        const RgbImage attacked = render_stripe(scene.image, field, {650.0, 1.0}, curve,
                                                NoiseParams::none());
        const RecognitionResult res = recognize(attacked, scene.roi);
        if (res.outcome == Outcome::DoS) {
            seen_dos = true;
        } else {
            CHECK_FALSE(seen_dos); // once overexposed, stays overexposed
            CHECK(res.score_red >= prev_red - 1e-9);
            prev_red = res.score_red;
        }
    }
    CHECK(seen_dos);
    CHECK(prev_red > 0.5);
}

TEST_CASE("full-strength interference drives the scene to DoS") {
    const Scene scene = generate(test_helpers::default_scene_spec(LitLamp::Green));
    const QECurve curve = test_helpers::bundled_qe();
    StripeField field;
    field.region = covering_stripe_region(scene.roi, 1.5, scene.image.rows, scene.image.cols);
    field.direction = Direction::Left;
    field.model = FieldModel::Linear;
    field.i_min = 1e7;
    field.i_max = 1e7;
    const RgbImage attacked =
        render_stripe(scene.image, field, {650.0, 1.0}, curve, NoiseParams::none());
    CHECK(recognize(attacked, scene.roi).outcome == Outcome::DoS);
}

TEST_CASE("roi csv round trip and validation") {
    const Scene scene = generate(test_helpers::default_scene_spec(LitLamp::Green));
    const auto path = test_helpers::tmp_dir() / "roi.csv";
    write_roi_csv(scene.roi, path);
    const TrafficLightROI back = read_roi_csv(path);
    CHECK(back.top == scene.roi.top);
    CHECK(back.left == scene.roi.left);
    CHECK(back.height == scene.roi.height);
    CHECK(back.width == scene.roi.width);
    REQUIRE(back.lamps.size() == scene.roi.lamps.size());
    for (std::size_t i = 0; i < back.lamps.size(); ++i) {
        CHECK(back.lamps[i].color == scene.roi.lamps[i].color);
        CHECK(back.lamps[i].top == scene.roi.lamps[i].top);
    }

    TrafficLightROI bad = scene.roi;
    bad.left = -1;
    CHECK_THROWS_AS(bad.validate(scene.image.rows, scene.image.cols), std::invalid_argument);
    TrafficLightROI overlap = scene.roi;
    overlap.lamps[1] = overlap.lamps[0];
    CHECK_THROWS_AS(overlap.validate(scene.image.rows, scene.image.cols),
                    std::invalid_argument);
    CHECK_THROWS_AS(detect(scene.image, bad), std::invalid_argument);
}
