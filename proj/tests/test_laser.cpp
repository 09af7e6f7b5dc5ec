// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <fstream>

#include "stripesim/errors.hpp"
#include "stripesim/laser.hpp"
#include "test_helpers.hpp"

using namespace stripesim;

TEST_CASE("qe interpolation hits sample points exactly") {
    const QECurve curve({{500.0, 0.1, 0.4, 0.4, 0.3}, {600.0, 0.5, 0.2, 0.2, 0.1}});
    const ChannelGains at500 = curve.at(500.0);
    CHECK(at500.r == doctest::Approx(0.1));
    CHECK(at500.g == doctest::Approx(0.4));
    CHECK(at500.b == doctest::Approx(0.3));
    const ChannelGains at600 = curve.at(600.0);
    CHECK(at600.r == doctest::Approx(0.5));
    CHECK(at600.g == doctest::Approx(0.2));
    CHECK(at600.b == doctest::Approx(0.1));
}

TEST_CASE("qe interpolation is linear between knots") {
    const QECurve curve({{500.0, 0.2, 0.2, 0.2, 0.2}, {600.0, 0.4, 0.4, 0.4, 0.4}});
    const ChannelGains mid = curve.at(550.0);
    CHECK(mid.r == doctest::Approx(0.3));
    CHECK(mid.g == doctest::Approx(0.3));
    CHECK(mid.b == doctest::Approx(0.3));
}

TEST_CASE("green channel is the mean of Gr and Gb") {
    const QECurve curve({{500.0, 0.0, 0.2, 0.4, 0.0}, {600.0, 0.0, 0.2, 0.4, 0.0}});
    CHECK(curve.at(550.0).g == doctest::Approx(0.3));
}

TEST_CASE("qe rejects out-of-range wavelengths and bad curves") {
    const QECurve curve = test_helpers::flat_red_fixture();
    CHECK_THROWS_AS(curve.at(399.9), std::invalid_argument);
    CHECK_THROWS_AS(curve.at(900.1), std::invalid_argument);

    CHECK_THROWS_AS(QECurve({{500.0, 0.1, 0.1, 0.1, 0.1}}), std::invalid_argument);
    CHECK_THROWS_AS(QECurve({{600.0, 0.1, 0.1, 0.1, 0.1}, {500.0, 0.1, 0.1, 0.1, 0.1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(QECurve({{500.0, 1.1, 0.1, 0.1, 0.1}, {600.0, 0.1, 0.1, 0.1, 0.1}}),
                    std::invalid_argument);
}

TEST_CASE("qe csv loads the bundled fixture and rejects bad headers") {
    const QECurve curve = test_helpers::bundled_qe();
    const ChannelGains f650 = curve.at(650.0);
    CHECK(f650.r == doctest::Approx(0.52));
    CHECK(f650.g == doctest::Approx(0.08));
    CHECK(f650.b == doctest::Approx(0.04));
    const ChannelGains f520 = curve.at(520.0);
    CHECK(f520.g == doctest::Approx(0.55));

    const auto bad = test_helpers::tmp_dir() / "bad_qe.csv";
    {
        std::ofstream out(bad);
        out << "wavelength,r,g,g,b\n500,0.1,0.1,0.1,0.1\n";
    }
    CHECK_THROWS_AS(QECurve::from_csv(bad), IoError);
    CHECK_THROWS_AS(QECurve::from_csv(test_helpers::tmp_dir() / "missing.csv"), IoError);
}

TEST_CASE("photon filter scales the curve by the light strength") {
    const QECurve curve = test_helpers::flat_red_fixture();

    const ChannelGains zero = photon_filter({650.0, 0.0}, curve);
    CHECK(zero.r == 0.0);
    CHECK(zero.g == 0.0);
    CHECK(zero.b == 0.0);

    const ChannelGains k1 = photon_filter({650.0, 1000.0}, curve);
    CHECK(k1.r == doctest::Approx(500.0));
    CHECK(k1.g == doctest::Approx(50.0));
    CHECK(k1.b == doctest::Approx(20.0));

    const ChannelGains k2 = photon_filter({650.0, 2000.0}, curve);
    CHECK(k2.r == doctest::Approx(2.0 * k1.r));
    CHECK(k2.g == doctest::Approx(2.0 * k1.g));
    CHECK(k2.b == doctest::Approx(2.0 * k1.b));
}

TEST_CASE("stripe_add saturates at 255") {
    CHECK(stripe_add(200, 100.0) == 255);
    CHECK(stripe_add(100, 50.0) == 150);
    CHECK(stripe_add(0, 0.0) == 0);
    CHECK(stripe_add(0, 254.4) == 254);
    CHECK(stripe_add(0, 254.5) == 255); // rounds half-up
    CHECK(stripe_add(10, 1e12) == 255);
    CHECK_THROWS_AS(stripe_add(10, -1.0), std::invalid_argument);
}

TEST_CASE("stripe_add is monotone in both arguments") {
    for (int x = 0; x <= 255; x += 5) {
        std::uint8_t prev = stripe_add(std::uint8_t(x), 0.0);
        for (double e = 0.0; e <= 300.0; e += 7.3) {
            const std::uint8_t cur = stripe_add(std::uint8_t(x), e);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
    for (double e = 0.0; e <= 300.0; e += 13.1) {
        std::uint8_t prev = stripe_add(0, e);
        for (int x = 1; x <= 255; ++x) {
            const std::uint8_t cur = stripe_add(std::uint8_t(x), e);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("effects >= 255 saturate every original value") {
    for (int x = 0; x <= 255; ++x) CHECK(stripe_add(std::uint8_t(x), 255.0) == 255);
}

TEST_CASE("channel selectivity: a red-heavy curve lifts R far above G and B") {
    const QECurve curve = test_helpers::flat_red_fixture();
    const ChannelGains e = photon_filter({650.0, 300.0}, curve);
    CHECK(e.r > 5.0 * e.g);
    CHECK(e.r > 10.0 * e.b);
    CHECK(dominant_channel(e) == 0);
}
