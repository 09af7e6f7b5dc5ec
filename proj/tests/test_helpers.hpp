// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

#include "stripesim/laser.hpp"
#include "stripesim/scene.hpp"

namespace test_helpers {

// data/ directory of the source tree, wired up by ctest.
inline std::filesystem::path data_dir() {
    const char* env = std::getenv("STRIPESIM_DATA_DIR");
    return env ? std::filesystem::path(env) : std::filesystem::path("data");
}

inline std::filesystem::path tmp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "stripesim_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

inline stripesim::QECurve bundled_qe() {
    return stripesim::QECurve::from_csv(data_dir() / "mt9p006_qe.csv");
}

// Constructed two-point fixture with exact values at 650 nm:
// f_R = 0.5, f_G = 0.05, f_B = 0.02 across the whole range.
inline stripesim::QECurve flat_red_fixture() {
    return stripesim::QECurve({{400.0, 0.5, 0.05, 0.05, 0.02}, {900.0, 0.5, 0.05, 0.05, 0.02}});
}

inline stripesim::SceneSpec default_scene_spec(stripesim::LitLamp lit) {
    stripesim::SceneSpec spec;
    spec.lit = lit;
    return spec;
}

} // namespace test_helpers
