// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <filesystem>
#include <string_view>
#include <vector>

#include "stripesim/laser.hpp"
#include "stripesim/raster.hpp"
#include "stripesim/recognize.hpp"
#include "stripesim/stripe.hpp"

namespace stripesim {

// Spoofing goal: which wrong color the attacker wants reported.
enum class Goal { RtoG, GtoR };

std::string_view to_string(Goal g);
Goal goal_from_string(std::string_view s);

// Ground-truth color of the unattacked light, and the color that counts as a
// feasible attack result.
Outcome goal_truth(Goal g);  // RtoG -> Red,   GtoR -> Green
Outcome goal_target(Goal g); // RtoG -> Green, GtoR -> Red

// Axes of the coarse parameter grid. Combinations with i_min >= i_max or an
// invalid direction/model pairing are skipped, not errors.
struct SearchGrid {
    std::vector<double> i_min_values{0, 400, 800, 1200, 1600};
    std::vector<double> i_max_values{200, 600, 1000, 1400, 1800};
    std::vector<double> wavelengths{632, 650, 660}; // red-laser default
    std::vector<Direction> directions{Direction::Left, Direction::Right, Direction::Front};
    std::vector<FieldModel> models{FieldModel::Linear, FieldModel::Sigmoid, FieldModel::Gaussian};
    Goal goal = Goal::GtoR;

    void validate() const; // non-empty axes, no duplicate values
    static SearchGrid red_laser_default();
    static SearchGrid green_laser_default();
};

// Dense 2-D strength sweep with everything else fixed.
struct SweepSpec {
    double i_min_start = 100, i_min_stop = 700, i_min_step = 100;
    double i_max_start = 900, i_max_stop = 1500, i_max_step = 100;
    double wavelength_nm = 650;
    Direction direction = Direction::Left;
    FieldModel model = FieldModel::Linear;
    Goal goal = Goal::GtoR;

    void validate() const;
    std::vector<double> i_min_values() const;
    std::vector<double> i_max_values() const;
};

struct SearchEntry {
    double i_min;
    double i_max;
    double wavelength_nm;
    Direction direction;
    FieldModel model;
    Outcome outcome;
    double confidence;
};

struct FeasibilityMap {
    Goal goal = Goal::GtoR;
    std::vector<SearchEntry> entries;       // lexicographic parameter order
    std::array<int, 5> outcome_counts{};    // indexed by Outcome
    int feasible_count = 0;
    double feasible_fraction = 0.0;
};

// Shared inputs of a search run. Noise draws an independent substream of
// noise.seed per grid entry, so evaluation order (or parallelism) cannot
// change the map.
struct SearchContext {
    const RgbImage& scene;
    const TrafficLightROI& roi;
    const QECurve& curve;
    NoiseParams noise{};
    double margin = 1.5; // stripe height = margin * light rows, centered
    double alpha1 = 5.0, alpha2 = 2.0;
    double sigma1 = 2.0, sigma2 = 4.0, rho = 0.0;
    RecognizerParams recognizer{};
    int threads = 0; // 0 = hardware concurrency
};

// The stripe every search entry uses: margin * light rows, vertically
// centered on the light, spanning the image width. Throws if the stripe
// cannot fit the image.
StripeRegion covering_stripe_region(const TrafficLightROI& roi, double margin, int image_rows,
                                    int image_cols);

// Renders and recognizes every valid grid combination. Requires the
// unattacked scene to be recognized as goal_truth(goal) (BaselineError
// otherwise) and at least one valid combination (std::invalid_argument).
FeasibilityMap run_grid(const SearchContext& ctx, const SearchGrid& grid);

// Dense (i_min, i_max) map with fixed wavelength/direction/model.
FeasibilityMap refined_sweep(const SearchContext& ctx, const SweepSpec& sweep);

struct MapSummary {
    std::array<int, 5> outcome_counts{};
    int total = 0;
    int feasible = 0;
    double feasible_fraction = 0.0;
    // Highest-confidence feasible entry (highest-confidence overall when
    // nothing is feasible); ties go to the lexicographically smaller
    // parameters. Valid only when the map is non-empty.
    SearchEntry best{};
};

MapSummary summarize(const FeasibilityMap& map); // throws on an empty map

// CSV: "i_min,i_max,wavelength_nm,direction,model,outcome,confidence", one
// line per entry, confidence with 6 decimals.
void write_map_csv(const FeasibilityMap& map, const std::filesystem::path& path);

// Heatmap of a refined sweep: one cell block per (i_min, i_max) pair, i_min
// ascending left to right, i_max ascending bottom to top. Red/yellow/green
// cells for those outcomes, dark gray for Black, purple for DoS.
void write_sweep_heatmap_ppm(const FeasibilityMap& map, const SweepSpec& sweep,
                             const std::filesystem::path& path, int cell_px = 16);

} // namespace stripesim
