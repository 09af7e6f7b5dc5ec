// SPDX-License-Identifier: Apache-2.0
#include "stripesim/search.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "stripesim/errors.hpp"
#include "stripesim/rng.hpp"

namespace stripesim {

std::string_view to_string(Goal g) { return g == Goal::RtoG ? "RtoG" : "GtoR"; }

Goal goal_from_string(std::string_view s) {
    std::string v(s);
    for (char& c : v) c = char(std::tolower(static_cast<unsigned char>(c)));
    if (v == "rtog" || v == "r2g") return Goal::RtoG;
    if (v == "gtor" || v == "g2r") return Goal::GtoR;
    throw std::invalid_argument("unknown goal: '" + std::string(s) + "'");
}

Outcome goal_truth(Goal g) { return g == Goal::RtoG ? Outcome::Red : Outcome::Green; }
Outcome goal_target(Goal g) { return g == Goal::RtoG ? Outcome::Green : Outcome::Red; }

namespace {

void check_axis(const std::vector<double>& axis, const char* name) {
    if (axis.empty())
        throw std::invalid_argument(std::string("SearchGrid: empty axis '") + name + "'");
    for (std::size_t i = 0; i < axis.size(); ++i)
        for (std::size_t j = i + 1; j < axis.size(); ++j)
            if (axis[i] == axis[j])
                throw std::invalid_argument(std::string("SearchGrid: duplicate value in axis '") +
                                            name + "'");
}

template <typename T> void check_enum_axis(const std::vector<T>& axis, const char* name) {
    if (axis.empty())
        throw std::invalid_argument(std::string("SearchGrid: empty axis '") + name + "'");
    for (std::size_t i = 0; i < axis.size(); ++i)
        for (std::size_t j = i + 1; j < axis.size(); ++j)
            if (axis[i] == axis[j])
                throw std::invalid_argument(std::string("SearchGrid: duplicate value in axis '") +
                                            name + "'");
}

bool pairing_valid(Direction d, FieldModel m) {
    if (d == Direction::Front) return m == FieldModel::Gaussian;
    return m == FieldModel::Linear || m == FieldModel::Sigmoid;
}

} // namespace

void SearchGrid::validate() const {
    check_axis(i_min_values, "i_min");
    check_axis(i_max_values, "i_max");
    check_axis(wavelengths, "wavelengths");
    check_enum_axis(directions, "directions");
    check_enum_axis(models, "models");
}

SearchGrid SearchGrid::red_laser_default() {
    SearchGrid g;
    g.goal = Goal::GtoR;
    return g;
}

SearchGrid SearchGrid::green_laser_default() {
    SearchGrid g;
    g.wavelengths = {505, 520};
    g.goal = Goal::RtoG;
    return g;
}

void SweepSpec::validate() const {
    if (!(i_min_step > 0) || !(i_max_step > 0))
        throw std::invalid_argument("SweepSpec: steps must be > 0");
    if (i_min_stop < i_min_start || i_max_stop < i_max_start)
        throw std::invalid_argument("SweepSpec: stop must be >= start");
}

namespace {
std::vector<double> range_values(double start, double stop, double step) {
    std::vector<double> out;
    for (double v = start; v <= stop + step * 1e-9; v += step) out.push_back(v);
    return out;
}
} // namespace

std::vector<double> SweepSpec::i_min_values() const {
    return range_values(i_min_start, i_min_stop, i_min_step);
}

std::vector<double> SweepSpec::i_max_values() const {
    return range_values(i_max_start, i_max_stop, i_max_step);
}

StripeRegion covering_stripe_region(const TrafficLightROI& roi, double margin, int image_rows,
                                    int image_cols) {
    if (!(margin >= 1.0)) throw std::invalid_argument("covering_stripe_region: margin < 1");
    const int height = int(std::lround(margin * roi.height));
    if (height > image_rows)
        throw std::invalid_argument("covering_stripe_region: stripe taller than the image");
    int top = roi.top - int(std::lround((margin - 1.0) * roi.height / 2.0));
    top = std::clamp(top, 0, image_rows - height);
    return StripeRegion{top, height, image_cols};
}

namespace {

struct Combo {
    double i_min, i_max, wavelength;
    Direction direction;
    FieldModel model;
};

// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first
// worker exception.
template <typename Fn> void parallel_for(std::size_t n, int threads, Fn&& fn) {
    unsigned t = threads > 0 ? unsigned(threads) : std::max(1u, std::thread::hardware_concurrency());
    t = unsigned(std::min<std::size_t>(t, n));
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

FeasibilityMap evaluate_combos(const SearchContext& ctx, Goal goal,
                               const std::vector<Combo>& combos) {
    if (combos.empty())
        throw std::invalid_argument("parameter search: no valid combinations "
                                    "(check i_min < i_max and direction/model pairing)");
    const auto baseline = recognize(ctx.scene, ctx.roi, ctx.recognizer);
    if (baseline.outcome != goal_truth(goal))
        throw BaselineError("unattacked scene recognized as " +
                            std::string(to_string(baseline.outcome)) + ", expected " +
                            std::string(to_string(goal_truth(goal))) +
                            "; the attack baseline is invalid");

    const StripeRegion region =
        covering_stripe_region(ctx.roi, ctx.margin, ctx.scene.rows, ctx.scene.cols);

    FeasibilityMap map;
    map.goal = goal;
    map.entries.resize(combos.size());

    parallel_for(combos.size(), ctx.threads, [&](std::size_t i) {
        const Combo& c = combos[i];
        StripeField field;
        field.region = region;
        field.direction = c.direction;
        field.model = c.model;
        field.i_min = c.i_min;
        field.i_max = c.i_max;
        field.alpha1 = ctx.alpha1;
        field.alpha2 = ctx.alpha2;
        field.sigma1 = ctx.sigma1;
        field.sigma2 = ctx.sigma2;
        field.rho = ctx.rho;

        NoiseParams noise = ctx.noise;
        noise.seed = derive_seed(ctx.noise.seed, std::uint64_t(i));
        const LaserSpec laser{c.wavelength, 1.0};
        const RgbImage attacked = render_stripe(ctx.scene, field, laser, ctx.curve, noise);
        const RecognitionResult res = recognize(attacked, ctx.roi, ctx.recognizer);

        map.entries[i] = {c.i_min,  c.i_max,      c.wavelength, c.direction,
                          c.model,  res.outcome,  res.confidence};
    });

    for (const auto& e : map.entries) ++map.outcome_counts[std::size_t(e.outcome)];
    map.feasible_count = map.outcome_counts[std::size_t(goal_target(goal))];
    map.feasible_fraction = double(map.feasible_count) / double(map.entries.size());
    return map;
}

} // namespace

FeasibilityMap run_grid(const SearchContext& ctx, const SearchGrid& grid) {
    grid.validate();
    std::vector<Combo> combos;
    for (double i_min : grid.i_min_values)
        for (double i_max : grid.i_max_values) {
            if (!(i_min < i_max)) continue;
            for (double wl : grid.wavelengths)
                for (Direction d : grid.directions)
                    for (FieldModel m : grid.models)
                        if (pairing_valid(d, m)) combos.push_back({i_min, i_max, wl, d, m});
        }
    return evaluate_combos(ctx, grid.goal, combos);
}

FeasibilityMap refined_sweep(const SearchContext& ctx, const SweepSpec& sweep) {
    sweep.validate();
    if (!pairing_valid(sweep.direction, sweep.model))
        throw std::invalid_argument("SweepSpec: invalid direction/model pairing");
    std::vector<Combo> combos;
    for (double i_min : sweep.i_min_values())
        for (double i_max : sweep.i_max_values())
            if (i_min < i_max)
                combos.push_back({i_min, i_max, sweep.wavelength_nm, sweep.direction,
                                  sweep.model});
    return evaluate_combos(ctx, sweep.goal, combos);
}

namespace {

// Lexicographic parameter order used for tie-breaks and CSV rows.
bool param_less(const SearchEntry& a, const SearchEntry& b) {
    if (a.i_min != b.i_min) return a.i_min < b.i_min;
    if (a.i_max != b.i_max) return a.i_max < b.i_max;
    if (a.wavelength_nm != b.wavelength_nm) return a.wavelength_nm < b.wavelength_nm;
    if (a.direction != b.direction) return int(a.direction) < int(b.direction);
    return int(a.model) < int(b.model);
}

} // namespace

MapSummary summarize(const FeasibilityMap& map) {
    if (map.entries.empty()) throw std::invalid_argument("summarize: empty feasibility map");
    MapSummary s;
    s.outcome_counts = map.outcome_counts;
    s.total = int(map.entries.size());
    s.feasible = map.feasible_count;
    s.feasible_fraction = map.feasible_fraction;

    const Outcome target = goal_target(map.goal);
    const SearchEntry* best = nullptr;
    bool best_feasible = false;
    for (const auto& e : map.entries) {
        const bool feasible = e.outcome == target;
        if (!best) {
            best = &e;
            best_feasible = feasible;
            continue;
        }
        if (feasible != best_feasible) {
            if (feasible) {
                best = &e;
                best_feasible = true;
            }
            continue;
        }
        if (e.confidence > best->confidence ||
            (e.confidence == best->confidence && param_less(e, *best)))
            best = &e;
    }
    s.best = *best;
    return s;
}

namespace {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string format_confidence(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

void write_map_csv(const FeasibilityMap& map, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open map CSV for writing: " + path.string());
    out << "i_min,i_max,wavelength_nm,direction,model,outcome,confidence\n";
    for (const auto& e : map.entries) {
        out << format_number(e.i_min) << ',' << format_number(e.i_max) << ','
            << format_number(e.wavelength_nm) << ',' << to_string(e.direction) << ','
            << to_string(e.model) << ',' << to_string(e.outcome) << ','
            << format_confidence(e.confidence) << '\n';
    }
    if (!out) throw IoError("failed writing map CSV: " + path.string());
}

void write_sweep_heatmap_ppm(const FeasibilityMap& map, const SweepSpec& sweep,
                             const std::filesystem::path& path, int cell_px) {
    if (cell_px < 1) throw std::invalid_argument("write_sweep_heatmap_ppm: cell_px < 1");
    const auto mins = sweep.i_min_values();
    const auto maxs = sweep.i_max_values();

    auto cell_color = [](Outcome o) -> std::array<std::uint8_t, 3> {
        switch (o) {
        case Outcome::Red: return {220, 40, 40};
        case Outcome::Yellow: return {235, 200, 40};
        case Outcome::Green: return {40, 200, 90};
        case Outcome::Black: return {70, 70, 70};
        case Outcome::DoS: return {150, 60, 200};
        }
        return {0, 0, 0};
    };

    // Cells without a map entry (skipped invalid combinations) render black.
    RgbImage img = RgbImage::filled(int(maxs.size()) * cell_px, int(mins.size()) * cell_px,
                                    0, 0, 0);
    for (const auto& e : map.entries) {
        auto find_index = [](const std::vector<double>& axis, double v) -> int {
            for (std::size_t i = 0; i < axis.size(); ++i)
                if (std::abs(axis[i] - v) < 1e-9) return int(i);
            return -1;
        };
        const int col = find_index(mins, e.i_min);
        const int row_from_bottom = find_index(maxs, e.i_max);
        if (col < 0 || row_from_bottom < 0) continue;
        const int row = int(maxs.size()) - 1 - row_from_bottom;
        const auto color = cell_color(e.outcome);
        for (int r = row * cell_px; r < (row + 1) * cell_px; ++r)
            for (int c = col * cell_px; c < (col + 1) * cell_px; ++c) {
                img.at(r, c, 0) = color[0];
                img.at(r, c, 1) = color[1];
                img.at(r, c, 2) = color[2];
            }
    }
    write_ppm(img, path);
}

} // namespace stripesim
