// SPDX-License-Identifier: Apache-2.0
//
// stripesim -- simulate laser color-stripe injection against a rolling-shutter
// camera, recognize the result with the built-in traffic-light oracle, search
// the laser parameter space, and evaluate randomized-shutter defenses.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stripesim/config.hpp"
#include "stripesim/errors.hpp"
#include "stripesim/laser.hpp"
#include "stripesim/raster.hpp"
#include "stripesim/recognize.hpp"
#include "stripesim/rng.hpp"
#include "stripesim/scene.hpp"
#include "stripesim/search.hpp"
#include "stripesim/shutter.hpp"
#include "stripesim/stripe.hpp"

namespace fs = std::filesystem;
using namespace stripesim;

namespace {

std::string format_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string format_fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// Reads typed values out of a RunConfig while recording every value actually
// consumed (defaults included) so the effective configuration can be dumped
// and re-run byte-identically.
class ConfigReader {
public:
    ConfigReader(RunConfig cfg, fs::path base_dir)
        : cfg_(std::move(cfg)), base_dir_(std::move(base_dir)) {}

    bool has(std::string_view key) const { return cfg_.has(key); }

    std::string str(std::string_view key, std::string_view fallback) {
        const std::string v = cfg_.get_str(key, fallback);
        effective_.set(key, v);
        return v;
    }
    double num(std::string_view key, double fallback) {
        const double v = cfg_.get_num(key, fallback);
        effective_.set_num(key, v);
        return v;
    }
    std::int64_t integer(std::string_view key, std::int64_t fallback) {
        const std::int64_t v = cfg_.get_int(key, fallback);
        effective_.set_int(key, v);
        return v;
    }
    bool boolean(std::string_view key, bool fallback) {
        const bool v = cfg_.get_bool(key, fallback);
        effective_.set_bool(key, v);
        return v;
    }
    std::vector<double> nums(std::string_view key, std::string_view fallback) {
        if (!cfg_.has(key)) {
            effective_.set(key, fallback);
            RunConfig tmp;
            tmp.set(key, fallback);
            return tmp.get_num_list(key);
        }
        const auto v = cfg_.get_num_list(key);
        effective_.set(key, cfg_.get_str(key));
        return v;
    }
    std::vector<std::string> strings(std::string_view key, std::string_view fallback) {
        if (!cfg_.has(key)) effective_.set(key, fallback);
        else effective_.set(key, cfg_.get_str(key));
        RunConfig tmp;
        tmp.set(key, cfg_.get_str(key, fallback));
        return tmp.get_str_list(key);
    }

    // Input file referenced by the config: resolved against the config file's
    // directory and required to exist. The effective config records the
    // resolved absolute path so a dumped config re-runs from anywhere.
    fs::path input_file(std::string_view key, std::string_view fallback = "") {
        const std::string v = str(key, fallback);
        if (v.empty()) throw ConfigError("missing config key '" + std::string(key) + "'");
        fs::path p(v);
        if (p.is_relative()) p = base_dir_ / p;
        if (!fs::exists(p))
            throw ConfigError("config key '" + std::string(key) +
                              "' references a missing file: " + p.string());
        p = fs::absolute(p).lexically_normal();
        effective_.set(key, p.string());
        return p;
    }

    // Output path: relative to the working directory, parent created on
    // demand (inputs resolve against the config's directory instead, so a
    // shipped config never writes next to itself).
    fs::path output_file(std::string_view key, std::string_view fallback) {
        const std::string v = str(key, fallback);
        fs::path p(v);
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        return p;
    }

    std::uint64_t seed() {
        const std::uint64_t s = cfg_.seed();
        effective_.set_int("run.seed", std::int64_t(s));
        return s;
    }

    const RunConfig& effective() const { return effective_; }

private:
    RunConfig cfg_;
    RunConfig effective_;
    fs::path base_dir_;
};

ConfigReader load_reader(const std::string& config_path) {
    fs::path p(config_path);
    return ConfigReader(RunConfig::load(p), p.has_parent_path() ? p.parent_path() : fs::path("."));
}

void maybe_dump(const ConfigReader& reader, const std::string& dump_path) {
    if (dump_path.empty()) return;
    fs::path p(dump_path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw IoError("cannot open dump-config path for writing: " + p.string());
    out << reader.effective().dump();
}

// ---------------------------------------------------------------------------
// Shared config -> domain builders

SceneSpec scene_spec_from(ConfigReader& r, std::uint64_t seed) {
    SceneSpec spec;
    spec.rows = int(r.integer("scene.rows", spec.rows));
    spec.cols = int(r.integer("scene.cols", spec.cols));
    spec.lit = lit_lamp_from_string(r.str("scene.lit", "green"));
    spec.background = background_from_string(r.str("scene.background", "sky"));
    spec.horizontal_center = r.num("scene.horizontal_center", spec.horizontal_center);
    spec.vertical_center = r.num("scene.vertical_center", spec.vertical_center);
    spec.lamp_box = int(r.integer("scene.lamp_box", spec.lamp_box));
    spec.lamp_pad = int(r.integer("scene.lamp_pad", spec.lamp_pad));
    spec.lamp_radius = int(r.integer("scene.lamp_radius", spec.lamp_radius));
    spec.seed = derive_seed(seed, "scene");
    return spec;
}

struct LoadedScene {
    RgbImage image;
    TrafficLightROI roi;
    Outcome truth;
};

// A scene is either generated from [scene] or loaded from scene.image +
// scene.roi (+ scene.truth) for attacks on pre-recorded frames.
LoadedScene obtain_scene(ConfigReader& r, std::uint64_t seed) {
    if (r.has("scene.image")) {
        LoadedScene s{read_ppm(r.input_file("scene.image")),
                      read_roi_csv(r.input_file("scene.roi")), Outcome::Green};
        s.truth = outcome_from_string(r.str("scene.truth", "green"));
        s.roi.validate(s.image.rows, s.image.cols);
        return s;
    }
    SceneSpec spec = scene_spec_from(r, seed);
    const std::string position = r.str("scene.position", "");
    const double scale = r.num("scene.scale", 1.0);
    Scene scene = position.empty() && scale == 1.0
                      ? generate(spec)
                      : place(spec, position.empty()
                                        ? LightPosition::Mid
                                        : light_position_from_string(position),
                              scale);
    Outcome truth = Outcome::Black;
    switch (spec.lit) {
    case LitLamp::Red: truth = Outcome::Red; break;
    case LitLamp::Yellow: truth = Outcome::Yellow; break;
    case LitLamp::Green: truth = Outcome::Green; break;
    case LitLamp::None: truth = Outcome::Black; break;
    }
    return {std::move(scene.image), std::move(scene.roi), truth};
}

NoiseParams noise_from(ConfigReader& r, std::uint64_t seed) {
    NoiseParams noise;
    const bool enabled = r.boolean("noise.enabled", true);
    noise.beta1 = r.num("noise.beta1", noise.beta1);
    noise.beta2 = r.num("noise.beta2", noise.beta2);
    noise.n_min = int(r.integer("noise.n_min", noise.n_min));
    noise.n_max = int(r.integer("noise.n_max", noise.n_max));
    noise.brightness_min = int(r.integer("noise.brightness_min", noise.brightness_min));
    noise.brightness_max = int(r.integer("noise.brightness_max", noise.brightness_max));
    noise.size_min = int(r.integer("noise.size_min", noise.size_min));
    noise.size_max = int(r.integer("noise.size_max", noise.size_max));
    if (!enabled) {
        noise.n_min = 0;
        noise.n_max = 0;
    }
    noise.seed = derive_seed(seed, "noise");
    return noise;
}

// Field parameters minus the region, which each command derives itself.
StripeField field_from(ConfigReader& r) {
    StripeField field;
    field.direction = direction_from_string(r.str("stripe.direction", "left"));
    field.model = field_model_from_string(r.str("stripe.model", "linear"));
    field.i_min = r.num("stripe.i_min", 0.0);
    field.i_max = r.num("stripe.i_max", 1100.0);
    field.alpha1 = r.num("stripe.alpha1", field.alpha1);
    field.alpha2 = r.num("stripe.alpha2", field.alpha2);
    field.sigma1 = r.num("stripe.sigma1", field.sigma1);
    field.sigma2 = r.num("stripe.sigma2", field.sigma2);
    field.rho = r.num("stripe.rho", field.rho);
    return field;
}

ShutterConfig shutter_from(ConfigReader& r, std::uint64_t seed, int default_rows) {
    ShutterConfig cfg;
    cfg.n_rows = int(r.integer("shutter.n_rows", default_rows));
    cfg.frame_rate = r.num("shutter.frame_rate", cfg.frame_rate);
    cfg.exposure = r.num("shutter.exposure", cfg.exposure);
    cfg.order = readout_order_from_string(r.str("shutter.order", "sequential"));
    cfg.seed = derive_seed(seed, "shutter");
    cfg.validate();
    return cfg;
}

PulseTrain pulse_from(ConfigReader& r, const ShutterConfig& cfg, int default_light_top,
                      int default_light_rows) {
    if (r.has("pulse.width") || r.has("pulse.period") || r.has("pulse.phase")) {
        PulseTrain p;
        p.width = r.num("pulse.width", cfg.row_time());
        p.period = r.num("pulse.period", cfg.frame_time());
        p.phase = r.num("pulse.phase", 0.0);
        p.validate();
        return p;
    }
    const int light_rows = int(r.integer("pulse.light_rows", default_light_rows));
    const int light_top = int(r.integer("pulse.light_top", default_light_top));
    const double margin = r.num("pulse.margin", 1.5);
    return plan_pulse(cfg, light_top, light_rows, margin);
}

RecognizerParams recognizer_from(ConfigReader& r) {
    RecognizerParams p;
    p.washed_value_min = r.num("recognizer.washed_value_min", p.washed_value_min);
    p.washed_saturation_max = r.num("recognizer.washed_saturation_max", p.washed_saturation_max);
    p.washed_fraction_dos = r.num("recognizer.washed_fraction_dos", p.washed_fraction_dos);
    p.value_stddev_min = r.num("recognizer.value_stddev_min", p.value_stddev_min);
    p.mask_saturation_min = r.num("recognizer.mask_saturation_min", p.mask_saturation_min);
    p.mask_value_min = r.num("recognizer.mask_value_min", p.mask_value_min);
    p.decision_threshold = r.num("recognizer.decision_threshold", p.decision_threshold);
    return p;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_demosaic(const std::string& in, const std::string& mode, const std::string& out) {
    const RawBayerFrame frame = read_bayer(in);
    RgbImage image;
    if (mode == "direct")
        image = demosaic_direct(frame);
    else if (mode == "bilinear")
        image = demosaic_bilinear(frame);
    else
        throw ConfigError("unknown demosaic mode '" + mode + "' (direct|bilinear)");
    write_ppm(image, out);
    std::cout << "image=" << out << " rows=" << image.rows << " cols=" << image.cols
              << " mode=" << mode << "\n";
    return 0;
}

int cmd_scene(const std::string& config_path, const std::string& dump_path) {
    ConfigReader r = load_reader(config_path);
    const std::uint64_t seed = r.seed();
    LoadedScene scene = obtain_scene(r, seed);
    const fs::path image_path = r.output_file("output.scene_image", "scene.ppm");
    const fs::path roi_path = r.output_file("output.roi_csv", "scene_roi.csv");
    write_ppm(scene.image, image_path);
    write_roi_csv(scene.roi, roi_path);
    const RecognitionResult res = recognize(scene.image, scene.roi, recognizer_from(r));
    maybe_dump(r, dump_path);
    std::cout << "image=" << image_path.string() << " roi=" << roi_path.string()
              << " outcome=" << to_string(res.outcome)
              << " confidence=" << format_fixed(res.confidence) << "\n";
    return 0;
}

int cmd_attack(const std::string& config_path, const std::string& dump_path) {
    ConfigReader r = load_reader(config_path);
    const std::uint64_t seed = r.seed();
    LoadedScene scene = obtain_scene(r, seed);
    const QECurve curve = QECurve::from_csv(r.input_file("qe.curve"));
    const RecognizerParams recognizer_params = recognizer_from(r);

    const RecognitionResult baseline = recognize(scene.image, scene.roi, recognizer_params);
    if (baseline.outcome != scene.truth)
        throw BaselineError("unattacked scene recognized as " +
                            std::string(to_string(baseline.outcome)) + ", expected " +
                            std::string(to_string(scene.truth)));

    StripeField field = field_from(r);
    const double margin = r.num("stripe.margin", 1.5);
    field.region = covering_stripe_region(scene.roi, margin, scene.image.rows, scene.image.cols);
    const LaserSpec laser{r.num("laser.wavelength_nm", 650.0), 1.0};
    const NoiseParams noise = noise_from(r, seed);

    const RgbImage attacked = render_stripe(scene.image, field, laser, curve, noise);
    const RecognitionResult res = recognize(attacked, scene.roi, recognizer_params);

    const fs::path out_path = r.output_file("output.image", "attacked.ppm");
    write_ppm(attacked, out_path);
    maybe_dump(r, dump_path);
    std::cout << "outcome=" << to_string(res.outcome)
              << " confidence=" << format_fixed(res.confidence)
              << " baseline=" << to_string(baseline.outcome) << " image=" << out_path.string()
              << "\n";
    return 0;
}

int cmd_search(const std::string& config_path, bool grid_mode, const std::string& dump_path) {
    ConfigReader r = load_reader(config_path);
    const std::uint64_t seed = r.seed();
    LoadedScene scene = obtain_scene(r, seed);
    const QECurve curve = QECurve::from_csv(r.input_file("qe.curve"));

    SearchContext ctx{scene.image, scene.roi, curve};
    ctx.noise = noise_from(r, seed);
    ctx.margin = r.num("stripe.margin", 1.5);
    ctx.alpha1 = r.num("stripe.alpha1", ctx.alpha1);
    ctx.alpha2 = r.num("stripe.alpha2", ctx.alpha2);
    ctx.sigma1 = r.num("stripe.sigma1", ctx.sigma1);
    ctx.sigma2 = r.num("stripe.sigma2", ctx.sigma2);
    ctx.rho = r.num("stripe.rho", ctx.rho);
    ctx.recognizer = recognizer_from(r);
    ctx.threads = int(r.integer("run.threads", 0));

    FeasibilityMap map;
    fs::path heatmap_path;
    if (grid_mode) {
        const Goal goal = goal_from_string(r.str("grid.goal", "gtor"));
        SearchGrid grid = goal == Goal::GtoR ? SearchGrid::red_laser_default()
                                             : SearchGrid::green_laser_default();
        std::string default_wl = goal == Goal::GtoR ? "632,650,660" : "505,520";
        grid.i_min_values = r.nums("grid.i_min", "0,400,800,1200,1600");
        grid.i_max_values = r.nums("grid.i_max", "200,600,1000,1400,1800");
        grid.wavelengths = r.nums("grid.wavelengths", default_wl);
        grid.directions.clear();
        for (const auto& s : r.strings("grid.directions", "left,right,front"))
            grid.directions.push_back(direction_from_string(s));
        grid.models.clear();
        for (const auto& s : r.strings("grid.models", "linear,sigmoid,gaussian"))
            grid.models.push_back(field_model_from_string(s));
        try {
            grid.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        map = run_grid(ctx, grid);
    } else {
        SweepSpec sweep;
        sweep.goal = goal_from_string(r.str("sweep.goal", "gtor"));
        sweep.i_min_start = r.num("sweep.i_min_start", sweep.i_min_start);
        sweep.i_min_stop = r.num("sweep.i_min_stop", sweep.i_min_stop);
        sweep.i_min_step = r.num("sweep.i_min_step", sweep.i_min_step);
        sweep.i_max_start = r.num("sweep.i_max_start", sweep.i_max_start);
        sweep.i_max_stop = r.num("sweep.i_max_stop", sweep.i_max_stop);
        sweep.i_max_step = r.num("sweep.i_max_step", sweep.i_max_step);
        sweep.wavelength_nm =
            r.num("sweep.wavelength_nm", sweep.goal == Goal::GtoR ? 650.0 : 520.0);
        sweep.direction = direction_from_string(r.str("sweep.direction", "left"));
        sweep.model = field_model_from_string(r.str("sweep.model", "linear"));
        try {
            sweep.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        map = refined_sweep(ctx, sweep);
        heatmap_path = r.output_file("output.heatmap", "heatmap.ppm");
        write_sweep_heatmap_ppm(map, sweep, heatmap_path);
    }

    const fs::path csv_path = r.output_file("output.map_csv", "map.csv");
    write_map_csv(map, csv_path);
    const MapSummary s = summarize(map);
    maybe_dump(r, dump_path);

    std::cout << "entries=" << s.total << " feasible=" << s.feasible
              << " fraction=" << format_fixed(s.feasible_fraction)
              << " red=" << s.outcome_counts[0] << " yellow=" << s.outcome_counts[1]
              << " green=" << s.outcome_counts[2] << " black=" << s.outcome_counts[3]
              << " dos=" << s.outcome_counts[4] << " best_i_min=" << format_num(s.best.i_min)
              << " best_i_max=" << format_num(s.best.i_max)
              << " best_wavelength=" << format_num(s.best.wavelength_nm)
              << " best_direction=" << to_string(s.best.direction)
              << " best_model=" << to_string(s.best.model)
              << " best_outcome=" << to_string(s.best.outcome)
              << " best_confidence=" << format_fixed(s.best.confidence)
              << " csv=" << csv_path.string();
    if (!heatmap_path.empty()) std::cout << " heatmap=" << heatmap_path.string();
    std::cout << "\n";
    return 0;
}

int cmd_shutter(const std::string& config_path, const std::string& dump_path) {
    ConfigReader r = load_reader(config_path);
    const std::uint64_t seed = r.seed();
    ShutterConfig cfg = shutter_from(r, seed, 964);
    const int frames = int(r.integer("shutter.frames", 50));
    if (frames < 1) throw ConfigError("shutter.frames must be >= 1");

    const int default_light_rows = 100;
    const double default_margin = 1.5;
    const int default_light_top =
        std::max(0, int(std::lround((cfg.n_rows - default_margin * default_light_rows) / 2.0)));
    const PulseTrain pulse = pulse_from(r, cfg, default_light_top, default_light_rows);

    const fs::path csv_path = r.output_file("output.rows_csv", "rows.csv");
    std::ofstream csv(csv_path);
    if (!csv) throw IoError("cannot open rows CSV for writing: " + csv_path.string());
    csv << "frame,row,fraction\n";

    std::vector<double> first;
    bool identical = true;
    int affected_first = 0;
    for (int k = 0; k < frames; ++k) {
        const std::vector<double> fractions = affected_rows(cfg, pulse, std::uint64_t(k));
        for (int row = 0; row < cfg.n_rows; ++row) {
            const double f = fractions[std::size_t(row)];
            if (f > 0.0) csv << k << ',' << row << ',' << format_fixed(f) << '\n';
        }
        if (k == 0) {
            first = fractions;
            for (double f : first)
                if (f > 0.0) ++affected_first;
        } else if (fractions != first) {
            identical = false;
        }
    }
    if (!csv) throw IoError("failed writing rows CSV: " + csv_path.string());
    maybe_dump(r, dump_path);

    std::cout << "frames=" << frames << " n_rows=" << cfg.n_rows
              << " order=" << to_string(cfg.order) << " width=" << format_num(pulse.width)
              << " period=" << format_num(pulse.period) << " phase=" << format_num(pulse.phase)
              << " affected_rows_frame0=" << affected_first << " identical=" << (identical ? 1 : 0)
              << " csv=" << csv_path.string() << "\n";
    return 0;
}

int cmd_defend(const std::string& config_path, const std::string& dump_path) {
    ConfigReader r = load_reader(config_path);
    const std::uint64_t seed = r.seed();
    LoadedScene scene = obtain_scene(r, seed);
    const QECurve curve = QECurve::from_csv(r.input_file("qe.curve"));
    const RecognizerParams recognizer_params = recognizer_from(r);
    const Goal goal = goal_from_string(r.str("defend.goal", "gtor"));

    const RecognitionResult baseline = recognize(scene.image, scene.roi, recognizer_params);
    if (baseline.outcome != goal_truth(goal))
        throw BaselineError("unattacked scene recognized as " +
                            std::string(to_string(baseline.outcome)) + ", expected " +
                            std::string(to_string(goal_truth(goal))));

    ShutterConfig base_cfg = shutter_from(r, seed, scene.image.rows);
    if (base_cfg.n_rows != scene.image.rows)
        throw ConfigError("shutter.n_rows must match the scene's row count for defend");
    const int frames = int(r.integer("shutter.frames", 50));
    if (frames < 1) throw ConfigError("shutter.frames must be >= 1");

    // The defense study injects a light-sized stripe; the central lamp block
    // is the aim point.
    const int default_light_rows = 100;
    const int default_light_top = scene.roi.top + (scene.roi.height - default_light_rows) / 2;
    const PulseTrain pulse = pulse_from(r, base_cfg, default_light_top, default_light_rows);
    const auto [slot0, slot_count] = pulse_slot_span(base_cfg, pulse);

    StripeField field = field_from(r);
    field.region = StripeRegion{slot0, slot_count, scene.image.cols};
    const LaserSpec laser{r.num("laser.wavelength_nm", goal == Goal::GtoR ? 650.0 : 520.0), 1.0};
    const double contig_threshold = r.num("defend.contiguity_threshold", 0.5);

    const fs::path report_path = r.output_file("output.report_csv", "defend_report.csv");
    std::ofstream report(report_path);
    if (!report) throw IoError("cannot open defend report for writing: " + report_path.string());
    report << "order,frame,outcome,confidence,success,longest_run,affected_rows\n";

    const ReadoutOrder orders[] = {ReadoutOrder::Sequential, ReadoutOrder::RandomStart,
                                   ReadoutOrder::RandomPermutation};
    for (ReadoutOrder order : orders) {
        ShutterConfig cfg = base_cfg;
        cfg.order = order;
        int successes = 0;
        std::vector<int> runs;
        double affected_total = 0.0;
        for (int k = 0; k < frames; ++k) {
            const auto detail = affected_rows_detail(cfg, pulse, std::uint64_t(k));
            std::vector<RowIllumination> rows;
            std::vector<double> fractions(detail.size());
            double affected = 0.0;
            for (int row = 0; row < cfg.n_rows; ++row) {
                const auto& d = detail[std::size_t(row)];
                fractions[std::size_t(row)] = d.fraction;
                affected += d.fraction;
                if (d.fraction > 0.0) rows.push_back({row, d.fraction, d.slot});
            }
            const RgbImage attacked =
                render_striped_rows(scene.image, rows, field, laser, curve);
            const RecognitionResult res = recognize(attacked, scene.roi, recognizer_params);
            const bool success = res.outcome == goal_target(goal);
            if (success) ++successes;
            const int longest = stripe_contiguity(fractions, contig_threshold);
            runs.push_back(longest);
            affected_total += affected;
            report << to_string(cfg.order) << ',' << k << ',' << to_string(res.outcome) << ','
                   << format_fixed(res.confidence) << ',' << (success ? 1 : 0) << ',' << longest
                   << ',' << format_fixed(affected) << '\n';
        }
        std::sort(runs.begin(), runs.end());
        const int median_run = runs[runs.size() / 2];
        std::cout << "order=" << to_string(cfg.order) << " frames=" << frames
                  << " successes=" << successes
                  << " success_rate=" << format_fixed(double(successes) / frames)
                  << " median_longest_run=" << median_run
                  << " mean_affected_rows=" << format_fixed(affected_total / frames) << "\n";
    }
    if (!report) throw IoError("failed writing defend report: " + report_path.string());
    maybe_dump(r, dump_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laser color-stripe attack simulator for rolling-shutter cameras"};
    app.require_subcommand(1);

    std::string demosaic_in, demosaic_mode = "direct", demosaic_out;
    auto* demosaic = app.add_subcommand("demosaic", "Demosaic a raw Bayer frame to a PPM image");
    demosaic->add_option("--in", demosaic_in, "Input BAYER8 file")->required();
    demosaic->add_option("--mode", demosaic_mode, "direct|bilinear");
    demosaic->add_option("--out", demosaic_out, "Output PPM path")->required();

    struct ConfigArgs {
        std::string config;
        std::string dump;
    };
    auto add_config_cmd = [&](const char* name, const char* help) {
        auto args = std::make_shared<ConfigArgs>();
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", args->config, "Run configuration file")->required();
        sub->add_option("--dump-config", args->dump,
                        "Write the effective configuration to this path");
        return std::pair{sub, args};
    };

    auto [scene_cmd, scene_args] =
        add_config_cmd("scene", "Generate the synthetic traffic-light scene");
    auto [attack_cmd, attack_args] =
        add_config_cmd("attack", "Render one laser attack and recognize the result");
    auto [search_cmd, search_args] =
        add_config_cmd("search", "Search laser parameters for feasible attacks");
    bool grid_mode = false;
    search_cmd->add_flag("--grid", grid_mode,
                         "Run the coarse parameter grid instead of the refined strength sweep");
    auto [shutter_cmd, shutter_args] =
        add_config_cmd("shutter", "Simulate rolling-shutter exposure against a pulse train");
    auto [defend_cmd, defend_args] =
        add_config_cmd("defend", "Compare readout-order defenses against the attack");

    int rc = 0;
    demosaic->callback([&] { rc = cmd_demosaic(demosaic_in, demosaic_mode, demosaic_out); });
    scene_cmd->callback([&] { rc = cmd_scene(scene_args->config, scene_args->dump); });
    attack_cmd->callback([&] { rc = cmd_attack(attack_args->config, attack_args->dump); });
    search_cmd->callback(
        [&] { rc = cmd_search(search_args->config, grid_mode, search_args->dump); });
    shutter_cmd->callback([&] { rc = cmd_shutter(shutter_args->config, shutter_args->dump); });
    defend_cmd->callback([&] { rc = cmd_defend(defend_args->config, defend_args->dump); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 4;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 4;
    } catch (const BaselineError& e) {
        std::cerr << "baseline error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
