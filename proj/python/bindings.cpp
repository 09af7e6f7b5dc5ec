// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the simulation core. Images cross the boundary as
// numpy arrays: (rows, cols, 3) uint8 for RGB images and (rows, cols) uint8
// for raw Bayer frames.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "stripesim/config.hpp"
#include "stripesim/laser.hpp"
#include "stripesim/raster.hpp"
#include "stripesim/recognize.hpp"
#include "stripesim/rng.hpp"
#include "stripesim/scene.hpp"
#include "stripesim/search.hpp"
#include "stripesim/shutter.hpp"
#include "stripesim/stripe.hpp"

namespace py = pybind11;
using namespace stripesim;

namespace {

using ImageArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

RgbImage image_from_array(const ImageArray& arr) {
    if (arr.ndim() != 3 || arr.shape(2) != 3)
        throw py::value_error("expected a (rows, cols, 3) uint8 array");
    RgbImage img;
    img.rows = int(arr.shape(0));
    img.cols = int(arr.shape(1));
    img.pixels.assign(arr.data(), arr.data() + arr.size());
    return img;
}

py::array_t<std::uint8_t> array_from_image(const RgbImage& img) {
    py::array_t<std::uint8_t> arr({img.rows, img.cols, 3});
    std::copy(img.pixels.begin(), img.pixels.end(), arr.mutable_data());
    return arr;
}

RawBayerFrame frame_from_array(const ImageArray& arr) {
    if (arr.ndim() != 2) throw py::value_error("expected a (rows, cols) uint8 array");
    RawBayerFrame f;
    f.rows = int(arr.shape(0));
    f.cols = int(arr.shape(1));
    f.values.assign(arr.data(), arr.data() + arr.size());
    return f;
}

py::array_t<std::uint8_t> array_from_frame(const RawBayerFrame& f) {
    py::array_t<std::uint8_t> arr({f.rows, f.cols});
    std::copy(f.values.begin(), f.values.end(), arr.mutable_data());
    return arr;
}

SearchContext make_context(const RgbImage& image, const TrafficLightROI& roi,
                           const QECurve& curve, const NoiseParams& noise, double margin,
                           const RecognizerParams& recognizer, int threads) {
    SearchContext ctx{image, roi, curve};
    ctx.noise = noise;
    ctx.margin = margin;
    ctx.recognizer = recognizer;
    ctx.threads = threads;
    return ctx;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Laser color-stripe attack simulation against rolling-shutter cameras";

    // raster ----------------------------------------------------------------
    m.def("demosaic_direct",
          [](const ImageArray& frame) { return array_from_image(demosaic_direct(frame_from_array(frame))); },
          py::arg("frame"), "Nearest-site demosaic of an RGGB frame");
    m.def("demosaic_bilinear",
          [](const ImageArray& frame) { return array_from_image(demosaic_bilinear(frame_from_array(frame))); },
          py::arg("frame"), "Neighborhood-average demosaic of an RGGB frame");
    m.def("read_ppm", [](const std::filesystem::path& p) { return array_from_image(read_ppm(p)); },
          py::arg("path"));
    m.def("write_ppm",
          [](const ImageArray& img, const std::filesystem::path& p) {
              write_ppm(image_from_array(img), p);
          },
          py::arg("image"), py::arg("path"));
    m.def("read_bayer",
          [](const std::filesystem::path& p) { return array_from_frame(read_bayer(p)); },
          py::arg("path"));
    m.def("write_bayer",
          [](const ImageArray& frame, const std::filesystem::path& p) {
              write_bayer(frame_from_array(frame), p);
          },
          py::arg("frame"), py::arg("path"));

    // laser -----------------------------------------------------------------
    py::class_<ChannelGains>(m, "ChannelGains")
        .def_readonly("r", &ChannelGains::r)
        .def_readonly("g", &ChannelGains::g)
        .def_readonly("b", &ChannelGains::b)
        .def("__repr__", [](const ChannelGains& g) {
            return "ChannelGains(r=" + std::to_string(g.r) + ", g=" + std::to_string(g.g) +
                   ", b=" + std::to_string(g.b) + ")";
        });

    py::class_<QECurve>(m, "QECurve")
        .def(py::init([](const std::vector<std::tuple<double, double, double, double, double>>&
                             samples) {
                 std::vector<QESample> converted;
                 converted.reserve(samples.size());
                 for (const auto& [w, r, gr, gb, b] : samples)
                     converted.push_back({w, r, gr, gb, b});
                 return QECurve(std::move(converted));
             }),
             py::arg("samples"),
             "Build from (wavelength_nm, qe_r, qe_gr, qe_gb, qe_b) tuples")
        .def_static("from_csv", &QECurve::from_csv, py::arg("path"))
        .def("at", &QECurve::at, py::arg("wavelength_nm"))
        .def_property_readonly("min_wavelength", &QECurve::min_wavelength)
        .def_property_readonly("max_wavelength", &QECurve::max_wavelength);

    py::class_<LaserSpec>(m, "LaserSpec")
        .def(py::init([](double wavelength_nm, double intensity) {
                 return LaserSpec{wavelength_nm, intensity};
             }),
             py::arg("wavelength_nm"), py::arg("intensity") = 1.0)
        .def_readwrite("wavelength_nm", &LaserSpec::wavelength_nm)
        .def_readwrite("intensity", &LaserSpec::intensity);

    m.def("photon_filter", &photon_filter, py::arg("spec"), py::arg("curve"));
    m.def("stripe_add", &stripe_add, py::arg("original"), py::arg("effect"));
    m.def("dominant_channel", &dominant_channel, py::arg("gains"));

    // stripe ----------------------------------------------------------------
    py::enum_<Direction>(m, "Direction")
        .value("Left", Direction::Left)
        .value("Right", Direction::Right)
        .value("Front", Direction::Front);
    py::enum_<FieldModel>(m, "FieldModel")
        .value("Linear", FieldModel::Linear)
        .value("Sigmoid", FieldModel::Sigmoid)
        .value("Gaussian", FieldModel::Gaussian);

    py::class_<StripeRegion>(m, "StripeRegion")
        .def(py::init([](int top_row, int height, int width) {
                 return StripeRegion{top_row, height, width};
             }),
             py::arg("top_row"), py::arg("height"), py::arg("width"))
        .def_readwrite("top_row", &StripeRegion::top_row)
        .def_readwrite("height", &StripeRegion::height)
        .def_readwrite("width", &StripeRegion::width);

    py::class_<StripeField>(m, "StripeField")
        .def(py::init())
        .def_readwrite("region", &StripeField::region)
        .def_readwrite("direction", &StripeField::direction)
        .def_readwrite("model", &StripeField::model)
        .def_readwrite("i_min", &StripeField::i_min)
        .def_readwrite("i_max", &StripeField::i_max)
        .def_readwrite("alpha1", &StripeField::alpha1)
        .def_readwrite("alpha2", &StripeField::alpha2)
        .def_readwrite("sigma1", &StripeField::sigma1)
        .def_readwrite("sigma2", &StripeField::sigma2)
        .def_readwrite("rho", &StripeField::rho)
        .def("validate", &StripeField::validate);

    m.def("field_intensity", &field_intensity, py::arg("field"), py::arg("x"), py::arg("y"));

    py::class_<NoiseParams>(m, "NoiseParams")
        .def(py::init())
        .def_static("none", &NoiseParams::none)
        .def_readwrite("beta1", &NoiseParams::beta1)
        .def_readwrite("beta2", &NoiseParams::beta2)
        .def_readwrite("n_min", &NoiseParams::n_min)
        .def_readwrite("n_max", &NoiseParams::n_max)
        .def_readwrite("brightness_min", &NoiseParams::brightness_min)
        .def_readwrite("brightness_max", &NoiseParams::brightness_max)
        .def_readwrite("size_min", &NoiseParams::size_min)
        .def_readwrite("size_max", &NoiseParams::size_max)
        .def_readwrite("seed", &NoiseParams::seed);

    py::class_<NoiseRect>(m, "NoiseRect")
        .def_readonly("x", &NoiseRect::x)
        .def_readonly("y", &NoiseRect::y)
        .def_readonly("height", &NoiseRect::height)
        .def_readonly("width", &NoiseRect::width)
        .def_readonly("brightness", &NoiseRect::brightness);

    m.def("sample_noise",
          [](const NoiseParams& params, const StripeRegion& region, Direction direction) {
              return sample_noise(params, region, direction);
          },
          py::arg("params"), py::arg("region"), py::arg("direction"));

    m.def("render_stripe",
          [](const ImageArray& image, const StripeField& field, const LaserSpec& spec,
             const QECurve& curve, const NoiseParams& noise) {
              return array_from_image(
                  render_stripe(image_from_array(image), field, spec, curve, noise));
          },
          py::arg("image"), py::arg("field"), py::arg("spec"), py::arg("curve"),
          py::arg("noise"));

    // shutter ---------------------------------------------------------------
    py::enum_<ReadoutOrder>(m, "ReadoutOrder")
        .value("Sequential", ReadoutOrder::Sequential)
        .value("RandomPermutation", ReadoutOrder::RandomPermutation)
        .value("RandomStart", ReadoutOrder::RandomStart);

    py::class_<ShutterConfig>(m, "ShutterConfig")
        .def(py::init())
        .def_readwrite("n_rows", &ShutterConfig::n_rows)
        .def_readwrite("frame_rate", &ShutterConfig::frame_rate)
        .def_readwrite("exposure", &ShutterConfig::exposure)
        .def_readwrite("order", &ShutterConfig::order)
        .def_readwrite("seed", &ShutterConfig::seed)
        .def("row_time", &ShutterConfig::row_time)
        .def("frame_time", &ShutterConfig::frame_time);

    py::class_<PulseTrain>(m, "PulseTrain")
        .def(py::init())
        .def_readwrite("width", &PulseTrain::width)
        .def_readwrite("period", &PulseTrain::period)
        .def_readwrite("phase", &PulseTrain::phase);

    m.def("readout_schedule", &readout_schedule, py::arg("config"), py::arg("frame_index"));
    m.def("affected_rows", &affected_rows, py::arg("config"), py::arg("pulses"),
          py::arg("frame_index"));
    m.def("plan_pulse", &plan_pulse, py::arg("config"), py::arg("light_top_row"),
          py::arg("light_rows"), py::arg("margin") = 1.5);
    m.def("pulse_slot_span", &pulse_slot_span, py::arg("config"), py::arg("pulses"));
    m.def("stripe_contiguity", &stripe_contiguity, py::arg("overlaps"), py::arg("threshold"));

    // recognize ---------------------------------------------------------------
    py::enum_<Outcome>(m, "Outcome")
        .value("Red", Outcome::Red)
        .value("Yellow", Outcome::Yellow)
        .value("Green", Outcome::Green)
        .value("Black", Outcome::Black)
        .value("DoS", Outcome::DoS);

    py::class_<Hsv>(m, "Hsv")
        .def_readonly("hue", &Hsv::hue)
        .def_readonly("saturation", &Hsv::saturation)
        .def_readonly("value", &Hsv::value);
    m.def("rgb_to_hsv", &rgb_to_hsv, py::arg("r"), py::arg("g"), py::arg("b"));

    py::class_<LampBox>(m, "LampBox")
        .def(py::init([](Outcome color, int top, int left, int height, int width) {
                 return LampBox{color, top, left, height, width};
             }),
             py::arg("color"), py::arg("top"), py::arg("left"), py::arg("height"),
             py::arg("width"))
        .def_readwrite("color", &LampBox::color)
        .def_readwrite("top", &LampBox::top)
        .def_readwrite("left", &LampBox::left)
        .def_readwrite("height", &LampBox::height)
        .def_readwrite("width", &LampBox::width);

    py::class_<TrafficLightROI>(m, "TrafficLightROI")
        .def(py::init())
        .def_readwrite("top", &TrafficLightROI::top)
        .def_readwrite("left", &TrafficLightROI::left)
        .def_readwrite("height", &TrafficLightROI::height)
        .def_readwrite("width", &TrafficLightROI::width)
        .def_readwrite("lamps", &TrafficLightROI::lamps);
    m.def("read_roi_csv", &read_roi_csv, py::arg("path"));
    m.def("write_roi_csv", &write_roi_csv, py::arg("roi"), py::arg("path"));

    py::class_<RecognizerParams>(m, "RecognizerParams")
        .def(py::init())
        .def_readwrite("washed_value_min", &RecognizerParams::washed_value_min)
        .def_readwrite("washed_saturation_max", &RecognizerParams::washed_saturation_max)
        .def_readwrite("washed_fraction_dos", &RecognizerParams::washed_fraction_dos)
        .def_readwrite("value_stddev_min", &RecognizerParams::value_stddev_min)
        .def_readwrite("mask_saturation_min", &RecognizerParams::mask_saturation_min)
        .def_readwrite("mask_value_min", &RecognizerParams::mask_value_min)
        .def_readwrite("decision_threshold", &RecognizerParams::decision_threshold);

    py::class_<Detection>(m, "Detection")
        .def_readonly("detected", &Detection::detected)
        .def_readonly("confidence", &Detection::confidence);

    py::class_<RecognitionResult>(m, "RecognitionResult")
        .def_readonly("outcome", &RecognitionResult::outcome)
        .def_readonly("confidence", &RecognitionResult::confidence)
        .def_readonly("score_red", &RecognitionResult::score_red)
        .def_readonly("score_yellow", &RecognitionResult::score_yellow)
        .def_readonly("score_green", &RecognitionResult::score_green)
        .def("__repr__", [](const RecognitionResult& r) {
            return "RecognitionResult(outcome=" + std::string(to_string(r.outcome)) +
                   ", confidence=" + std::to_string(r.confidence) + ")";
        });

    m.def("detect",
          [](const ImageArray& image, const TrafficLightROI& roi,
             const RecognizerParams& params) {
              return detect(image_from_array(image), roi, params);
          },
          py::arg("image"), py::arg("roi"), py::arg("params") = RecognizerParams{});
    m.def("classify",
          [](const ImageArray& image, const TrafficLightROI& roi,
             const RecognizerParams& params) {
              return classify(image_from_array(image), roi, params);
          },
          py::arg("image"), py::arg("roi"), py::arg("params") = RecognizerParams{});
    m.def("recognize",
          [](const ImageArray& image, const TrafficLightROI& roi,
             const RecognizerParams& params) {
              return recognize(image_from_array(image), roi, params);
          },
          py::arg("image"), py::arg("roi"), py::arg("params") = RecognizerParams{});

    // scene -------------------------------------------------------------------
    py::enum_<LitLamp>(m, "LitLamp")
        .value("Red", LitLamp::Red)
        .value("Yellow", LitLamp::Yellow)
        .value("Green", LitLamp::Green)
        .value("NoneLit", LitLamp::None);
    py::enum_<BackgroundKind>(m, "BackgroundKind")
        .value("Sky", BackgroundKind::Sky)
        .value("Clutter", BackgroundKind::Clutter);
    py::enum_<LightPosition>(m, "LightPosition")
        .value("Left", LightPosition::Left)
        .value("MidLeft", LightPosition::MidLeft)
        .value("Mid", LightPosition::Mid)
        .value("MidRight", LightPosition::MidRight)
        .value("Right", LightPosition::Right);

    py::class_<SceneSpec>(m, "SceneSpec")
        .def(py::init())
        .def_readwrite("rows", &SceneSpec::rows)
        .def_readwrite("cols", &SceneSpec::cols)
        .def_readwrite("horizontal_center", &SceneSpec::horizontal_center)
        .def_readwrite("vertical_center", &SceneSpec::vertical_center)
        .def_readwrite("lamp_box", &SceneSpec::lamp_box)
        .def_readwrite("lamp_pad", &SceneSpec::lamp_pad)
        .def_readwrite("lamp_radius", &SceneSpec::lamp_radius)
        .def_readwrite("lit", &SceneSpec::lit)
        .def_readwrite("background", &SceneSpec::background)
        .def_readwrite("seed", &SceneSpec::seed);

    m.def("generate_scene",
          [](const SceneSpec& spec) {
              Scene s = generate(spec);
              return py::make_tuple(array_from_image(s.image), s.roi);
          },
          py::arg("spec"), "Returns (image, roi)");
    m.def("place_scene",
          [](const SceneSpec& spec, LightPosition position, double scale) {
              Scene s = place(spec, position, scale);
              return py::make_tuple(array_from_image(s.image), s.roi);
          },
          py::arg("spec"), py::arg("position"), py::arg("scale") = 1.0);

    // search ------------------------------------------------------------------
    py::enum_<Goal>(m, "Goal").value("RtoG", Goal::RtoG).value("GtoR", Goal::GtoR);
    m.def("goal_truth", &goal_truth);
    m.def("goal_target", &goal_target);

    py::class_<SearchGrid>(m, "SearchGrid")
        .def(py::init())
        .def_static("red_laser_default", &SearchGrid::red_laser_default)
        .def_static("green_laser_default", &SearchGrid::green_laser_default)
        .def_readwrite("i_min_values", &SearchGrid::i_min_values)
        .def_readwrite("i_max_values", &SearchGrid::i_max_values)
        .def_readwrite("wavelengths", &SearchGrid::wavelengths)
        .def_readwrite("directions", &SearchGrid::directions)
        .def_readwrite("models", &SearchGrid::models)
        .def_readwrite("goal", &SearchGrid::goal);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init())
        .def_readwrite("i_min_start", &SweepSpec::i_min_start)
        .def_readwrite("i_min_stop", &SweepSpec::i_min_stop)
        .def_readwrite("i_min_step", &SweepSpec::i_min_step)
        .def_readwrite("i_max_start", &SweepSpec::i_max_start)
        .def_readwrite("i_max_stop", &SweepSpec::i_max_stop)
        .def_readwrite("i_max_step", &SweepSpec::i_max_step)
        .def_readwrite("wavelength_nm", &SweepSpec::wavelength_nm)
        .def_readwrite("direction", &SweepSpec::direction)
        .def_readwrite("model", &SweepSpec::model)
        .def_readwrite("goal", &SweepSpec::goal);

    py::class_<SearchEntry>(m, "SearchEntry")
        .def_readonly("i_min", &SearchEntry::i_min)
        .def_readonly("i_max", &SearchEntry::i_max)
        .def_readonly("wavelength_nm", &SearchEntry::wavelength_nm)
        .def_readonly("direction", &SearchEntry::direction)
        .def_readonly("model", &SearchEntry::model)
        .def_readonly("outcome", &SearchEntry::outcome)
        .def_readonly("confidence", &SearchEntry::confidence);

    py::class_<FeasibilityMap>(m, "FeasibilityMap")
        .def_readonly("goal", &FeasibilityMap::goal)
        .def_readonly("entries", &FeasibilityMap::entries)
        .def_readonly("outcome_counts", &FeasibilityMap::outcome_counts)
        .def_readonly("feasible_count", &FeasibilityMap::feasible_count)
        .def_readonly("feasible_fraction", &FeasibilityMap::feasible_fraction);

    py::class_<MapSummary>(m, "MapSummary")
        .def_readonly("outcome_counts", &MapSummary::outcome_counts)
        .def_readonly("total", &MapSummary::total)
        .def_readonly("feasible", &MapSummary::feasible)
        .def_readonly("feasible_fraction", &MapSummary::feasible_fraction)
        .def_readonly("best", &MapSummary::best);

    m.def("covering_stripe_region", &covering_stripe_region, py::arg("roi"), py::arg("margin"),
          py::arg("image_rows"), py::arg("image_cols"));

    m.def("run_grid",
          [](const ImageArray& image, const TrafficLightROI& roi, const QECurve& curve,
             const SearchGrid& grid, const NoiseParams& noise, double margin,
             const RecognizerParams& recognizer, int threads) {
              const RgbImage img = image_from_array(image);
              return run_grid(make_context(img, roi, curve, noise, margin, recognizer, threads),
                              grid);
          },
          py::arg("image"), py::arg("roi"), py::arg("curve"), py::arg("grid"),
          py::arg("noise") = NoiseParams::none(), py::arg("margin") = 1.5,
          py::arg("recognizer") = RecognizerParams{}, py::arg("threads") = 0);

    m.def("refined_sweep",
          [](const ImageArray& image, const TrafficLightROI& roi, const QECurve& curve,
             const SweepSpec& sweep, const NoiseParams& noise, double margin,
             const RecognizerParams& recognizer, int threads) {
              const RgbImage img = image_from_array(image);
              return refined_sweep(
                  make_context(img, roi, curve, noise, margin, recognizer, threads), sweep);
          },
          py::arg("image"), py::arg("roi"), py::arg("curve"), py::arg("sweep"),
          py::arg("noise") = NoiseParams::none(), py::arg("margin") = 1.5,
          py::arg("recognizer") = RecognizerParams{}, py::arg("threads") = 0);

    m.def("summarize", &summarize, py::arg("map"));
    m.def("write_map_csv", &write_map_csv, py::arg("map"), py::arg("path"));
    m.def("write_sweep_heatmap_ppm", &write_sweep_heatmap_ppm, py::arg("map"), py::arg("sweep"),
          py::arg("path"), py::arg("cell_px") = 16);

    // errors map onto natural python exceptions
    py::register_exception<IoError>(m, "IoError", PyExc_IOError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<BaselineError>(m, "BaselineError", PyExc_RuntimeError);
}
