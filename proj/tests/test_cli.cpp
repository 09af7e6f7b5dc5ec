// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line tool, driven through the shell.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "demosaic_reference.hpp"
#include "stripesim/raster.hpp"
#include "test_helpers.hpp"

namespace fs = std::filesystem;
using namespace stripesim;

namespace {

std::string cli_path() {
    const char* env = std::getenv("STRIPESIM_CLI");
    REQUIRE_MESSAGE(env != nullptr, "STRIPESIM_CLI must point at the stripesim binary");
    return env;
}

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args, const fs::path& workdir) {
    fs::create_directories(workdir);
    const fs::path out_file = workdir / "_stdout.txt";
    const std::string cmd = "cd '" + workdir.string() + "' && '" + cli_path() + "' " + args +
                            " > _stdout.txt 2> _stderr.txt";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream buf;
    buf << in.rdbuf();
    return {WEXITSTATUS(status), buf.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = test_helpers::tmp_dir() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("cli demosaic matches the committed golden images") {
    const fs::path dir = fresh_dir("cli_demosaic");
    const fs::path fixture = test_helpers::data_dir() / "bayer_8x8.braw";

    auto res = run_cli("demosaic --in '" + fixture.string() + "' --mode direct --out direct.ppm",
                       dir);
    CHECK(res.exit_code == 0);
    CHECK(slurp(dir / "direct.ppm") ==
          slurp(test_helpers::data_dir() / "golden_direct_8x8.ppm"));

    res = run_cli("demosaic --in '" + fixture.string() + "' --mode bilinear --out bl.ppm", dir);
    CHECK(res.exit_code == 0);
    CHECK(slurp(dir / "bl.ppm") ==
          slurp(test_helpers::data_dir() / "golden_bilinear_8x8.ppm"));

    // The goldens themselves must equal the naive reference output.
    const RawBayerFrame frame = read_bayer(fixture);
    CHECK(read_ppm(test_helpers::data_dir() / "golden_direct_8x8.ppm") ==
          demosaic_reference::direct(frame));
    CHECK(read_ppm(test_helpers::data_dir() / "golden_bilinear_8x8.ppm") ==
          demosaic_reference::bilinear(frame));
}

TEST_CASE("cli demosaic reports a missing input with exit code 2") {
    const fs::path dir = fresh_dir("cli_missing");
    const auto res = run_cli("demosaic --in nope.braw --mode direct --out x.ppm", dir);
    CHECK(res.exit_code == 2);
    CHECK_FALSE(slurp(dir / "_stderr.txt").empty());
}

TEST_CASE("cli attack: zero strength keeps the ground truth, defaults spoof it") {
    const fs::path dir = fresh_dir("cli_attack");
    const fs::path qe = test_helpers::data_dir() / "mt9p006_qe.csv";
    {
        std::ofstream cfg(dir / "zero.conf");
        cfg << "[run]\nseed = 1\n[scene]\nlit = green\n[qe]\ncurve = " << qe.string()
            << "\n[stripe]\ni_min = 0\ni_max = 0\n[noise]\nenabled = false\n";
    }
    auto res = run_cli("attack --config zero.conf", dir);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("outcome=Green") != std::string::npos);

    {
        std::ofstream cfg(dir / "spoof.conf");
        cfg << "[run]\nseed = 1\n[scene]\nlit = green\n[qe]\ncurve = " << qe.string()
            << "\n[stripe]\ni_min = 0\ni_max = 1100\n";
    }
    res = run_cli("attack --config spoof.conf", dir);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("outcome=Red") != std::string::npos);

    // Extreme strength washes the scene out.
    {
        std::ofstream cfg(dir / "dos.conf");
        cfg << "[run]\nseed = 1\n[scene]\nlit = green\n[qe]\ncurve = " << qe.string()
            << "\n[stripe]\ni_min = 100000\ni_max = 100000\n";
    }
    res = run_cli("attack --config dos.conf", dir);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("outcome=DoS") != std::string::npos);
}

TEST_CASE("cli attack: a dark scene fails the baseline with exit code 3") {
    const fs::path dir = fresh_dir("cli_baseline");
    const fs::path qe = test_helpers::data_dir() / "mt9p006_qe.csv";
    {
        // A lamp disc this small stays below the decision threshold, so the
        // lit green scene recognizes as Black and the baseline is invalid.
        std::ofstream cfg(dir / "bad.conf");
        cfg << "[run]\nseed = 1\n[scene]\nlit = green\nlamp_radius = 12\n[qe]\ncurve = "
            << qe.string() << "\n";
    }
    const auto res = run_cli("attack --config bad.conf", dir);
    CHECK(res.exit_code == 3);
}

TEST_CASE("cli rejects bad configs with exit code 4") {
    const fs::path dir = fresh_dir("cli_badcfg");
    std::ofstream(dir / "broken.conf") << "[run\nseed = 1\n";
    auto res = run_cli("attack --config broken.conf", dir);
    CHECK(res.exit_code == 4);

    std::ofstream(dir / "noseed.conf") << "[scene]\nlit = green\n";
    res = run_cli("attack --config noseed.conf", dir);
    CHECK(res.exit_code == 4);

    // Empty grid axis.
    const fs::path qe = test_helpers::data_dir() / "mt9p006_qe.csv";
    {
        std::ofstream cfg(dir / "grid.conf");
        cfg << "[run]\nseed = 1\n[scene]\nlit = green\n[qe]\ncurve = " << qe.string()
            << "\n[grid]\nwavelengths = \n";
    }
    res = run_cli("search --grid --config grid.conf", dir);
    CHECK(res.exit_code == 4);

    res = run_cli("attack --config does_not_exist.conf", dir);
    CHECK(res.exit_code == 2);
}

TEST_CASE("cli search sweep writes 49 entries plus a heatmap") {
    const fs::path dir = fresh_dir("cli_sweep");
    const auto res =
        run_cli("search --config '" + (test_helpers::data_dir() / "sweep_gtor.conf").string() +
                    "'",
                dir);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("entries=49") != std::string::npos);

    std::ifstream csv(dir / "out/sweep.csv");
    int lines = 0;
    std::string line;
    while (std::getline(csv, line)) ++lines;
    CHECK(lines == 50); // header + 49 entries
    CHECK(fs::exists(dir / "out/sweep_heatmap.ppm"));
}

TEST_CASE("cli runs are bitwise reproducible, including through a config dump") {
    const fs::path dir_a = fresh_dir("cli_repro_a");
    const fs::path dir_b = fresh_dir("cli_repro_b");
    const std::string cfg = (test_helpers::data_dir() / "attack_gtor.conf").string();

    const auto a = run_cli("attack --config '" + cfg + "' --dump-config effective.conf", dir_a);
    const auto b = run_cli("attack --config '" + cfg + "'", dir_b);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(slurp(dir_a / "out/attacked.ppm") == slurp(dir_b / "out/attacked.ppm"));

    // Re-running from the dumped effective config reproduces the outputs.
    const fs::path dir_c = fresh_dir("cli_repro_c");
    fs::copy_file(dir_a / "effective.conf", dir_c / "effective.conf");
    const auto c = run_cli("attack --config effective.conf", dir_c);
    REQUIRE(c.exit_code == 0);
    CHECK(c.output == a.output);
    CHECK(slurp(dir_c / "out/attacked.ppm") == slurp(dir_a / "out/attacked.ppm"));
}

TEST_CASE("cli shutter reports a stabilized stripe; defend defeats the permutation") {
    const fs::path dir = fresh_dir("cli_shutter");
    auto res = run_cli(
        "shutter --config '" + (test_helpers::data_dir() / "shutter_seq.conf").string() + "'",
        dir);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("identical=1") != std::string::npos);
    CHECK(res.output.find("affected_rows_frame0=150") != std::string::npos);

    res = run_cli(
        "defend --config '" + (test_helpers::data_dir() / "defend_gtor.conf").string() + "'",
        dir);
    CHECK(res.exit_code == 0);
    std::istringstream lines(res.output);
    std::string line;
    bool saw_permutation = false;
    bool saw_sequential = false;
    while (std::getline(lines, line)) {
        if (line.find("order=RandomPermutation") != std::string::npos) {
            saw_permutation = true;
            CHECK(line.find(" successes=0 ") != std::string::npos);
        }
        if (line.find("order=Sequential") != std::string::npos) {
            saw_sequential = true;
            CHECK(line.find(" successes=50 ") != std::string::npos);
            CHECK(line.find(" median_longest_run=150") != std::string::npos);
        }
    }
    CHECK(saw_permutation);
    CHECK(saw_sequential);
}
