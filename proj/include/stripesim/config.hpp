// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stripesim {

// Flat key = value run configuration with [section] headers. Keys address
// values as "section.key"; '#' starts a comment; later assignments win.
class RunConfig {
public:
    RunConfig() = default;

    static RunConfig load(const std::filesystem::path& path); // IoError / ConfigError
    static RunConfig from_string(std::string_view text, std::string_view origin = "<string>");

    bool has(std::string_view key) const;

    std::string get_str(std::string_view key) const; // ConfigError when missing
    std::string get_str(std::string_view key, std::string_view fallback) const;
    double get_num(std::string_view key) const;
    double get_num(std::string_view key, double fallback) const;
    std::int64_t get_int(std::string_view key) const;
    std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
    bool get_bool(std::string_view key) const;
    bool get_bool(std::string_view key, bool fallback) const;
    std::vector<double> get_num_list(std::string_view key) const; // comma separated
    std::vector<std::string> get_str_list(std::string_view key) const;

    void set(std::string_view key, std::string_view value);
    void set_num(std::string_view key, double value);
    void set_int(std::string_view key, std::int64_t value);
    void set_bool(std::string_view key, bool value);

    // Mandatory global seed for stochastic commands ("run.seed").
    std::uint64_t seed() const;

    // Parseable text form, sections and keys sorted, suitable for re-running.
    std::string dump() const;

private:
    std::map<std::string, std::string, std::less<>> values_;
};

} // namespace stripesim
