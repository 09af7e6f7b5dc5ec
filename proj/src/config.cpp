// SPDX-License-Identifier: Apache-2.0
#include "stripesim/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stripesim/errors.hpp"

namespace stripesim {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

} // namespace

RunConfig RunConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str(), path.string());
}

RunConfig RunConfig::from_string(std::string_view text, std::string_view origin) {
    RunConfig cfg;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) +
                                  ": unterminated [section] header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) +
                                  ": empty section name");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) +
                              ": empty key");
        cfg.values_[section.empty() ? key : section + "." + key] = value;
    }
    return cfg;
}

bool RunConfig::has(std::string_view key) const { return values_.find(key) != values_.end(); }

std::string RunConfig::get_str(std::string_view key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError("missing config key '" + std::string(key) + "'");
    return it->second;
}

std::string RunConfig::get_str(std::string_view key, std::string_view fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? std::string(fallback) : it->second;
}

double RunConfig::get_num(std::string_view key) const {
    const std::string v = get_str(key);
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + std::string(key) + "' is not a number: '" + v + "'");
    }
}

double RunConfig::get_num(std::string_view key, double fallback) const {
    return has(key) ? get_num(key) : fallback;
}

std::int64_t RunConfig::get_int(std::string_view key) const {
    const std::string v = get_str(key);
    try {
        std::size_t used = 0;
        const long long i = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + std::string(key) + "' is not an integer: '" + v +
                          "'");
    }
}

std::int64_t RunConfig::get_int(std::string_view key, std::int64_t fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool RunConfig::get_bool(std::string_view key) const {
    std::string v = get_str(key);
    for (char& c : v) c = char(std::tolower(static_cast<unsigned char>(c)));
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + std::string(key) + "' is not a boolean: '" + v + "'");
}

bool RunConfig::get_bool(std::string_view key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
}

std::vector<double> RunConfig::get_num_list(std::string_view key) const {
    std::vector<double> out;
    for (const std::string& item : get_str_list(key)) {
        try {
            std::size_t used = 0;
            const double d = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(d);
        } catch (const std::exception&) {
            throw ConfigError("config key '" + std::string(key) +
                              "' has a non-numeric list item: '" + item + "'");
        }
    }
    return out;
}

std::vector<std::string> RunConfig::get_str_list(std::string_view key) const {
    const std::string v = get_str(key);
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) {
        const std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    if (out.empty())
        throw ConfigError("config key '" + std::string(key) + "' has an empty list");
    return out;
}

void RunConfig::set(std::string_view key, std::string_view value) {
    values_[std::string(key)] = std::string(value);
}

void RunConfig::set_num(std::string_view key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    set(key, buf);
}

void RunConfig::set_int(std::string_view key, std::int64_t value) {
    set(key, std::to_string(value));
}

void RunConfig::set_bool(std::string_view key, bool value) {
    set(key, value ? "true" : "false");
}

std::uint64_t RunConfig::seed() const {
    if (!has("run.seed"))
        throw ConfigError("missing config key 'run.seed' (a seed is mandatory for "
                          "stochastic commands)");
    const std::int64_t s = get_int("run.seed");
    return std::uint64_t(s);
}

std::string RunConfig::dump() const {
    std::ostringstream out;
    std::string current_section;
    bool first = true;
    for (const auto& [key, value] : values_) { // std::map iterates sorted
        const std::size_t dot = key.find('.');
        const std::string section = dot == std::string::npos ? "" : key.substr(0, dot);
        const std::string name = dot == std::string::npos ? key : key.substr(dot + 1);
        if (section != current_section || first) {
            if (!first) out << '\n';
            if (!section.empty()) out << '[' << section << "]\n";
            current_section = section;
            first = false;
        }
        out << name << " = " << value << '\n';
    }
    return out.str();
}

} // namespace stripesim
