#include "randmil/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace randmil {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_text(buffer.str(), path);
}

ConfigFile ConfigFile::parse_text(const std::string& text, const std::string& origin) {
    ConfigFile out;
    out.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    std::string current;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') {
                throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                         ": unterminated section header");
            }
            current = trim(body.substr(1, body.size() - 2));
            if (current.empty()) {
                throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                         ": empty section name");
            }
            out.sections_[current];
            continue;
        }
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        }
        if (current.empty()) {
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": key outside any [section]");
        }
        const std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": empty key or value");
        }
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        out.sections_[current][key] = value;
    }
    return out;
}

bool ConfigFile::has_section(const std::string& section) const {
    return sections_.count(section) != 0;
}

bool ConfigFile::has_key(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) != 0;
}

const std::map<std::string, std::string>& ConfigFile::section(const std::string& name) const {
    auto it = sections_.find(name);
    if (it == sections_.end()) {
        throw std::runtime_error(origin_ + ": missing [" + name + "] section");
    }
    return it->second;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key) const {
    const auto& sec = this->section(section);
    auto it = sec.find(key);
    if (it == sec.end()) {
        throw std::runtime_error(origin_ + ": [" + section + "] is missing key '" + key + "'");
    }
    return it->second;
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const {
    const std::string raw = get_string(section, key);
    double value = 0.0;
    const auto result = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (result.ec != std::errc{} || result.ptr != raw.data() + raw.size()) {
        throw std::runtime_error(origin_ + ": [" + section + "] key '" + key +
                                 "' is not a number: '" + raw + "'");
    }
    return value;
}

long long ConfigFile::get_int(const std::string& section, const std::string& key) const {
    const std::string raw = get_string(section, key);
    long long value = 0;
    const auto result = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (result.ec != std::errc{} || result.ptr != raw.data() + raw.size()) {
        throw std::runtime_error(origin_ + ": [" + section + "] key '" + key +
                                 "' is not an integer: '" + raw + "'");
    }
    return value;
}

std::uint64_t ConfigFile::get_u64(const std::string& section, const std::string& key) const {
    const std::string raw = get_string(section, key);
    std::uint64_t value = 0;
    const auto result = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (result.ec != std::errc{} || result.ptr != raw.data() + raw.size()) {
        throw std::runtime_error(origin_ + ": [" + section + "] key '" + key +
                                 "' is not a nonnegative integer: '" + raw + "'");
    }
    return value;
}

namespace {

const char* kProblemParamKeys[] = {"a", "b", "x0", "T", "mu", "w1", "w2", "gamma", "kink"};

bool is_problem_param(const std::string& key) {
    return std::any_of(std::begin(kProblemParamKeys), std::end(kProblemParamKeys),
                       [&](const char* k) { return key == k; });
}

}  // namespace

ExperimentConfig experiment_config_from(const ConfigFile& config, const std::string& section) {
    ExperimentConfig out;
    const auto& sec = config.section(section);
    for (const auto& [key, value] : sec) {
        (void)value;
        static const char* known[] = {"problem",   "schemes", "n_min",  "n_max",
                                      "n_ref",     "reference", "samples", "p",
                                      "seed",      "workers", "metric"};
        const bool ok = is_problem_param(key) ||
                        std::any_of(std::begin(known), std::end(known),
                                    [&](const char* k) { return key == k; });
        if (!ok) {
            throw std::runtime_error("[" + section + "] has unknown key '" + key + "'");
        }
    }

    if (config.has_key(section, "problem")) out.problem = config.get_string(section, "problem");
    for (const char* key : kProblemParamKeys) {
        if (config.has_key(section, key)) {
            out.problem_params[key] = config.get_double(section, key);
        }
    }
    if (config.has_key(section, "schemes")) {
        out.schemes.clear();
        std::istringstream list(config.get_string(section, "schemes"));
        std::string name;
        while (std::getline(list, name, ',')) {
            const std::string trimmed = trim(name);
            if (!trimmed.empty()) out.schemes.push_back(scheme_from_name(trimmed));
        }
    }
    if (config.has_key(section, "n_min")) out.n_min = static_cast<int>(config.get_int(section, "n_min"));
    if (config.has_key(section, "n_max")) out.n_max = static_cast<int>(config.get_int(section, "n_max"));
    if (config.has_key(section, "n_ref")) out.n_ref = static_cast<int>(config.get_int(section, "n_ref"));
    if (config.has_key(section, "reference")) {
        const std::string ref = config.get_string(section, "reference");
        if (ref == "exact-oracle") {
            out.reference = ReferenceKind::ExactOracle;
        } else if (ref == "randomized-milstein") {
            out.reference = ReferenceKind::FineRandomizedMilstein;
        } else {
            throw std::runtime_error("[" + section + "] unknown reference '" + ref +
                                     "' (use exact-oracle or randomized-milstein)");
        }
    }
    if (config.has_key(section, "samples")) {
        out.samples = static_cast<std::size_t>(config.get_int(section, "samples"));
    }
    if (config.has_key(section, "p")) out.p = config.get_double(section, "p");
    if (config.has_key(section, "seed")) out.seed = config.get_u64(section, "seed");
    if (config.has_key(section, "workers")) {
        out.workers = static_cast<int>(config.get_int(section, "workers"));
    }
    if (config.has_key(section, "metric")) {
        const std::string metric = config.get_string(section, "metric");
        if (metric == "terminal") {
            out.max_norm_metric = false;
        } else if (metric == "max") {
            out.max_norm_metric = true;
        } else {
            throw std::runtime_error("[" + section + "] unknown metric '" + metric +
                                     "' (use terminal or max)");
        }
    }
    return out;
}

QuadratureConfig quadrature_config_from(const ConfigFile& config) {
    QuadratureConfig out;
    const std::string section = "quadrature";
    const auto& sec = config.section(section);
    for (const auto& [key, value] : sec) {
        (void)value;
        static const char* known[] = {"gamma", "kink", "T",    "n_min",  "n_max",
                                      "reps",  "p",    "seed", "workers"};
        if (!std::any_of(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; })) {
            throw std::runtime_error("[quadrature] has unknown key '" + key + "'");
        }
    }
    if (config.has_key(section, "gamma")) out.gamma = config.get_double(section, "gamma");
    if (config.has_key(section, "kink")) out.kink = config.get_double(section, "kink");
    if (config.has_key(section, "T")) out.T = config.get_double(section, "T");
    if (config.has_key(section, "n_min")) out.n_min = static_cast<int>(config.get_int(section, "n_min"));
    if (config.has_key(section, "n_max")) out.n_max = static_cast<int>(config.get_int(section, "n_max"));
    if (config.has_key(section, "reps")) {
        out.reps = static_cast<std::size_t>(config.get_int(section, "reps"));
    }
    if (config.has_key(section, "p")) out.p = config.get_double(section, "p");
    if (config.has_key(section, "seed")) out.seed = config.get_u64(section, "seed");
    if (config.has_key(section, "workers")) {
        out.workers = static_cast<int>(config.get_int(section, "workers"));
    }
    if (!(out.gamma > 0.0) || out.gamma > 1.0) {
        throw std::runtime_error("[quadrature] gamma must lie in (0, 1]");
    }
    if (!(out.kink > 0.0) || !(out.kink < out.T)) {
        throw std::runtime_error("[quadrature] kink must lie in (0, T)");
    }
    if (out.n_min > out.n_max || out.n_min < 0) {
        throw std::runtime_error("[quadrature] need 0 <= n_min <= n_max");
    }
    return out;
}

}  // namespace randmil
