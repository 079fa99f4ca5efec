#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "randmil/harness.hpp"

namespace randmil {

/// Flat key/value config file with TOML-style sections:
///   [convergence]
///   problem = "gbm"
///   n_min = 4
/// Values are quoted strings, numbers or booleans; '#' starts a comment.
/// One file can hold several sections; each CLI subcommand reads its own.
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_text(const std::string& text, const std::string& origin);

    bool has_section(const std::string& section) const;
    bool has_key(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key) const;
    long long get_int(const std::string& section, const std::string& key) const;
    std::uint64_t get_u64(const std::string& section, const std::string& key) const;

    const std::map<std::string, std::string>& section(const std::string& name) const;

private:
    std::string origin_;
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Quadrature-study settings ([quadrature] section).
struct QuadratureConfig {
    double gamma = 0.5;
    double kink = 1.0 / 3.0;
    double T = 1.0;
    int n_min = 2;
    int n_max = 12;
    std::size_t reps = 1000;
    double p = 2.0;
    std::uint64_t seed = 0;
    int workers = 1;
};

/// Builds an ExperimentConfig from one of the study sections
/// ("convergence", "timing" or "residual"). Unknown keys are rejected.
ExperimentConfig experiment_config_from(const ConfigFile& config, const std::string& section);

QuadratureConfig quadrature_config_from(const ConfigFile& config);

}  // namespace randmil
