#include "randmil/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "randmil/config.hpp"
#include "randmil/quadrature.hpp"
#include "randmil/report_io.hpp"

namespace randmil::cli {

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::size_t> samples;
    std::optional<double> p;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "experiment config file")->required();
    cmd->add_option("--out", flags.out_dir, "output directory (created if missing)");
    cmd->add_option("--seed", flags.seed, "master seed (overrides the config; default 0)");
    cmd->add_option("--workers", flags.workers,
                    "worker threads (overrides config and RANDMIL_WORKERS)");
    cmd->add_option("--samples", flags.samples, "Monte Carlo sample count override");
    cmd->add_option("--p", flags.p, "L^p exponent override (p >= 2)");
}

int env_workers() {
    if (const char* env = std::getenv("RANDMIL_WORKERS")) {
        const int value = std::atoi(env);
        if (value >= 1) return value;
    }
    return 0;
}

void apply_overrides(const CommonFlags& flags, std::uint64_t& seed, int& workers) {
    if (flags.seed) seed = *flags.seed;
    if (flags.workers) {
        workers = *flags.workers;
    } else if (const int env = env_workers(); env > 0) {
        workers = env;
    }
}

std::string output_path(const CommonFlags& flags, const std::string& stem,
                        const std::string& ext) {
    std::filesystem::create_directories(flags.out_dir);
    return (std::filesystem::path(flags.out_dir) / (stem + ext)).string();
}

void write_outputs(const ErrorReport& report, const CommonFlags& flags,
                   const std::string& stem) {
    const std::string csv = output_path(flags, stem, ".csv");
    const std::string svg = output_path(flags, stem, ".svg");
    emit_csv(report, csv);
    emit_svg(report, svg);
    std::cout << "wrote " << csv << " and " << svg << '\n';
    for (const auto& fit : report.fits) {
        std::cout << "  " << fit.scheme << ": eoc slope " << format_double(fit.slope) << '\n';
    }
}

int run_experiment(const CommonFlags& flags, const std::string& section) {
    const ConfigFile file = ConfigFile::parse_file(flags.config_path);
    ExperimentConfig config = experiment_config_from(file, section);
    apply_overrides(flags, config.seed, config.workers);
    if (flags.samples) config.samples = *flags.samples;
    if (flags.p) config.p = *flags.p;
    config.validate();

    ErrorReport report;
    if (section == "convergence") {
        report = strong_convergence_study(config);
    } else if (section == "timing") {
        report = work_precision_study(config);
    } else {
        report = residual_decay_study(config);
    }
    write_outputs(report, flags, section);
    return 0;
}

int run_quadrature(const CommonFlags& flags) {
    const ConfigFile file = ConfigFile::parse_file(flags.config_path);
    QuadratureConfig config = quadrature_config_from(file);
    if (flags.seed) config.seed = *flags.seed;
    if (flags.workers) {
        config.workers = *flags.workers;
    } else if (const int env = env_workers(); env > 0) {
        config.workers = env;
    }
    if (flags.samples) config.reps = *flags.samples;
    if (flags.p) config.p = *flags.p;

    const HolderFunction family{config.gamma, config.kink};
    std::vector<TemporalGrid> grids;
    for (int n = config.n_min; n <= config.n_max; ++n) {
        grids.push_back(uniform_grid(config.T, std::size_t{1} << n));
    }
    const ErrorReport report = quadrature_rate_study(family, grids, config.reps, config.p,
                                                     RngStream(config.seed), config.workers);
    write_outputs(report, flags, "quadrature");
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"strong-convergence studies for randomized Milstein SDE integration"};
    app.require_subcommand(1);

    CommonFlags convergence_flags, timing_flags, quadrature_flags, residual_flags;
    CLI::App* convergence =
        app.add_subcommand("convergence", "strong-convergence study (error vs step size)");
    add_common_flags(convergence, convergence_flags);
    CLI::App* timing = app.add_subcommand("timing", "work-precision study (cpu time vs error)");
    add_common_flags(timing, timing_flags);
    CLI::App* quadrature =
        app.add_subcommand("quadrature", "randomized Riemann-sum rate study");
    add_common_flags(quadrature, quadrature_flags);
    CLI::App* residual =
        app.add_subcommand("residual", "Spijker-norm residual decay study");
    add_common_flags(residual, residual_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (convergence->parsed()) return run_experiment(convergence_flags, "convergence");
        if (timing->parsed()) return run_experiment(timing_flags, "timing");
        if (residual->parsed()) return run_experiment(residual_flags, "residual");
        if (quadrature->parsed()) return run_quadrature(quadrature_flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cerr << "error: no subcommand given\n";
    return 1;
}

}  // namespace randmil::cli
