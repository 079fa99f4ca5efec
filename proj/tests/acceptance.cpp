// Acceptance suite: one end-to-end check per criterion, printed as a
// PASS/FAIL line with its runtime. The process exits nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "randmil/harness.hpp"
#include "randmil/quadrature.hpp"
#include "randmil/report_io.hpp"
#include "randmil/stream_tags.hpp"

using namespace randmil;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// --- 1. exact algebraic identities -----------------------------------------

Outcome criterion_exact_identities() {
    Outcome out;

    // Chen reassembly vs the direct scalar formula, 1e4 random splits.
    RngStream stream(1001);
    double worst = 0.0;
    for (int rep = 0; rep < 10000; ++rep) {
        const double h = 0.01 + stream.next_uniform01();
        const double tau = stream.next_uniform01();
        const double hl = tau * h, hr = h - hl;
        const double dwl = std::sqrt(hl) * stream.next_normal();
        const double dwr = std::sqrt(hr) * stream.next_normal();
        Vec dw_full, i2_full;
        chen_combine({dwl}, {scalar_iterated_integral(dwl, hl)}, {dwr},
                     {scalar_iterated_integral(dwr, hr)}, dw_full, i2_full);
        const double direct = scalar_iterated_integral(dw_full[0], hl + hr);
        // The identity subtracts dw^2/2 and h/2, so relative means relative
        // to those operands (the difference itself cancels towards zero).
        const double scale = std::max(dw_full[0] * dw_full[0], hl + hr);
        worst = std::max(worst, std::abs(i2_full[0] - direct) / scale);
    }
    out.require(worst < 1e-12, "chen reassembly relative error " + fmt(worst));

    // Partial-sum telescoping holds exactly.
    const TemporalGrid grid = uniform_grid(1.0, 64);
    std::vector<double> taus(64);
    RngStream tau_stream(1002);
    for (double& tau : taus) tau = tau_stream.next_uniform01();
    auto f = [](double t) { return std::cos(5.0 * t) + 2.0; };
    const std::vector<double> sums = randomized_riemann_scalar(f, grid, taus);
    bool telescopes = true;
    for (std::size_t n = 2; n <= 64; ++n) {
        const double h = grid.step(n);
        const double term = h * f(grid.time(n - 1) + taus[n - 1] * h);
        telescopes = telescopes && (sums[n - 1] == sums[n - 2] + term);
    }
    out.require(telescopes, "partial sums do not telescope exactly");

    // Residual of the scheme's own trajectory is identically zero.
    const SDEProblem problem = oscillatory_drift_problem(-0.01, 64.0 * M_PI, 1.0, 1.1, 1.0);
    WienerPath path(1, 1.0, RngStream(1003).derive(0).derive(stream_tag::wiener));
    std::vector<StepNoise> noises;
    const Trajectory traj = integrate(problem, uniform_grid(1.0, 128),
                                      SchemeKind::RandomizedMilstein, path,
                                      RngStream(1003).derive(0).derive(stream_tag::run), &noises);
    const std::vector<Vec> res =
        residual(problem, traj.grid, traj.states, path, noises);
    bool all_zero = true;
    for (const Vec& r : res) all_zero = all_zero && (r[0] == 0.0);
    out.require(all_zero, "own-trajectory residual is not identically zero");
    return out;
}

// --- 2. quadrature unbiasedness ---------------------------------------------

Outcome criterion_unbiasedness() {
    Outcome out;
    const TemporalGrid grid = uniform_grid(1.0, 8);
    const std::size_t reps = 100000;
    RngStream stream(2001);
    double sum = 0.0, sumsq = 0.0;
    std::vector<double> taus(8);
    for (std::size_t rep = 0; rep < reps; ++rep) {
        for (double& tau : taus) tau = stream.next_uniform01();
        const auto q = randomized_riemann_scalar([](double t) { return t * t; }, grid, taus);
        sum += q.back();
        sumsq += q.back() * q.back();
    }
    const double mean = sum / static_cast<double>(reps);
    const double var = sumsq / static_cast<double>(reps) - mean * mean;
    const double se = std::sqrt(var / static_cast<double>(reps));
    const double dev = std::abs(mean - 1.0 / 3.0);
    out.require(dev < 3.0 * se, "tau-ensemble mean misses 1/3");
    out.note("mean " + fmt(mean) + ", |dev|/se " + fmt(dev / se));
    return out;
}

// --- 3. quadrature rate -----------------------------------------------------

Outcome criterion_quadrature_rate() {
    Outcome out;
    std::vector<TemporalGrid> grids;
    for (int n = 2; n <= 12; ++n) grids.push_back(uniform_grid(1.0, std::size_t{1} << n));
    for (const double gamma : {0.1, 0.5}) {
        const ErrorReport report = quadrature_rate_study({gamma, 1.0 / 3.0}, grids, 1000, 2.0,
                                                         RngStream(3001), 8);
        const double target = 0.5 + gamma;
        const double slope = report.slope();
        out.require(std::abs(slope - target) <= 0.15,
                    "gamma " + fmt(gamma) + ": slope " + fmt(slope) + " outside " + fmt(target) +
                        " +- 0.15");
    }
    return out;
}

// --- 4. strong order on GBM -------------------------------------------------

Outcome criterion_gbm_strong_order() {
    Outcome out;
    ExperimentConfig config;
    config.problem = "gbm";
    config.problem_params = {{"a", 0.05}, {"b", 0.2}, {"x0", 1.0}, {"T", 1.0}};
    config.n_min = 4;
    config.n_max = 10;
    config.samples = 1000;
    config.p = 2.0;
    config.seed = 0;
    config.workers = 8;
    const ErrorReport report = strong_convergence_study(config);
    const double em = report.fit_for("euler-maruyama")->slope;
    const double cm = report.fit_for("classical-milstein")->slope;
    const double rm = report.fit_for("randomized-milstein")->slope;
    out.require(std::abs(em - 0.5) <= 0.15, "Euler-Maruyama EOC " + fmt(em));
    out.require(std::abs(cm - 1.0) <= 0.15, "classical Milstein EOC " + fmt(cm));
    out.require(std::abs(rm - 1.0) <= 0.15, "randomized Milstein EOC " + fmt(rm));
    out.note("EOC em " + fmt(em) + ", cm " + fmt(cm) + ", rm " + fmt(rm));
    return out;
}

// --- 5. randomization payoff on rough drift ----------------------------------

Outcome criterion_holder_payoff() {
    Outcome out;
    ExperimentConfig config;
    config.problem = "holder-ode";
    config.problem_params = {{"gamma", 0.25}};
    config.n_min = 4;
    config.n_max = 10;
    config.samples = 1000;
    config.seed = 0;
    config.workers = 8;
    const ErrorReport report = strong_convergence_study(config);
    const double em = report.fit_for("euler-maruyama")->slope;
    const double cm = report.fit_for("classical-milstein")->slope;
    const double rm = report.fit_for("randomized-milstein")->slope;
    out.require(std::abs(rm - 0.75) <= 0.10, "randomized Milstein EOC " + fmt(rm));
    out.require(std::abs(em - 0.25) <= 0.10, "Euler-Maruyama EOC " + fmt(em));
    out.require(std::abs(cm - 0.25) <= 0.10, "classical Milstein EOC " + fmt(cm));
    return out;
}

// --- 6. oscillatory-drift experiment ----------------------------------------

Outcome criterion_oscillatory_experiment() {
    Outcome out;
    ExperimentConfig config;
    config.problem = "oscillatory-drift";
    config.schemes = {SchemeKind::ClassicalMilstein, SchemeKind::RandomizedMilstein};
    config.reference = ReferenceKind::FineRandomizedMilstein;
    config.n_ref = 15;
    config.n_min = 3;
    config.n_max = 6;
    config.samples = 1000;
    config.p = 2.0;
    config.seed = 0;
    config.workers = 8;
    const ErrorReport report = strong_convergence_study(config);
    for (int n = 3; n <= 5; ++n) {
        double cm = 0.0, rm = 0.0;
        for (const auto& entry : report.entries) {
            if (entry.level == n && entry.scheme == "classical-milstein") cm = entry.error;
            if (entry.level == n && entry.scheme == "randomized-milstein") rm = entry.error;
        }
        out.require(rm < cm, "randomized not below classical at n=" + std::to_string(n) +
                                 " (" + fmt(rm) + " vs " + fmt(cm) + ")");
    }
    const double eoc = report.fit_for("randomized-milstein")->slope;
    out.require(std::abs(eoc - 0.83) <= 0.25, "randomized Milstein EOC " + fmt(eoc));
    out.note("rm EOC " + fmt(eoc));
    return out;
}

// --- 7. consistency rate ------------------------------------------------------

Outcome criterion_consistency_rate() {
    Outcome out;
    ExperimentConfig config;
    config.problem = "gbm";
    config.problem_params = {{"a", 0.05}, {"b", 0.2}, {"x0", 1.0}, {"T", 1.0}};
    config.n_min = 4;
    config.n_max = 9;
    config.samples = 1000;
    config.seed = 0;
    config.workers = 8;
    const ErrorReport report = residual_decay_study(config);
    const double slope = report.slope();
    out.require(std::abs(slope - 1.0) <= 0.2, "Spijker-norm slope " + fmt(slope));
    out.note("slope " + fmt(slope));
    return out;
}

// --- 8. cost ratio -------------------------------------------------------------

Outcome criterion_cost_ratio() {
    Outcome out;
    ExperimentConfig config;
    config.problem = "gbm";
    config.schemes = {SchemeKind::ClassicalMilstein, SchemeKind::RandomizedMilstein};
    config.n_min = 10;
    config.n_max = 10;
    config.samples = 1000;
    config.seed = 0;
    config.workers = 1;
    const ErrorReport report = work_precision_study(config);
    double cm = 0.0, rm = 0.0;
    for (const auto& entry : report.entries) {
        if (entry.scheme == "classical-milstein") cm = entry.cpu_seconds;
        if (entry.scheme == "randomized-milstein") rm = entry.cpu_seconds;
    }
    const double ratio = rm / cm;
    out.require(ratio >= 1.5 && ratio <= 3.0, "per-step cpu ratio " + fmt(ratio));
    out.note("ratio " + fmt(ratio));
    return out;
}

// --- 9. reproducibility ---------------------------------------------------------

Outcome criterion_reproducibility() {
    Outcome out;

    auto csv_of = [](const ErrorReport& report) {
        std::ostringstream buffer;
        emit_csv(report, buffer);
        return buffer.str();
    };

    for (const char* study : {"convergence", "residual"}) {
        std::vector<std::string> outputs;
        for (int workers : {1, 2, 8}) {
            ExperimentConfig config;
            config.problem = "gbm";
            config.n_min = 4;
            config.n_max = 6;
            config.samples = 100;
            config.seed = 7;
            config.workers = workers;
            const ErrorReport report = (std::string(study) == "residual")
                                           ? residual_decay_study(config)
                                           : strong_convergence_study(config);
            outputs.push_back(csv_of(report));
        }
        out.require(outputs[0] == outputs[1] && outputs[0] == outputs[2],
                    std::string(study) + " CSV differs across worker counts");
    }

    std::vector<std::string> quad_outputs;
    std::vector<TemporalGrid> grids;
    for (int n = 2; n <= 8; ++n) grids.push_back(uniform_grid(1.0, std::size_t{1} << n));
    for (int workers : {1, 2, 8}) {
        const ErrorReport report =
            quadrature_rate_study({0.5, 1.0 / 3.0}, grids, 200, 2.0, RngStream(7), workers);
        quad_outputs.push_back(csv_of(report));
    }
    out.require(quad_outputs[0] == quad_outputs[1] && quad_outputs[0] == quad_outputs[2],
                "quadrature CSV differs across worker counts");
    return out;
}

// --- 10. statistical sanity of the noise -----------------------------------------

Outcome criterion_noise_moments() {
    Outcome out;
    const double h = 0.25;
    const int n = 100000;
    RngStream tau_stream = RngStream(10001).derive(stream_tag::tau);
    double s_dw = 0.0, s_dw2 = 0.0, s_tau = 0.0, s_i2 = 0.0, s_i22 = 0.0, s_i24 = 0.0;
    for (int i = 0; i < n; ++i) {
        WienerPath path(1, 1.0,
                        RngStream(10002).derive(static_cast<std::uint64_t>(i))
                            .derive(stream_tag::wiener));
        const StepNoise noise = sample_step_noise(path, tau_stream, 0.25, h);
        s_dw += noise.dw_full[0];
        s_dw2 += noise.dw_full[0] * noise.dw_full[0];
        s_tau += noise.tau * h;
        s_i2 += noise.i2_full[0];
        const double sq = noise.i2_full[0] * noise.i2_full[0];
        s_i22 += sq;
        s_i24 += sq * sq;
    }
    const double nd = n;
    const double mean_dw = s_dw / nd;
    const double var_dw = s_dw2 / nd - mean_dw * mean_dw;
    out.require(std::abs(mean_dw) < 3.0 * std::sqrt(h / nd), "E[dw] " + fmt(mean_dw));
    // Var of the sample variance of a Gaussian: 2 h^2 / n.
    out.require(std::abs(var_dw - h) < 3.0 * h * std::sqrt(2.0 / nd), "Var[dw] " + fmt(var_dw));

    const double mean_tau = s_tau / nd;
    out.require(std::abs(mean_tau - 0.5 * h) < 3.0 * h / std::sqrt(12.0 * nd),
                "E[tau h] " + fmt(mean_tau));

    const double mean_i2 = s_i2 / nd;
    const double m2_i2 = s_i22 / nd;
    const double se_i2 = std::sqrt((m2_i2 - mean_i2 * mean_i2) / nd);
    out.require(std::abs(mean_i2) < 3.0 * se_i2, "E[i2] " + fmt(mean_i2));

    const double se_i22 = std::sqrt((s_i24 / nd - m2_i2 * m2_i2) / nd);
    out.require(std::abs(m2_i2 - 0.5 * h * h) < 3.0 * se_i22, "E[i2^2] " + fmt(m2_i2));
    return out;
}

struct Criterion {
    const char* name;
    const char* description;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"criterion-1", "exact algebraic identities", 1.0, criterion_exact_identities},
        {"criterion-2", "quadrature unbiasedness (Y = t^2)", 5.0, criterion_unbiasedness},
        {"criterion-3", "quadrature rate for |t-1/3|^gamma", 30.0, criterion_quadrature_rate},
        {"criterion-4", "strong order on GBM vs exact oracle", 120.0, criterion_gbm_strong_order},
        {"criterion-5", "randomization payoff on the Holder ODE", 60.0, criterion_holder_payoff},
        {"criterion-6", "oscillatory-drift experiment (vs fine reference)", 600.0, criterion_oscillatory_experiment},
        {"criterion-7", "consistency rate (Spijker norm decay)", 120.0,
         criterion_consistency_rate},
        {"criterion-8", "randomized/classical cost ratio", 60.0, criterion_cost_ratio},
        {"criterion-9", "byte-identical CSV across worker counts", 600.0,
         criterion_reproducibility},
        {"criterion-10", "Wiener increment and i2 moment checks", 10.0,
         criterion_noise_moments},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > criterion.budget_seconds) {
            outcome.pass = false;
            outcome.detail += (outcome.detail.empty() ? "" : "; ") + std::string("over budget ") +
                              fmt(criterion.budget_seconds) + " s";
        }
        if (!outcome.pass) ++failures;
        std::printf("%s  %-12s  %-45s  [%6.2f s]%s%s\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.name, criterion.description, seconds,
                    outcome.detail.empty() ? "" : "  -- ", outcome.detail.c_str());
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
