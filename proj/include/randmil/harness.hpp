#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "randmil/diagnostics.hpp"
#include "randmil/problem.hpp"
#include "randmil/scheme.hpp"

namespace randmil {

/// Runs body(i) for i in 0..count-1 on a bounded pool of `workers` threads
/// (strided assignment). Each index must touch only its own state; the first
/// exception thrown by any body is rethrown on the caller. With workers <= 1
/// the bodies run inline.
void run_paths(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

enum class ReferenceKind {
    ExactOracle,              // pathwise closed-form solution
    FineRandomizedMilstein,   // randomized Milstein on the 2^-n_ref grid
};

/// A coupled multi-grid Monte Carlo experiment: the named problem is
/// integrated with every listed scheme on uniform grids of step 2^-n T for
/// n in n_min..n_max, each sample driven by one shared WienerPath, and the
/// terminal (or pathwise-maximum) L^p deviation from the reference solution
/// is estimated.
struct ExperimentConfig {
    std::string problem = "gbm";
    std::map<std::string, double> problem_params;
    std::vector<SchemeKind> schemes = {SchemeKind::EulerMaruyama,
                                       SchemeKind::ClassicalMilstein,
                                       SchemeKind::RandomizedMilstein};
    int n_min = 4;
    int n_max = 10;
    ReferenceKind reference = ReferenceKind::ExactOracle;
    int n_ref = 15;  // reference grid exponent when the reference is numerical
    std::size_t samples = 1000;
    double p = 2.0;
    std::uint64_t seed = 0;
    int workers = 1;
    bool max_norm_metric = false;  // default is the terminal-time error

    /// Rejects inconsistent settings (n_ref <= n_max with a numerical
    /// reference, samples == 0, p < 2, n_min > n_max, empty scheme list).
    void validate() const;
};

/// Strong-convergence study: per sample one WienerPath, the reference
/// solution on that path (oracle value or fine randomized-Milstein run),
/// then every (scheme, grid) integration on the same path. Reports the
/// terminal L^p errors (or max-over-grid errors) with one EOC fit per
/// scheme. cpu_seconds is 0 in this report so that a fixed seed yields
/// byte-identical output for any worker count.
ErrorReport strong_convergence_study(const ExperimentConfig& config);

/// As strong_convergence_study, but each entry additionally carries the
/// accumulated wall-clock seconds spent inside that (scheme, grid)'s
/// integration loops (reference computation excluded). The error columns
/// stay reproducible; the cpu_seconds column does not.
ErrorReport work_precision_study(const ExperimentConfig& config);

/// Residual-decay study: restricts the exact solution to each grid (via the
/// shared path), computes its residual under the randomized Milstein
/// increment, and reports the stochastic Spijker norm per grid with its
/// decay slope. Requires a problem with an exact oracle.
ErrorReport residual_decay_study(const ExperimentConfig& config);

}  // namespace randmil
