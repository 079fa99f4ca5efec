#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "randmil/grid.hpp"
#include "randmil/noise.hpp"
#include "randmil/problem.hpp"
#include "randmil/vec.hpp"
#include "randmil/wiener.hpp"

namespace randmil {

/// One Monte Carlo estimate with its normal-approximation standard error.
struct LpEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// ((1/M) sum z_i^p)^{1/p} over per-path scalars z_i >= 0, with the
/// delta-method standard error of the p-th root. The reduction runs in the
/// given order, so results do not depend on how paths were distributed
/// across workers.
LpEstimate lp_from_scalars(const std::vector<double>& zs, double p);

/// L^p norm of the pathwise maximum deviation: per path, max_n |diff^n| in
/// the Euclidean norm, then lp_from_scalars. All sample sequences must share
/// one length. Rejects empty input and p < 2.
LpEstimate lp_max_error(const std::vector<std::vector<Vec>>& diff_samples, double p);

/// Same restricted to the terminal point: diff_at_T holds one R^d deviation
/// per path.
LpEstimate terminal_lp_error(const std::vector<Vec>& diff_at_T, double p);

/// Residual of a grid function y under the randomized Milstein increment:
///   R^0 = y^0 - initial state,
///   R^j = y^j - (y^{j-1} + Phi_j(y^{j-1}, tau_j)).
/// Computed against the increment exactly as integrate() applies it, so a
/// trajectory generated by the scheme with the same noises has residual
/// exactly zero. `noises` must be the per-step noises consistent with
/// `path` (e.g. from integrate's noises_out or sample_noises_for_grid).
std::vector<Vec> residual(const SDEProblem& problem, const TemporalGrid& grid,
                          const std::vector<Vec>& y, WienerPath& path,
                          const std::vector<StepNoise>& noises);

/// Stochastic Spijker norm estimate over per-path residual sequences:
///   ||Z^0||_{L^p} + || max_n |sum_{j<=n} Z^j| ||_{L^p}.
/// Standard error combines the two terms' errors in quadrature.
LpEstimate spijker_norm(const std::vector<std::vector<Vec>>& residual_samples, double p);

/// Least-squares fit of log(error) against log(h); the slope is the
/// empirical order of convergence. Requires >= 2 points, all positive.
struct EocFit {
    double slope = 0.0;
    double intercept = 0.0;
};
EocFit eoc_regression(const std::vector<double>& hs, const std::vector<double>& errors);

/// One row of a study report.
struct ErrorEntry {
    std::string scheme;
    int level = -1;  // dyadic exponent n when h = 2^-n T, else -1
    double h = 0.0;
    std::size_t samples = 0;
    double p = 2.0;
    double error = 0.0;
    double std_error = 0.0;
    double cpu_seconds = 0.0;
};

struct SchemeFit {
    std::string scheme;
    double slope = 0.0;
    double intercept = 0.0;
};

/// Result of a study: entries plus one log-log fit per scheme.
struct ErrorReport {
    std::string study;  // "convergence", "timing", "quadrature" or "residual"
    std::vector<ErrorEntry> entries;
    std::vector<SchemeFit> fits;

    const SchemeFit* fit_for(std::string_view scheme) const;
    /// Slope / intercept of the first scheme's fit (the report's headline).
    double slope() const;
    double slope_intercept() const;
};

/// Recomputes `fits` from the entries (one fit per scheme, in first-seen
/// order; entries with non-positive error are skipped).
void compute_fits(ErrorReport& report);

}  // namespace randmil
