#include "randmil/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "randmil/harness.hpp"

namespace randmil {

double HolderFunction::operator()(double t) const {
    return std::pow(std::abs(t - kink), exponent);
}

double HolderFunction::integral(double x) const {
    const double sgn = (x > kink) ? 1.0 : (x < kink ? -1.0 : 0.0);
    return (std::pow(kink, exponent + 1.0) +
            sgn * std::pow(std::abs(x - kink), exponent + 1.0)) /
           (exponent + 1.0);
}

std::vector<Vec> randomized_riemann(const std::function<Vec(double)>& y,
                                    const TemporalGrid& grid, const std::vector<double>& taus) {
    const std::size_t n = grid.step_count();
    if (taus.size() != n) {
        throw std::invalid_argument("randomized_riemann: need one tau per step");
    }
    std::vector<Vec> sums(n);
    Vec acc;
    for (std::size_t j = 1; j <= n; ++j) {
        const double h = grid.step(j);
        const Vec value = y(grid.time(j - 1) + taus[j - 1] * h);
        if (j == 1) acc.assign(value.size(), 0.0);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] + h * value[i];
        sums[j - 1] = acc;
    }
    return sums;
}

std::vector<Vec> left_riemann(const std::function<Vec(double)>& y, const TemporalGrid& grid) {
    const std::size_t n = grid.step_count();
    std::vector<Vec> sums(n);
    Vec acc;
    for (std::size_t j = 1; j <= n; ++j) {
        const double h = grid.step(j);
        const Vec value = y(grid.time(j - 1));
        if (j == 1) acc.assign(value.size(), 0.0);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] + h * value[i];
        sums[j - 1] = acc;
    }
    return sums;
}

std::vector<double> randomized_riemann_scalar(const std::function<double(double)>& y,
                                              const TemporalGrid& grid,
                                              const std::vector<double>& taus) {
    auto wrapped = [&y](double t) { return Vec{y(t)}; };
    const auto sums = randomized_riemann(wrapped, grid, taus);
    std::vector<double> out(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) out[i] = sums[i][0];
    return out;
}

std::vector<double> left_riemann_scalar(const std::function<double(double)>& y,
                                        const TemporalGrid& grid) {
    auto wrapped = [&y](double t) { return Vec{y(t)}; };
    const auto sums = left_riemann(wrapped, grid);
    std::vector<double> out(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) out[i] = sums[i][0];
    return out;
}

ErrorReport quadrature_rate_study(const HolderFunction& y_family,
                                  const std::vector<TemporalGrid>& grids, std::size_t reps,
                                  double p, RngStream stream, int workers) {
    if (p < 2.0) throw std::invalid_argument("quadrature_rate_study: p must be >= 2");
    if (reps == 0) throw std::invalid_argument("quadrature_rate_study: reps must be >= 1");
    if (grids.empty()) throw std::invalid_argument("quadrature_rate_study: no grids");

    ErrorReport report;
    report.study = "quadrature";
    for (std::size_t k = 0; k < grids.size(); ++k) {
        const TemporalGrid& grid = grids[k];
        const std::size_t n = grid.step_count();
        std::vector<double> maxima(reps);
        const RngStream grid_stream = stream.derive(k);
        run_paths(reps, workers, [&](std::size_t rep) {
            RngStream tau_stream = grid_stream.derive(rep);
            double peak = 0.0;
            double acc = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double h = grid.step(j);
                const double tau = tau_stream.next_uniform01();
                acc = acc + h * y_family(grid.time(j - 1) + tau * h);
                peak = std::max(peak, std::abs(acc - y_family.integral(grid.time(j))));
            }
            maxima[rep] = peak;
        });
        const LpEstimate est = lp_from_scalars(maxima, p);
        ErrorEntry entry;
        entry.scheme = "randomized-riemann";
        entry.h = max_step(grid);
        entry.level = static_cast<int>(std::lround(std::log2(grid.terminal_time() / entry.h)));
        entry.samples = reps;
        entry.p = p;
        entry.error = est.value;
        entry.std_error = est.std_error;
        report.entries.push_back(entry);
    }
    compute_fits(report);
    return report;
}

}  // namespace randmil
