#pragma once

#include <functional>
#include <vector>

#include "randmil/diagnostics.hpp"
#include "randmil/grid.hpp"
#include "randmil/rng.hpp"
#include "randmil/vec.hpp"

namespace randmil {

/// Y(t) = |t - kink|^exponent together with its antiderivative, the test
/// family for the quadrature rate studies.
struct HolderFunction {
    double exponent;
    double kink;

    double operator()(double t) const;
    /// Integral of Y over [0, x] (closed form).
    double integral(double x) const;
};

/// Randomized Riemann partial sums Q^n = sum_{j<=n} h_j Y(t_{j-1} + tau_j h_j)
/// for n = 1..N; Q^N estimates the integral of Y over [0, T]. Each partial
/// sum is the previous one plus its own term, so the sequence telescopes
/// exactly. Requires taus.size() == step count.
std::vector<Vec> randomized_riemann(const std::function<Vec(double)>& y,
                                    const TemporalGrid& grid, const std::vector<double>& taus);

/// Left-endpoint Riemann partial sums (deterministic baseline).
std::vector<Vec> left_riemann(const std::function<Vec(double)>& y, const TemporalGrid& grid);

/// Scalar convenience wrappers.
std::vector<double> randomized_riemann_scalar(const std::function<double(double)>& y,
                                              const TemporalGrid& grid,
                                              const std::vector<double>& taus);
std::vector<double> left_riemann_scalar(const std::function<double(double)>& y,
                                        const TemporalGrid& grid);

/// Measures, for each grid, the L^p error of max_n |Q^n - integral(t_n)|
/// over `reps` independent tau-ensembles, and fits the empirical order.
/// Reference integrals come from the family's closed-form antiderivative.
/// Grids should be a nested dyadic sequence; reports one entry per grid
/// under scheme name "randomized-riemann". Rejects p < 2 and reps < 1.
ErrorReport quadrature_rate_study(const HolderFunction& y_family,
                                  const std::vector<TemporalGrid>& grids, std::size_t reps,
                                  double p, RngStream stream, int workers = 1);

}  // namespace randmil
