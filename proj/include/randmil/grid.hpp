#pragma once

#include <cstddef>
#include <vector>

namespace randmil {

/// Strictly increasing partition 0 = t_0 < t_1 < ... < t_N = T of [0,T],
/// not necessarily equidistant. Immutable after construction; refinement
/// returns a new grid, so grids can be shared freely across workers.
class TemporalGrid {
public:
    /// Validates and takes ownership of an explicit partition.
    /// Requires times.front() == 0, strictly increasing times, T > 0.
    explicit TemporalGrid(std::vector<double> times);

    const std::vector<double>& times() const { return times_; }
    double time(std::size_t j) const { return times_[j]; }

    /// Number of steps N (grid has N+1 points).
    std::size_t step_count() const { return times_.size() - 1; }

    /// Width h_j = t_j - t_{j-1} of step j, 1-based j in 1..N.
    double step(std::size_t j) const { return times_[j] - times_[j - 1]; }

    double terminal_time() const { return times_.back(); }

private:
    std::vector<double> times_;
};

/// N equal steps of width T/N on [0,T].
TemporalGrid uniform_grid(double terminal_time, std::size_t steps);

/// Splits every step into 2^k equal substeps. Original points are kept
/// bit-exactly. Implemented as k successive halvings, each computing the
/// midpoint from its parent step's endpoints, so
/// dyadic_refine(g, a+b) == dyadic_refine(dyadic_refine(g, a), b) exactly.
TemporalGrid dyadic_refine(const TemporalGrid& grid, unsigned k);

/// Maximum step size |h| = max_j h_j.
double max_step(const TemporalGrid& grid);

}  // namespace randmil
