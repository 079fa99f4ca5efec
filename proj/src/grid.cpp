#include "randmil/grid.hpp"

#include <stdexcept>
#include <string>

namespace randmil {

TemporalGrid::TemporalGrid(std::vector<double> times) : times_(std::move(times)) {
    if (times_.size() < 2) {
        throw std::invalid_argument("TemporalGrid: need at least two time points");
    }
    if (times_.front() != 0.0) {
        throw std::invalid_argument("TemporalGrid: first time point must be 0");
    }
    for (std::size_t j = 1; j < times_.size(); ++j) {
        if (!(times_[j] > times_[j - 1])) {
            throw std::invalid_argument("TemporalGrid: times must be strictly increasing (index " +
                                        std::to_string(j) + ")");
        }
    }
}

TemporalGrid uniform_grid(double terminal_time, std::size_t steps) {
    if (!(terminal_time > 0.0)) {
        throw std::invalid_argument("uniform_grid: terminal time must be positive");
    }
    if (steps == 0) {
        throw std::invalid_argument("uniform_grid: step count must be positive");
    }
    std::vector<double> times(steps + 1);
    times[0] = 0.0;
    for (std::size_t j = 1; j < steps; ++j) {
        times[j] = (static_cast<double>(j) * terminal_time) / static_cast<double>(steps);
    }
    times[steps] = terminal_time;
    return TemporalGrid(std::move(times));
}

namespace {

TemporalGrid halve(const TemporalGrid& grid) {
    const auto& parent = grid.times();
    std::vector<double> times;
    times.reserve(2 * parent.size() - 1);
    for (std::size_t j = 1; j < parent.size(); ++j) {
        const double left = parent[j - 1];
        times.push_back(left);
        times.push_back(left + 0.5 * (parent[j] - left));
    }
    times.push_back(parent.back());
    return TemporalGrid(std::move(times));
}

}  // namespace

TemporalGrid dyadic_refine(const TemporalGrid& grid, unsigned k) {
    TemporalGrid out = grid;
    for (unsigned i = 0; i < k; ++i) out = halve(out);
    return out;
}

double max_step(const TemporalGrid& grid) {
    double h = 0.0;
    for (std::size_t j = 1; j <= grid.step_count(); ++j) {
        if (grid.step(j) > h) h = grid.step(j);
    }
    return h;
}

}  // namespace randmil
