#include "randmil/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace randmil {

namespace {
constexpr std::uint64_t kTreeTag = 0x6479;        // dyadic-tree substream
constexpr std::uint64_t kSequentialTag = 0x7371;  // sequential substream
constexpr int kMaxTreeLevel = 40;

double uniform_from_word(std::uint64_t w) {
    return (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53;
}
}  // namespace

WienerPath::WienerPath(int dim, double horizon, RngStream stream)
    : dim_(dim),
      horizon_(horizon),
      gauss_(stream.derive(kSequentialTag)),
      tree_(stream.derive(kTreeTag)) {
    if (dim < 1) throw std::invalid_argument("WienerPath: dimension must be >= 1");
    if (!(horizon > 0.0)) throw std::invalid_argument("WienerPath: horizon must be positive");
    const std::size_t m = static_cast<std::size_t>(dim_);
    Vec scratch(m, 0.0);
    index_.emplace(0.0, append_value(scratch.data()));
    const RngStream root = tree_.derive(0);
    const double sd = std::sqrt(horizon_);
    for (std::size_t r = 0; r < m; ++r) {
        scratch[r] = sd * RngStream::inverse_normal_cdf(uniform_from_word(root.word_at(r)));
    }
    index_.emplace(horizon_, append_value(scratch.data()));
}

std::uint64_t WienerPath::append_value(const double* v) {
    const std::uint64_t offset = values_.size();
    values_.insert(values_.end(), v, v + dim_);
    return offset;
}

void WienerPath::reserve(std::size_t points) {
    values_.reserve(points * static_cast<std::size_t>(dim_));
}

void WienerPath::materialize_dyadic(int level) {
    if (level > kMaxTreeLevel) {
        throw std::invalid_argument("WienerPath: dyadic level too deep");
    }
    const std::size_t m = static_cast<std::size_t>(dim_);
    Vec scratch(m);
    for (int lv = tree_level_ + 1; lv <= level; ++lv) {
        const std::uint64_t count = std::uint64_t{1} << lv;
        const RngStream node_stream = tree_.derive(static_cast<std::uint64_t>(lv));
        for (std::uint64_t k = 1; k < count; k += 2) {
            // Same expression as uniform_grid, so grid times match bit-exactly.
            const double t =
                (static_cast<double>(k) * horizon_) / static_cast<double>(count);
            const auto hi = index_.lower_bound(t);
            if (hi != index_.end() && hi->first == t) continue;  // already pinned
            const auto lo = std::prev(hi);
            const double s = lo->first;
            const double u = hi->first;
            const double* ws = value_at(lo->second);
            const double* wu = value_at(hi->second);
            const double lambda = (t - s) / (u - s);
            const double sd = std::sqrt(std::max((u - t) * (t - s) / (u - s), 0.0));
            const std::uint64_t node = (k - 1) / 2;
            for (std::size_t r = 0; r < m; ++r) {
                const double z = RngStream::inverse_normal_cdf(
                    uniform_from_word(node_stream.word_at(node * m + r)));
                scratch[r] = ws[r] + lambda * (wu[r] - ws[r]) + sd * z;
            }
            index_.emplace_hint(hi, t, append_value(scratch.data()));
        }
        tree_level_ = lv;
    }
}

void WienerPath::materialize_grid(const TemporalGrid& grid) {
    const std::size_t steps = grid.step_count();
    const bool dyadic_size = steps > 0 && (steps & (steps - 1)) == 0;
    if (dyadic_size && grid.terminal_time() == horizon_) {
        int level = 0;
        while ((std::size_t{1} << level) < steps) ++level;
        bool matches = true;
        for (std::size_t k = 0; k <= steps && matches; ++k) {
            const double expected =
                (k == steps) ? horizon_
                             : (static_cast<double>(k) * horizon_) / static_cast<double>(steps);
            matches = (grid.time(k) == expected);
        }
        if (matches) {
            materialize_dyadic(level);
            return;
        }
    }
    Vec scratch(static_cast<std::size_t>(dim_));
    for (std::size_t k = 0; k <= steps; ++k) query(grid.time(k), scratch.data());
}

void WienerPath::query(double t, double* out) {
    if (!(t >= 0.0) || t > horizon_) {
        throw std::out_of_range("WienerPath: query time " + std::to_string(t) +
                                " outside [0, " + std::to_string(horizon_) + "]");
    }
    const std::size_t m = static_cast<std::size_t>(dim_);
    const auto hi = index_.lower_bound(t);
    if (hi != index_.end() && hi->first == t) {
        const double* v = value_at(hi->second);
        for (std::size_t r = 0; r < m; ++r) out[r] = v[r];
        return;
    }
    if (hi == index_.end()) {
        // Forward extension past the last stored point (horizon is stored at
        // construction, so this only triggers for t == horizon collisions).
        const auto last = std::prev(index_.end());
        const double* ws = value_at(last->second);
        const double sd = std::sqrt(t - last->first);
        for (std::size_t r = 0; r < m; ++r) out[r] = ws[r] + sd * gauss_.next_normal();
    } else {
        const auto lo = std::prev(hi);
        const double s = lo->first;
        const double u = hi->first;
        const double* ws = value_at(lo->second);
        const double* wu = value_at(hi->second);
        const double lambda = (t - s) / (u - s);
        const double var = (u - t) * (t - s) / (u - s);
        const double sd = std::sqrt(std::max(var, 0.0));
        for (std::size_t r = 0; r < m; ++r) {
            out[r] = ws[r] + lambda * (wu[r] - ws[r]) + sd * gauss_.next_normal();
        }
    }
    index_.emplace_hint(hi, t, append_value(out));
}

Vec WienerPath::query(double t) {
    Vec out(static_cast<std::size_t>(dim_));
    query(t, out.data());
    return out;
}

}  // namespace randmil
