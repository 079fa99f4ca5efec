#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "randmil/grid.hpp"
#include "randmil/rng.hpp"
#include "randmil/vec.hpp"

namespace randmil {

/// Lazily sampled path of an m-dimensional Wiener process on [0, T].
///
/// Values are stored per queried time in a sorted flat array. A query at an
/// unseen time t draws W(t) from the exact conditional law given the stored
/// neighbours:
///   - between stored s < t < u: Brownian bridge with componentwise mean
///     W(s) + (t-s)/(u-s) (W(u)-W(s)) and variance (u-t)(t-s)/(u-s),
///   - beyond the last stored point s: forward increment with variance t-s.
/// Re-querying a stored time returns the stored value bit-exactly, so every
/// scheme and grid driven by the same path sees one consistent Brownian
/// motion regardless of the order or resolution of its queries.
///
/// Values at the dyadic times k T / 2^L are built by midpoint subdivision
/// (materialize_dyadic), level by level, with Gaussians indexed by the
/// (level, node) position in the subdivision tree. A dyadic skeleton forced
/// this way is one fixed function of the path's stream however fine a grid
/// asked for it; only non-dyadic times (the randomized intermediate points)
/// consume the sequential part of the stream. Integrators materialize their
/// grid before stepping, which keeps a study's Brownian values unchanged
/// when its reference solution switches between an oracle and a fine
/// numerical run.
///
/// One path belongs to one Monte Carlo sample and must not be mutated
/// concurrently; distinct paths are fully independent.
class WienerPath {
public:
    /// Path with W(0) = 0 and W(T) drawn from the tree root. Gaussian draws
    /// come from `stream`, which should be a purpose-tagged substream unique
    /// to this path.
    WienerPath(int dim, double horizon, RngStream stream);

    int dim() const { return dim_; }
    double horizon() const { return horizon_; }

    /// Writes W(t) into out[0..m). Rejects t outside [0, horizon].
    void query(double t, double* out);

    /// Convenience overload returning a fresh vector.
    Vec query(double t);

    /// Forces the dyadic times k T / 2^level into the store (tree order).
    void materialize_dyadic(int level);

    /// materialize_dyadic for a uniform 2^n-step grid over this horizon;
    /// other grids are materialized by ascending queries. Integrators call
    /// this before stepping so grid values never depend on step order.
    void materialize_grid(const TemporalGrid& grid);

    /// Number of distinct times stored so far.
    std::size_t stored_points() const { return index_.size(); }

    void reserve(std::size_t points);

private:
    using TimeIndex = std::map<double, std::uint64_t>;  // time -> arena offset

    const double* value_at(std::uint64_t offset) const { return values_.data() + offset; }
    std::uint64_t append_value(const double* v);

    int dim_;
    double horizon_;
    RngStream gauss_;     // sequential draws for non-dyadic times
    RngStream tree_;      // counter-indexed draws for the dyadic tree
    int tree_level_ = 0;  // dyadic levels fully materialized
    TimeIndex index_;
    std::vector<double> values_;  // append-only arena, dim_ doubles per point
};

}  // namespace randmil
