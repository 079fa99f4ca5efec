#pragma once

#include <cstddef>
#include <vector>

#include "randmil/grid.hpp"
#include "randmil/rng.hpp"
#include "randmil/vec.hpp"
#include "randmil/wiener.hpp"

namespace randmil {

/// Index into the m x m iterated-integral arrays: entry (r1, r2) holds
/// I_{(r1,r2)}, the double integral of dW^{r1} inside dW^{r2}.
inline std::size_t iterated_index(int r1, int r2, int m) {
    return static_cast<std::size_t>(r1) * static_cast<std::size_t>(m) +
           static_cast<std::size_t>(r2);
}

/// All randomness consumed by one step of an integrator: the uniform
/// randomization tau, the intermediate time theta = t_prev + tau*h, Wiener
/// increments over the two sub-intervals [t_prev, theta], [theta, t_next],
/// and the iterated integrals over the sub-intervals and the full step.
///
/// Exact structural identities, by construction:
///   dw_full[r]      == dw_left[r] + dw_right[r]
///   i2_full[r1][r2] == i2_left[r1][r2] + i2_right[r1][r2]
///                      + dw_left[r1] * dw_right[r2]      (Chen's relation)
///
/// When a step is sampled without the intermediate point (see
/// sample_step_noise_full), the left parts carry the full-step values and the
/// right parts are zero; the identities still hold.
struct StepNoise {
    double tau = 0.0;
    double theta = 0.0;
    Vec dw_left, dw_right, dw_full;      // m entries each
    Vec i2_left, i2_right, i2_full;      // m*m entries, see iterated_index
};

/// Uniform draw on the open interval (0,1); never returns 0 or 1.
double sample_tau(RngStream& stream);

/// Scalar iterated integral over one interval: I_{(1,1)} = (dw^2 - dt)/2.
double scalar_iterated_integral(double dw, double dt);

/// m x m iterated integrals from a full-interval increment under the
/// commutativity assumption g^{r1,r2} == g^{r2,r1}: diagonal entries
/// (dw_r^2 - dt)/2, off-diagonal entries dw_{r1} dw_{r2} / 2 (the symmetric
/// split of I_{(r1,r2)} + I_{(r2,r1)} = dw_{r1} dw_{r2}). Only the symmetric
/// part is well defined, which is all a commutative-noise scheme contracts.
Vec commutative_iterated(const Vec& dw, double dt);

/// Chen's relation for adjacent sub-intervals:
///   dw_full = dw_left + dw_right,
///   i2_full[r1][r2] = i2_left[r1][r2] + i2_right[r1][r2]
///                     + dw_left[r1] * dw_right[r2].
void chen_combine(const Vec& dw_left, const Vec& i2_left, const Vec& dw_right,
                  const Vec& i2_right, Vec& dw_full, Vec& i2_full);

/// Samples one step's noise with the randomized intermediate point:
/// draws tau from `stream`, sets theta = t_prev + tau*h, obtains W(theta)
/// and W(t_prev + h) through the shared path (exact bridge insertion), forms
/// the sub-interval iterated integrals (scalar formula for m = 1,
/// commutative_iterated otherwise) and assembles the full-step values via
/// chen_combine.
StepNoise sample_step_noise(WienerPath& path, RngStream& stream, double t_prev, double h);

/// In-place variant reusing the buffers of `noise` (hot path of integrate).
void sample_step_noise_into(StepNoise& noise, WienerPath& path, RngStream& stream,
                            double t_prev, double h);

/// Samples one step's noise without the intermediate point: a single query
/// of W(t_prev + h) and the direct full-step iterated integrals. tau is still
/// drawn (and theta set) so the tau substream advances identically for every
/// scheme, but no Brownian value is inserted at theta. Used by the schemes
/// that do not evaluate anything at the randomized time.
void sample_step_noise_full_into(StepNoise& noise, WienerPath& path, RngStream& stream,
                                 double t_prev, double h);

/// The per-step noise sequence integrate() consumes on `grid`, in step order.
/// `stream` must be the same stream handed to integrate() for the draws to
/// match bit-for-bit. With split = false the full-step variant is sampled.
std::vector<StepNoise> sample_noises_for_grid(int m, const TemporalGrid& grid,
                                              WienerPath& path, RngStream stream,
                                              bool split = true);

}  // namespace randmil
