#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "randmil/grid.hpp"
#include "randmil/noise.hpp"
#include "randmil/problem.hpp"
#include "randmil/rng.hpp"
#include "randmil/vec.hpp"
#include "randmil/wiener.hpp"

namespace randmil {

enum class SchemeKind {
    EulerMaruyama,
    ClassicalMilstein,
    RandomizedMilstein,  // the only kind that consumes tau
};

const char* scheme_name(SchemeKind kind);
SchemeKind scheme_from_name(const std::string& name);

/// Thrown by integrate() when a state stops being finite; carries the
/// 1-based index of the offending step.
class NonFiniteStateError : public std::runtime_error {
public:
    NonFiniteStateError(std::size_t step, const std::string& what)
        : std::runtime_error(what), step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

/// Internal stage of the randomized Milstein step:
///   y + tau h f(t_prev, y) + sum_r g^r(t_prev, y) dw_left[r].
/// The diffusion stays evaluated at the left time point; only the drift's
/// time argument is randomized downstream.
Vec psi_stage(const SDEProblem& problem, double t_prev, const Vec& y, double h,
              const StepNoise& noise);

/// Increment of the randomized Milstein step:
///   h f(t_prev + tau h, psi_stage)
///   + sum_r g^r(t_prev, y) dw_full[r]
///   + sum_{r1,r2} g^{r1,r2}(t_prev, y) i2_full[r2][r1].
/// Note the contraction pairs the coefficient indexed (r1, r2) with the
/// iterated integral indexed (r2, r1); under the commutativity assumption
/// the symmetrized iterated integrals make this well defined for m > 1.
Vec phi_increment(const SDEProblem& problem, double t_prev, const Vec& y, double h,
                  const StepNoise& noise);

/// One randomized Milstein step: y + phi_increment(...), assembled from the
/// identical increment so the two agree bit-for-bit.
Vec randomized_milstein_step(const SDEProblem& problem, double t_prev, const Vec& y, double h,
                             const StepNoise& noise);

/// Classical Milstein step: drift evaluated at (t_prev, y), otherwise the
/// same terms and index pairing as the randomized step.
Vec classical_milstein_step(const SDEProblem& problem, double t_prev, const Vec& y, double h,
                            const StepNoise& noise);

/// Euler-Maruyama step: y + h f(t_prev, y) + sum_r g^r(t_prev, y) dw_full[r].
Vec euler_step(const SDEProblem& problem, double t_prev, const Vec& y, double h,
               const StepNoise& noise);

/// Runs the chosen one-step map over the whole grid, drawing one StepNoise
/// per step from the shared path so different schemes and grids driven by
/// the same WienerPath are pathwise coupled. tau values are drawn per step
/// from the tau-purpose substream of `stream`, indexed by step number; hand
/// distinct streams to distinct (scheme, grid) runs so their randomization
/// variables are independent.
///
/// The randomized scheme samples the split step noise (intermediate point
/// inserted into the path); Euler-Maruyama and classical Milstein sample the
/// full-step noise only, matching their standard per-step cost.
///
/// Throws NonFiniteStateError as soon as a state has a non-finite component.
/// If noises_out is non-null the per-step noises are appended to it (used by
/// residual diagnostics).
Trajectory integrate(const SDEProblem& problem, const TemporalGrid& grid, SchemeKind kind,
                     WienerPath& path, RngStream stream,
                     std::vector<StepNoise>* noises_out = nullptr);

}  // namespace randmil
