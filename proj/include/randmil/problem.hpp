#pragma once

#include <functional>
#include <map>
#include <string>

#include "randmil/grid.hpp"
#include "randmil/vec.hpp"

namespace randmil {

/// An Ito SDE dX = f(t,X) dt + sum_r g^r(t,X) dW^r on [0,T] with
/// deterministic initial state.
///
/// levy_coefficient implements g^{r1,r2}(t,x) = (d g^{r1}/dx)(t,x) g^{r2}(t,x),
/// the coefficient contracted against the iterated integrals by the Milstein
/// schemes. Noise indices r, r1, r2 are 0-based in 0..m-1.
///
/// Coefficient functions must be pure and total on [0,T] x R^d; problems are
/// immutable so paths can be simulated concurrently. `gamma` records the
/// Holder exponent of the drift in its time argument (metadata used to pick
/// expected convergence orders). With m > 1 the Milstein schemes require
/// commutative = true (g^{r1,r2} == g^{r2,r1}).
struct SDEProblem {
    int d = 1;
    int m = 1;
    std::function<Vec(double, const Vec&)> drift;
    std::function<Vec(double, const Vec&, int)> diffusion;
    std::function<Vec(double, const Vec&, int, int)> levy_coefficient;
    Vec initial_state;
    double terminal_time = 1.0;
    double gamma = 1.0;
    bool commutative = true;
};

/// States of one simulated path on a grid; states.size() == grid points,
/// states.front() == the problem's initial state.
struct Trajectory {
    TemporalGrid grid;
    std::vector<Vec> states;
};

/// Centered finite-difference fallback for problems without a closed-form
/// Levy coefficient: (d g^{r1}/dx) g^{r2} with step 1e-5 * max(1, |x_k|)
/// per component.
std::function<Vec(double, const Vec&, int, int)> finite_difference_levy(
    std::function<Vec(double, const Vec&, int)> diffusion, int d);

/// The scalar test equation
///   dX = (mu |X| + |sin(w1 t)|) dt + |cos(w2 t)| X dW,
/// with g^{1,1}(t,x) = cos(w2 t)^2 x; gamma = 1 (both coefficients are
/// Lipschitz in t even though the drift is not differentiable).
SDEProblem oscillatory_drift_problem(double mu, double w1, double w2, double x0, double T);

/// Geometric Brownian motion dX = a X dt + b X dW (g^{1,1} = b^2 X).
SDEProblem gbm_problem(double a, double b, double x0, double T);

/// Pathwise exact GBM solution X(t) = x0 exp((a - b^2/2) t + b W(t))
/// given the Brownian value w_t = W(t).
double gbm_exact(double x0, double a, double b, double t, double w_t);

/// Deterministic problem with a Holder kink in the drift:
/// f(t,x) = |t - c|^gamma, g == 0, exact solution
/// X(t) = x0 + (c^{gamma+1} + sign(t-c) |t-c|^{gamma+1}) / (gamma+1).
/// Rejects gamma outside (0,1] and c outside (0,T).
SDEProblem holder_ode_problem(double gamma, double c, double x0, double T);

/// Exact solution of holder_ode_problem at time t.
double holder_ode_exact(double gamma, double c, double x0, double t);

/// A problem bundled with its pathwise exact solution (when one exists):
/// exact(t, w) maps time and the Brownian value W(t) to the solution state.
struct NamedProblem {
    std::string name;
    SDEProblem problem;
    std::function<Vec(double, const Vec&)> exact;  // empty if no oracle
};

/// Problem registry used by the experiment configs. Recognized names:
/// "gbm" (params a, b, x0, T), "oscillatory-drift" (mu, w1, w2, x0, T; w1
/// defaults to 2^6 pi), "holder-ode" (gamma, kink, x0, T). Unknown names or
/// parameters are rejected.
NamedProblem make_named_problem(const std::string& name,
                                const std::map<std::string, double>& params);

}  // namespace randmil
