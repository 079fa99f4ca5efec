#include "randmil/problem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace randmil {

std::function<Vec(double, const Vec&, int, int)> finite_difference_levy(
    std::function<Vec(double, const Vec&, int)> diffusion, int d) {
    return [diffusion = std::move(diffusion), d](double t, const Vec& x, int r1, int r2) {
        const Vec gr2 = diffusion(t, x, r2);
        Vec out(static_cast<std::size_t>(d), 0.0);
        Vec xs = x;
        for (int k = 0; k < d; ++k) {
            const std::size_t ks = static_cast<std::size_t>(k);
            const double step = 1e-5 * std::max(1.0, std::abs(x[ks]));
            xs[ks] = x[ks] + step;
            const Vec up = diffusion(t, xs, r1);
            xs[ks] = x[ks] - step;
            const Vec dn = diffusion(t, xs, r1);
            xs[ks] = x[ks];
            for (int i = 0; i < d; ++i) {
                const std::size_t is = static_cast<std::size_t>(i);
                out[is] += (up[is] - dn[is]) / (2.0 * step) * gr2[ks];
            }
        }
        return out;
    };
}

SDEProblem oscillatory_drift_problem(double mu, double w1, double w2, double x0, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("oscillatory_drift_problem: T must be positive");
    SDEProblem p;
    p.d = 1;
    p.m = 1;
    p.drift = [mu, w1](double t, const Vec& x) {
        return Vec{mu * std::abs(x[0]) + std::abs(std::sin(w1 * t))};
    };
    p.diffusion = [w2](double t, const Vec& x, int) {
        return Vec{std::abs(std::cos(w2 * t)) * x[0]};
    };
    p.levy_coefficient = [w2](double t, const Vec& x, int, int) {
        const double c = std::cos(w2 * t);
        return Vec{c * c * x[0]};
    };
    p.initial_state = {x0};
    p.terminal_time = T;
    p.gamma = 1.0;
    p.commutative = true;
    return p;
}

SDEProblem gbm_problem(double a, double b, double x0, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("gbm_problem: T must be positive");
    SDEProblem p;
    p.d = 1;
    p.m = 1;
    p.drift = [a](double, const Vec& x) { return Vec{a * x[0]}; };
    p.diffusion = [b](double, const Vec& x, int) { return Vec{b * x[0]}; };
    p.levy_coefficient = [b](double, const Vec& x, int, int) { return Vec{b * b * x[0]}; };
    p.initial_state = {x0};
    p.terminal_time = T;
    p.gamma = 1.0;
    p.commutative = true;
    return p;
}

double gbm_exact(double x0, double a, double b, double t, double w_t) {
    return x0 * std::exp((a - 0.5 * b * b) * t + b * w_t);
}

double holder_ode_exact(double gamma, double c, double x0, double t) {
    const double sgn = (t > c) ? 1.0 : (t < c ? -1.0 : 0.0);
    return x0 + (std::pow(c, gamma + 1.0) + sgn * std::pow(std::abs(t - c), gamma + 1.0)) /
                    (gamma + 1.0);
}

SDEProblem holder_ode_problem(double gamma, double c, double x0, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("holder_ode_problem: T must be positive");
    if (!(gamma > 0.0) || gamma > 1.0) {
        throw std::invalid_argument("holder_ode_problem: gamma must lie in (0, 1]");
    }
    if (!(c > 0.0) || !(c < T)) {
        throw std::invalid_argument("holder_ode_problem: kink must lie in (0, T)");
    }
    SDEProblem p;
    p.d = 1;
    p.m = 1;
    p.drift = [gamma, c](double t, const Vec&) {
        return Vec{std::pow(std::abs(t - c), gamma)};
    };
    p.diffusion = [](double, const Vec&, int) { return Vec{0.0}; };
    p.levy_coefficient = [](double, const Vec&, int, int) { return Vec{0.0}; };
    p.initial_state = {x0};
    p.terminal_time = T;
    p.gamma = gamma;
    p.commutative = true;
    return p;
}

namespace {

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<const char*> known, const std::string& problem) {
    for (const auto& [key, value] : params) {
        (void)value;
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw std::invalid_argument("unknown parameter '" + key + "' for problem '" +
                                        problem + "'");
        }
    }
}

}  // namespace

NamedProblem make_named_problem(const std::string& name,
                                const std::map<std::string, double>& params) {
    NamedProblem np;
    np.name = name;
    if (name == "gbm") {
        reject_unknown(params, {"a", "b", "x0", "T"}, name);
        const double a = param_or(params, "a", 0.05);
        const double b = param_or(params, "b", 0.2);
        const double x0 = param_or(params, "x0", 1.0);
        const double T = param_or(params, "T", 1.0);
        np.problem = gbm_problem(a, b, x0, T);
        np.exact = [x0, a, b](double t, const Vec& w) {
            return Vec{gbm_exact(x0, a, b, t, w[0])};
        };
    } else if (name == "oscillatory-drift") {
        reject_unknown(params, {"mu", "w1", "w2", "x0", "T"}, name);
        const double mu = param_or(params, "mu", -0.01);
        const double w1 = param_or(params, "w1", 64.0 * std::numbers::pi);
        const double w2 = param_or(params, "w2", 1.0);
        const double x0 = param_or(params, "x0", 1.1);
        const double T = param_or(params, "T", 1.0);
        np.problem = oscillatory_drift_problem(mu, w1, w2, x0, T);
    } else if (name == "holder-ode") {
        reject_unknown(params, {"gamma", "kink", "x0", "T"}, name);
        const double T = param_or(params, "T", 1.0);
        const double gamma = param_or(params, "gamma", 0.25);
        const double c = param_or(params, "kink", T / 3.0);
        const double x0 = param_or(params, "x0", 0.0);
        np.problem = holder_ode_problem(gamma, c, x0, T);
        np.exact = [gamma, c, x0](double t, const Vec&) {
            return Vec{holder_ode_exact(gamma, c, x0, t)};
        };
    } else {
        throw std::invalid_argument("unknown problem '" + name + "'");
    }
    return np;
}

}  // namespace randmil
