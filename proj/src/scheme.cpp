#include "randmil/scheme.hpp"

#include "randmil/stream_tags.hpp"

namespace randmil {

const char* scheme_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::EulerMaruyama: return "euler-maruyama";
        case SchemeKind::ClassicalMilstein: return "classical-milstein";
        case SchemeKind::RandomizedMilstein: return "randomized-milstein";
    }
    return "unknown";
}

SchemeKind scheme_from_name(const std::string& name) {
    if (name == "euler-maruyama") return SchemeKind::EulerMaruyama;
    if (name == "classical-milstein") return SchemeKind::ClassicalMilstein;
    if (name == "randomized-milstein") return SchemeKind::RandomizedMilstein;
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

namespace {

void require_commutative(const SDEProblem& problem) {
    if (problem.m > 1 && !problem.commutative) {
        throw std::invalid_argument(
            "Milstein schemes support multi-dimensional noise only under the "
            "commutativity condition g^{r1,r2} == g^{r2,r1}");
    }
}

// sum_r g^r(t, y) dw[r] added onto out.
void add_diffusion(const SDEProblem& problem, double t, const Vec& y, const Vec& dw, Vec& out) {
    for (int r = 0; r < problem.m; ++r) {
        const Vec g = problem.diffusion(t, y, r);
        const double w = dw[static_cast<std::size_t>(r)];
        for (int i = 0; i < problem.d; ++i) {
            out[static_cast<std::size_t>(i)] += g[static_cast<std::size_t>(i)] * w;
        }
    }
}

// sum_{r1,r2} g^{r1,r2}(t, y) i2[r2][r1] added onto out. The coefficient
// indexed (r1, r2) multiplies the iterated integral indexed (r2, r1).
void add_levy(const SDEProblem& problem, double t, const Vec& y, const Vec& i2, Vec& out) {
    for (int r1 = 0; r1 < problem.m; ++r1) {
        for (int r2 = 0; r2 < problem.m; ++r2) {
            const Vec g = problem.levy_coefficient(t, y, r1, r2);
            const double w = i2[iterated_index(r2, r1, problem.m)];
            for (int i = 0; i < problem.d; ++i) {
                out[static_cast<std::size_t>(i)] += g[static_cast<std::size_t>(i)] * w;
            }
        }
    }
}

Vec plus(const Vec& y, const Vec& incr) {
    Vec out = y;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += incr[i];
    return out;
}

}  // namespace

Vec psi_stage(const SDEProblem& problem, double t_prev, const Vec& y, double h,
              const StepNoise& noise) {
    const Vec f = problem.drift(t_prev, y);
    Vec out = y;
    const double th = noise.tau * h;
    for (int i = 0; i < problem.d; ++i) {
        out[static_cast<std::size_t>(i)] += th * f[static_cast<std::size_t>(i)];
    }
    add_diffusion(problem, t_prev, y, noise.dw_left, out);
    return out;
}

Vec phi_increment(const SDEProblem& problem, double t_prev, const Vec& y, double h,
                  const StepNoise& noise) {
    require_commutative(problem);
    const Vec stage = psi_stage(problem, t_prev, y, h, noise);
    const Vec f = problem.drift(t_prev + noise.tau * h, stage);
    Vec out(static_cast<std::size_t>(problem.d));
    for (int i = 0; i < problem.d; ++i) {
        out[static_cast<std::size_t>(i)] = h * f[static_cast<std::size_t>(i)];
    }
    add_diffusion(problem, t_prev, y, noise.dw_full, out);
    add_levy(problem, t_prev, y, noise.i2_full, out);
    return out;
}

Vec randomized_milstein_step(const SDEProblem& problem, double t_prev, const Vec& y, double h,
                             const StepNoise& noise) {
    return plus(y, phi_increment(problem, t_prev, y, h, noise));
}

Vec classical_milstein_step(const SDEProblem& problem, double t_prev, const Vec& y, double h,
                            const StepNoise& noise) {
    require_commutative(problem);
    const Vec f = problem.drift(t_prev, y);
    Vec out(static_cast<std::size_t>(problem.d));
    for (int i = 0; i < problem.d; ++i) {
        out[static_cast<std::size_t>(i)] = h * f[static_cast<std::size_t>(i)];
    }
    add_diffusion(problem, t_prev, y, noise.dw_full, out);
    add_levy(problem, t_prev, y, noise.i2_full, out);
    return plus(y, out);
}

Vec euler_step(const SDEProblem& problem, double t_prev, const Vec& y, double h,
               const StepNoise& noise) {
    const Vec f = problem.drift(t_prev, y);
    Vec out(static_cast<std::size_t>(problem.d));
    for (int i = 0; i < problem.d; ++i) {
        out[static_cast<std::size_t>(i)] = h * f[static_cast<std::size_t>(i)];
    }
    add_diffusion(problem, t_prev, y, noise.dw_full, out);
    return plus(y, out);
}

Trajectory integrate(const SDEProblem& problem, const TemporalGrid& grid, SchemeKind kind,
                     WienerPath& path, RngStream stream,
                     std::vector<StepNoise>* noises_out) {
    if (grid.terminal_time() != problem.terminal_time) {
        throw std::invalid_argument("integrate: grid horizon differs from the problem's T");
    }
    if (path.dim() != problem.m) {
        throw std::invalid_argument("integrate: path dimension differs from the problem's m");
    }
    if (kind != SchemeKind::EulerMaruyama) require_commutative(problem);

    const bool split = (kind == SchemeKind::RandomizedMilstein);
    const RngStream tau_base = stream.derive(stream_tag::tau);
    path.materialize_grid(grid);  // grid values independent of stepping order

    Trajectory traj{grid, {}};
    traj.states.reserve(grid.step_count() + 1);
    traj.states.push_back(problem.initial_state);

    Vec y = problem.initial_state;
    StepNoise noise;
    for (std::size_t j = 1; j <= grid.step_count(); ++j) {
        const double t_prev = grid.time(j - 1);
        const double h = grid.step(j);
        RngStream step_stream = tau_base.derive(j);
        if (split) {
            sample_step_noise_into(noise, path, step_stream, t_prev, h);
        } else {
            sample_step_noise_full_into(noise, path, step_stream, t_prev, h);
        }
        switch (kind) {
            case SchemeKind::EulerMaruyama:
                y = euler_step(problem, t_prev, y, h, noise);
                break;
            case SchemeKind::ClassicalMilstein:
                y = classical_milstein_step(problem, t_prev, y, h, noise);
                break;
            case SchemeKind::RandomizedMilstein:
                y = randomized_milstein_step(problem, t_prev, y, h, noise);
                break;
        }
        if (!all_finite(y)) {
            throw NonFiniteStateError(j, std::string(scheme_name(kind)) +
                                             ": non-finite state at step " + std::to_string(j));
        }
        traj.states.push_back(y);
        if (noises_out) noises_out->push_back(noise);
    }
    return traj;
}

}  // namespace randmil
