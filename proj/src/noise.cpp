#include "randmil/noise.hpp"

#include <stdexcept>

#include "randmil/stream_tags.hpp"

namespace randmil {

double sample_tau(RngStream& stream) { return stream.next_uniform01(); }

double scalar_iterated_integral(double dw, double dt) { return 0.5 * (dw * dw - dt); }

Vec commutative_iterated(const Vec& dw, double dt) {
    const int m = static_cast<int>(dw.size());
    Vec i2(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int r1 = 0; r1 < m; ++r1) {
        for (int r2 = 0; r2 < m; ++r2) {
            i2[iterated_index(r1, r2, m)] =
                (r1 == r2) ? scalar_iterated_integral(dw[static_cast<std::size_t>(r1)], dt)
                           : 0.5 * dw[static_cast<std::size_t>(r1)] * dw[static_cast<std::size_t>(r2)];
        }
    }
    return i2;
}

void chen_combine(const Vec& dw_left, const Vec& i2_left, const Vec& dw_right,
                  const Vec& i2_right, Vec& dw_full, Vec& i2_full) {
    const std::size_t m = dw_left.size();
    dw_full.resize(m);
    i2_full.resize(m * m);
    for (std::size_t r = 0; r < m; ++r) dw_full[r] = dw_left[r] + dw_right[r];
    for (std::size_t r1 = 0; r1 < m; ++r1) {
        for (std::size_t r2 = 0; r2 < m; ++r2) {
            const std::size_t k = r1 * m + r2;
            i2_full[k] = i2_left[k] + i2_right[k] + dw_left[r1] * dw_right[r2];
        }
    }
}

namespace {

void fill_iterated(const Vec& dw, double dt, Vec& i2) {
    const int m = static_cast<int>(dw.size());
    if (m == 1) {
        i2.resize(1);
        i2[0] = scalar_iterated_integral(dw[0], dt);
    } else {
        i2 = commutative_iterated(dw, dt);
    }
}

}  // namespace

void sample_step_noise_into(StepNoise& noise, WienerPath& path, RngStream& stream,
                            double t_prev, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("sample_step_noise: step size must be positive");
    const std::size_t m = static_cast<std::size_t>(path.dim());
    noise.tau = sample_tau(stream);
    noise.theta = t_prev + noise.tau * h;
    const double t_next = t_prev + h;

    noise.dw_left.resize(m);
    noise.dw_right.resize(m);
    Vec& w_prev = noise.dw_left;    // scratch until the increments are formed
    Vec& w_theta = noise.dw_right;
    path.query(t_prev, w_prev.data());
    path.query(noise.theta, w_theta.data());
    Vec w_next(m);
    path.query(t_next, w_next.data());
    for (std::size_t r = 0; r < m; ++r) {
        const double left = w_theta[r] - w_prev[r];
        const double right = w_next[r] - w_theta[r];
        noise.dw_left[r] = left;
        noise.dw_right[r] = right;
    }

    fill_iterated(noise.dw_left, noise.theta - t_prev, noise.i2_left);
    fill_iterated(noise.dw_right, t_next - noise.theta, noise.i2_right);
    chen_combine(noise.dw_left, noise.i2_left, noise.dw_right, noise.i2_right,
                 noise.dw_full, noise.i2_full);
}

StepNoise sample_step_noise(WienerPath& path, RngStream& stream, double t_prev, double h) {
    StepNoise noise;
    sample_step_noise_into(noise, path, stream, t_prev, h);
    return noise;
}

void sample_step_noise_full_into(StepNoise& noise, WienerPath& path, RngStream& stream,
                                 double t_prev, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("sample_step_noise: step size must be positive");
    const std::size_t m = static_cast<std::size_t>(path.dim());
    noise.tau = sample_tau(stream);
    noise.theta = t_prev + noise.tau * h;

    noise.dw_left.resize(m);
    Vec& w_prev = noise.dw_left;
    path.query(t_prev, w_prev.data());
    Vec w_next(m);
    path.query(t_prev + h, w_next.data());
    for (std::size_t r = 0; r < m; ++r) noise.dw_left[r] = w_next[r] - w_prev[r];

    fill_iterated(noise.dw_left, h, noise.i2_left);
    noise.dw_right.assign(m, 0.0);
    noise.i2_right.assign(m * m, 0.0);
    chen_combine(noise.dw_left, noise.i2_left, noise.dw_right, noise.i2_right,
                 noise.dw_full, noise.i2_full);
}

std::vector<StepNoise> sample_noises_for_grid(int m, const TemporalGrid& grid,
                                              WienerPath& path, RngStream stream,
                                              bool split) {
    (void)m;
    const RngStream tau_base = stream.derive(stream_tag::tau);
    path.materialize_grid(grid);
    std::vector<StepNoise> noises(grid.step_count());
    for (std::size_t j = 1; j <= grid.step_count(); ++j) {
        RngStream step_stream = tau_base.derive(j);
        if (split) {
            sample_step_noise_into(noises[j - 1], path, step_stream, grid.time(j - 1),
                                   grid.step(j));
        } else {
            sample_step_noise_full_into(noises[j - 1], path, step_stream, grid.time(j - 1),
                                        grid.step(j));
        }
    }
    return noises;
}

}  // namespace randmil
