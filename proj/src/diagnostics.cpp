#include "randmil/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "randmil/scheme.hpp"

namespace randmil {

LpEstimate lp_from_scalars(const std::vector<double>& zs, double p) {
    if (zs.empty()) throw std::invalid_argument("lp estimate: empty sample set");
    const double mcount = static_cast<double>(zs.size());
    double moment = 0.0;
    for (double z : zs) moment += std::pow(z, p);
    moment /= mcount;
    const double value = std::pow(moment, 1.0 / p);
    if (moment <= 0.0 || zs.size() < 2) return {value, 0.0};

    double var = 0.0;
    for (double z : zs) {
        const double dev = std::pow(z, p) - moment;
        var += dev * dev;
    }
    var /= (mcount - 1.0);
    const double se_moment = std::sqrt(var / mcount);
    const double se = std::pow(moment, 1.0 / p - 1.0) / p * se_moment;
    return {value, se};
}

LpEstimate lp_max_error(const std::vector<std::vector<Vec>>& diff_samples, double p) {
    if (p < 2.0) throw std::invalid_argument("lp_max_error: p must be >= 2");
    if (diff_samples.empty()) throw std::invalid_argument("lp_max_error: empty sample set");
    const std::size_t len = diff_samples.front().size();
    std::vector<double> zs;
    zs.reserve(diff_samples.size());
    for (const auto& sample : diff_samples) {
        if (sample.size() != len) {
            throw std::invalid_argument("lp_max_error: samples must share one grid length");
        }
        double z = 0.0;
        for (const Vec& d : sample) z = std::max(z, euclidean_norm(d));
        zs.push_back(z);
    }
    return lp_from_scalars(zs, p);
}

LpEstimate terminal_lp_error(const std::vector<Vec>& diff_at_T, double p) {
    if (p < 2.0) throw std::invalid_argument("terminal_lp_error: p must be >= 2");
    if (diff_at_T.empty()) throw std::invalid_argument("terminal_lp_error: empty sample set");
    std::vector<double> zs;
    zs.reserve(diff_at_T.size());
    for (const Vec& d : diff_at_T) zs.push_back(euclidean_norm(d));
    return lp_from_scalars(zs, p);
}

std::vector<Vec> residual(const SDEProblem& problem, const TemporalGrid& grid,
                          const std::vector<Vec>& y, WienerPath& path,
                          const std::vector<StepNoise>& noises) {
    (void)path;
    if (y.size() != grid.step_count() + 1) {
        throw std::invalid_argument("residual: grid function length does not match the grid");
    }
    if (noises.size() != grid.step_count()) {
        throw std::invalid_argument("residual: need one StepNoise per step");
    }
    const std::size_t d = static_cast<std::size_t>(problem.d);
    std::vector<Vec> out(y.size());
    out[0].resize(d);
    for (std::size_t i = 0; i < d; ++i) out[0][i] = y[0][i] - problem.initial_state[i];
    for (std::size_t j = 1; j < y.size(); ++j) {
        const Vec phi = phi_increment(problem, grid.time(j - 1), y[j - 1], grid.step(j),
                                      noises[j - 1]);
        out[j].resize(d);
        for (std::size_t i = 0; i < d; ++i) {
            // y_j - (y_{j-1} + phi): zero bit-for-bit on the scheme's own
            // trajectory, which applies exactly this update.
            out[j][i] = y[j][i] - (y[j - 1][i] + phi[i]);
        }
    }
    return out;
}

LpEstimate spijker_norm(const std::vector<std::vector<Vec>>& residual_samples, double p) {
    if (p < 2.0) throw std::invalid_argument("spijker_norm: p must be >= 2");
    if (residual_samples.empty()) throw std::invalid_argument("spijker_norm: empty sample set");
    const std::size_t len = residual_samples.front().size();
    if (len == 0) throw std::invalid_argument("spijker_norm: empty residual sequence");
    std::vector<double> z0s, maxima;
    z0s.reserve(residual_samples.size());
    maxima.reserve(residual_samples.size());
    for (const auto& sample : residual_samples) {
        if (sample.size() != len) {
            throw std::invalid_argument("spijker_norm: samples must share one length");
        }
        z0s.push_back(euclidean_norm(sample[0]));
        Vec cumsum(sample[0].size(), 0.0);
        double peak = 0.0;
        for (std::size_t j = 1; j < len; ++j) {
            for (std::size_t i = 0; i < cumsum.size(); ++i) cumsum[i] += sample[j][i];
            peak = std::max(peak, euclidean_norm(cumsum));
        }
        maxima.push_back(peak);
    }
    const LpEstimate head = lp_from_scalars(z0s, p);
    const LpEstimate tail = lp_from_scalars(maxima, p);
    return {head.value + tail.value,
            std::sqrt(head.std_error * head.std_error + tail.std_error * tail.std_error)};
}

EocFit eoc_regression(const std::vector<double>& hs, const std::vector<double>& errors) {
    if (hs.size() != errors.size() || hs.size() < 2) {
        throw std::invalid_argument("eoc_regression: need >= 2 (h, error) pairs");
    }
    const double n = static_cast<double>(hs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (!(hs[i] > 0.0) || !(errors[i] > 0.0)) {
            throw std::invalid_argument("eoc_regression: values must be positive");
        }
        const double x = std::log(hs[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    return {slope, intercept};
}

const SchemeFit* ErrorReport::fit_for(std::string_view scheme) const {
    for (const auto& fit : fits) {
        if (fit.scheme == scheme) return &fit;
    }
    return nullptr;
}

double ErrorReport::slope() const { return fits.empty() ? 0.0 : fits.front().slope; }
double ErrorReport::slope_intercept() const { return fits.empty() ? 0.0 : fits.front().intercept; }

void compute_fits(ErrorReport& report) {
    report.fits.clear();
    std::vector<std::string> order;
    for (const auto& entry : report.entries) {
        if (std::find(order.begin(), order.end(), entry.scheme) == order.end()) {
            order.push_back(entry.scheme);
        }
    }
    for (const auto& scheme : order) {
        std::vector<double> hs, errs;
        for (const auto& entry : report.entries) {
            if (entry.scheme == scheme && entry.error > 0.0) {
                hs.push_back(entry.h);
                errs.push_back(entry.error);
            }
        }
        SchemeFit fit{scheme, 0.0, 0.0};
        if (hs.size() >= 2) {
            const EocFit f = eoc_regression(hs, errs);
            fit.slope = f.slope;
            fit.intercept = f.intercept;
        }
        report.fits.push_back(fit);
    }
}

}  // namespace randmil
