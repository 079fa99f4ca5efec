#include "randmil/harness.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "randmil/stream_tags.hpp"

namespace randmil {

void run_paths(std::size_t count, int workers, const std::function<void(std::size_t)>& body) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const std::size_t pool = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (std::size_t w = 0; w < pool; ++w) {
        threads.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < count; i += pool) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void ExperimentConfig::validate() const {
    if (samples == 0) throw std::invalid_argument("config: samples must be >= 1");
    if (p < 2.0) throw std::invalid_argument("config: p must be >= 2");
    if (n_min > n_max) throw std::invalid_argument("config: n_min must be <= n_max");
    if (n_min < 0) throw std::invalid_argument("config: n_min must be >= 0");
    if (schemes.empty()) throw std::invalid_argument("config: scheme list is empty");
    if (reference == ReferenceKind::FineRandomizedMilstein && n_ref <= n_max) {
        throw std::invalid_argument("config: n_ref must exceed n_max for a numerical reference");
    }
    if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
}

namespace {

// Context tag for the tau substream of one (scheme, grid) run.
std::uint64_t run_tag(SchemeKind kind, int level) {
    return (static_cast<std::uint64_t>(kind) << 32) ^ static_cast<std::uint64_t>(level);
}

struct StudyData {
    NamedProblem named;
    std::vector<TemporalGrid> grids;   // one per n in n_min..n_max
    std::vector<int> levels;
    TemporalGrid ref_grid{std::vector<double>{0.0, 1.0}};
    bool numerical_reference = false;
};

StudyData prepare(const ExperimentConfig& config) {
    config.validate();
    StudyData data;
    data.named = make_named_problem(config.problem, config.problem_params);
    const double T = data.named.problem.terminal_time;
    for (int n = config.n_min; n <= config.n_max; ++n) {
        data.grids.push_back(uniform_grid(T, std::size_t{1} << n));
        data.levels.push_back(n);
    }
    data.numerical_reference = (config.reference == ReferenceKind::FineRandomizedMilstein);
    if (data.numerical_reference) {
        data.ref_grid = uniform_grid(T, std::size_t{1} << config.n_ref);
    } else if (!data.named.exact) {
        throw std::invalid_argument("config: problem '" + config.problem +
                                    "' has no exact oracle; use a numerical reference");
    }
    return data;
}

using Clock = std::chrono::steady_clock;

ErrorReport convergence_core(const ExperimentConfig& config, bool timed) {
    const StudyData data = prepare(config);
    const SDEProblem& problem = data.named.problem;
    const double T = problem.terminal_time;
    const std::size_t pairs = config.schemes.size() * data.grids.size();
    const std::size_t samples = config.samples;

    // diffs[pair][path]: per-path deviation from the reference (terminal
    // Euclidean norm, or max over the coarse grid). seconds[pair][path]
    // holds that path's integration time when timing is requested.
    std::vector<std::vector<double>> diffs(pairs, std::vector<double>(samples, 0.0));
    std::vector<std::vector<double>> seconds;
    if (timed) seconds.assign(pairs, std::vector<double>(samples, 0.0));

    const RngStream master(config.seed);
    run_paths(samples, config.workers, [&](std::size_t path_index) {
        const RngStream path_stream = master.derive(path_index);
        WienerPath path(problem.m, T, path_stream.derive(stream_tag::wiener));
        const RngStream run_base = path_stream.derive(stream_tag::run);

        // Reference solution first, on the same path.
        Trajectory ref_traj{data.ref_grid, {}};
        if (data.numerical_reference) {
            path.reserve(2 * data.ref_grid.step_count());
            ref_traj = integrate(problem, data.ref_grid, SchemeKind::RandomizedMilstein, path,
                                 run_base.derive(run_tag(SchemeKind::RandomizedMilstein,
                                                         config.n_ref)));
        } else {
            path.query(T);  // pins W(T) before any coarse grid fills in
        }
        // Path setup is shared by all schemes; keep it out of the timed
        // integration loops.
        for (const TemporalGrid& grid : data.grids) path.materialize_grid(grid);

        std::size_t pair = 0;
        for (const SchemeKind kind : config.schemes) {
            for (std::size_t g = 0; g < data.grids.size(); ++g, ++pair) {
                const TemporalGrid& grid = data.grids[g];
                const Clock::time_point start = Clock::now();
                const Trajectory traj =
                    integrate(problem, grid, kind, path, run_base.derive(run_tag(kind, data.levels[g])));
                if (timed) {
                    seconds[pair][path_index] =
                        std::chrono::duration<double>(Clock::now() - start).count();
                }

                // Deviation from the reference at the comparison points.
                const std::size_t stride =
                    data.numerical_reference ? data.ref_grid.step_count() / grid.step_count() : 0;
                double dev = 0.0;
                const std::size_t first =
                    config.max_norm_metric ? 0 : grid.step_count();
                for (std::size_t j = first; j <= grid.step_count(); ++j) {
                    Vec ref_state;
                    if (data.numerical_reference) {
                        ref_state = ref_traj.states[j * stride];
                    } else {
                        ref_state = data.named.exact(grid.time(j), path.query(grid.time(j)));
                    }
                    double norm2 = 0.0;
                    for (std::size_t i = 0; i < ref_state.size(); ++i) {
                        const double di = traj.states[j][i] - ref_state[i];
                        norm2 += di * di;
                    }
                    dev = std::max(dev, std::sqrt(norm2));
                }
                diffs[pair][path_index] = dev;
            }
        }
    });

    ErrorReport report;
    report.study = timed ? "timing" : "convergence";
    std::size_t pair = 0;
    for (const SchemeKind kind : config.schemes) {
        for (std::size_t g = 0; g < data.grids.size(); ++g, ++pair) {
            const LpEstimate est = lp_from_scalars(diffs[pair], config.p);
            ErrorEntry entry;
            entry.scheme = scheme_name(kind);
            entry.level = data.levels[g];
            entry.h = max_step(data.grids[g]);
            entry.samples = samples;
            entry.p = config.p;
            entry.error = est.value;
            entry.std_error = est.std_error;
            if (timed) {
                double total = 0.0;
                for (double s : seconds[pair]) total += s;
                entry.cpu_seconds = total;
            }
            report.entries.push_back(entry);
        }
    }
    compute_fits(report);
    return report;
}

}  // namespace

ErrorReport strong_convergence_study(const ExperimentConfig& config) {
    return convergence_core(config, false);
}

ErrorReport work_precision_study(const ExperimentConfig& config) {
    return convergence_core(config, true);
}

ErrorReport residual_decay_study(const ExperimentConfig& config) {
    const StudyData data = prepare(config);
    if (!data.named.exact) {
        throw std::invalid_argument("residual study: problem has no exact oracle");
    }
    const SDEProblem& problem = data.named.problem;
    const double T = problem.terminal_time;
    const std::size_t samples = config.samples;

    // Per grid and path: |R^0| and max_n |sum_{j<=n} R^j|.
    std::vector<std::vector<double>> z0(data.grids.size(), std::vector<double>(samples, 0.0));
    std::vector<std::vector<double>> peaks(data.grids.size(), std::vector<double>(samples, 0.0));

    const RngStream master(config.seed);
    run_paths(samples, config.workers, [&](std::size_t path_index) {
        const RngStream path_stream = master.derive(path_index);
        WienerPath path(problem.m, T, path_stream.derive(stream_tag::wiener));
        const RngStream run_base = path_stream.derive(stream_tag::run);

        for (std::size_t g = 0; g < data.grids.size(); ++g) {
            const TemporalGrid& grid = data.grids[g];
            const RngStream run_stream =
                run_base.derive(run_tag(SchemeKind::RandomizedMilstein, data.levels[g]));
            const std::vector<StepNoise> noises =
                sample_noises_for_grid(problem.m, grid, path, run_stream);

            std::vector<Vec> exact_states(grid.step_count() + 1);
            for (std::size_t j = 0; j <= grid.step_count(); ++j) {
                exact_states[j] = data.named.exact(grid.time(j), path.query(grid.time(j)));
            }
            const std::vector<Vec> res = residual(problem, grid, exact_states, path, noises);

            z0[g][path_index] = euclidean_norm(res[0]);
            Vec cumsum(static_cast<std::size_t>(problem.d), 0.0);
            double peak = 0.0;
            for (std::size_t j = 1; j < res.size(); ++j) {
                for (std::size_t i = 0; i < cumsum.size(); ++i) cumsum[i] += res[j][i];
                peak = std::max(peak, euclidean_norm(cumsum));
            }
            peaks[g][path_index] = peak;
        }
    });

    ErrorReport report;
    report.study = "residual";
    for (std::size_t g = 0; g < data.grids.size(); ++g) {
        const LpEstimate head = lp_from_scalars(z0[g], config.p);
        const LpEstimate tail = lp_from_scalars(peaks[g], config.p);
        ErrorEntry entry;
        entry.scheme = "randomized-milstein";
        entry.level = data.levels[g];
        entry.h = max_step(data.grids[g]);
        entry.samples = samples;
        entry.p = config.p;
        entry.error = head.value + tail.value;
        entry.std_error = std::sqrt(head.std_error * head.std_error +
                                    tail.std_error * tail.std_error);
        report.entries.push_back(entry);
    }
    compute_fits(report);
    return report;
}

}  // namespace randmil
