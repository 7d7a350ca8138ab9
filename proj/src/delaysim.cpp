#include "ltmv/delaysim.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "ltmv/lt_decoder.hpp"
#include "ltmv/lt_graph.hpp"
#include "ltmv/rng.hpp"
#include "ltmv/soliton.hpp"

namespace ltmv {

MdMode MdMode::fixed(double epsilon) {
    MdMode m;
    m.kind = Kind::Fixed;
    m.epsilon = epsilon;
    return m;
}

MdMode MdMode::coupled(double c, double delta) {
    MdMode m;
    m.kind = Kind::Coupled;
    m.c = c;
    m.delta = delta;
    return m;
}

std::uint64_t tasks_completed_by(double t, double x, double tau, std::uint64_t cap) {
    if (t < x) return 0;
    double v = (t - x) / tau;
    // Nudge so a task finishing exactly at t survives the floor.
    auto n = static_cast<std::uint64_t>(std::floor(v + 1e-9 + v * 1e-12));
    return std::min(n, cap);
}

TrialOutcome lt_trial_with_delays(std::uint64_t m, const DelayParams& params,
                                  double alpha, std::uint64_t m_d,
                                  std::span<const double> x) {
    params.validate();
    if (x.size() != params.p) throw std::invalid_argument("need one X per worker");
    if (!(alpha > 1.0)) throw std::invalid_argument("lt alpha must exceed 1");
    std::uint64_t cap = ceil_count(alpha * static_cast<double>(m) / params.p);
    if (cap * params.p < m_d)
        throw std::invalid_argument("per-worker cap cannot reach the decode threshold");

    // Merge the p completion streams; ties resolved by ascending worker index.
    using Event = std::pair<double, unsigned>;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> heap;
    for (unsigned i = 0; i < params.p; ++i) heap.emplace(x[i] + params.tau, i);

    TrialOutcome out;
    out.tasks.assign(params.p, 0);
    out.decode_threshold = m_d;
    std::uint64_t done = 0;
    double t = 0.0;
    while (done < m_d) {
        auto [when, worker] = heap.top();
        heap.pop();
        t = when;
        ++out.tasks[worker];
        ++done;
        if (out.tasks[worker] < cap)
            heap.emplace(x[worker] + params.tau * static_cast<double>(out.tasks[worker] + 1),
                         worker);
    }
    out.latency = t;
    out.total_tasks = done;
    out.cap_bound = std::any_of(out.tasks.begin(), out.tasks.end(),
                                [&](std::uint64_t c) { return c == cap; });
    return out;
}

TrialOutcome mds_trial_with_delays(std::uint64_t m, const DelayParams& params,
                                   unsigned k, std::span<const double> x) {
    params.validate();
    if (x.size() != params.p) throw std::invalid_argument("need one X per worker");
    if (k < 1 || k > params.p) throw std::invalid_argument("mds k must satisfy 1 <= k <= p");
    if (m % k != 0) throw std::invalid_argument("mds k must divide row count");
    std::uint64_t per_worker = m / k;

    std::vector<double> sorted(x.begin(), x.end());
    std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end());
    double t = sorted[k - 1] + params.tau * static_cast<double>(per_worker);

    TrialOutcome out;
    out.latency = t;
    out.tasks.resize(params.p);
    for (unsigned i = 0; i < params.p; ++i) {
        out.tasks[i] = tasks_completed_by(t, x[i], params.tau, per_worker);
        out.total_tasks += out.tasks[i];
    }
    return out;
}

TrialOutcome rep_trial_with_delays(std::uint64_t m, const DelayParams& params,
                                   unsigned r, std::span<const double> x) {
    params.validate();
    if (x.size() != params.p) throw std::invalid_argument("need one X per worker");
    if (r < 1 || params.p % r != 0)
        throw std::invalid_argument("replication factor must divide worker count");
    unsigned groups = params.p / r;
    if (m % groups != 0) throw std::invalid_argument("group count must divide row count");
    std::uint64_t per_worker = m / groups;

    double t = 0.0;
    for (unsigned g = 0; g < groups; ++g) {
        double w = x[g * r];
        for (unsigned j = 1; j < r; ++j) w = std::min(w, x[g * r + j]);
        t = std::max(t, w + params.tau * static_cast<double>(per_worker));
    }

    TrialOutcome out;
    out.latency = t;
    out.tasks.resize(params.p);
    for (unsigned i = 0; i < params.p; ++i) {
        out.tasks[i] = tasks_completed_by(t, x[i], params.tau, per_worker);
        out.total_tasks += out.tasks[i];
    }
    return out;
}

namespace {

std::vector<double> draw_delays(const DelayParams& params, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(params.p);
    for (auto& v : x) v = rng.exponential(params.mu);
    return x;
}

std::uint64_t pick_threshold(std::uint64_t m, double alpha, const MdMode& mode,
                             std::uint64_t seed) {
    if (mode.kind == MdMode::Kind::Fixed)
        return ceil_count((1.0 + mode.epsilon) * static_cast<double>(m));
    DegreeDistribution dist = DegreeDistribution::robust(m, mode.c, mode.delta);
    // A synthetic decode occasionally fails within the alpha*m budget; retry
    // with a fresh graph (the threshold is a per-trial draw either way).
    for (std::uint64_t attempt = 1; attempt <= 64; ++attempt) {
        auto thr = sample_decode_threshold(dist, alpha, derive_seed(seed, attempt));
        if (thr) return *thr;
    }
    throw std::runtime_error("coupled decode threshold: no completing decode in 64 tries");
}

}  // namespace

TrialOutcome simulate_lt_trial(std::uint64_t m, const DelayParams& params, double alpha,
                               const MdMode& mode, std::uint64_t seed) {
    std::uint64_t m_d = pick_threshold(m, alpha, mode, derive_seed(seed, 1));
    return lt_trial_with_delays(m, params, alpha, m_d,
                                draw_delays(params, derive_seed(seed, 0)));
}

TrialOutcome simulate_mds_trial(std::uint64_t m, const DelayParams& params, unsigned k,
                                std::uint64_t seed) {
    return mds_trial_with_delays(m, params, k, draw_delays(params, derive_seed(seed, 0)));
}

TrialOutcome simulate_rep_trial(std::uint64_t m, const DelayParams& params, unsigned r,
                                std::uint64_t seed) {
    return rep_trial_with_delays(m, params, r, draw_delays(params, derive_seed(seed, 0)));
}

double empirical_tail_at(std::span<const double> values, double threshold) {
    if (values.empty()) return 0.0;
    std::size_t n = 0;
    for (double v : values)
        if (v > threshold) ++n;
    return static_cast<double>(n) / static_cast<double>(values.size());
}

std::vector<TailPoint> empirical_tail(std::span<const double> values,
                                      std::span<const double> grid) {
    std::vector<TailPoint> out;
    out.reserve(grid.size());
    for (double t : grid) out.push_back({t, empirical_tail_at(values, t)});
    return out;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile of empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level in [0,1]");
    std::sort(values.begin(), values.end());
    if (q == 0.0) return values.front();
    auto rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(values.size())));
    return values[rank - 1];
}

namespace {

struct Moments {
    double mean = 0.0, sd = 0.0, se = 0.0;
};

Moments moments(std::span<const double> v) {
    Moments m;
    if (v.empty()) return m;
    double sum = 0.0;
    for (double x : v) sum += x;
    auto n = static_cast<double>(v.size());
    m.mean = sum / n;
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - m.mean) * (x - m.mean);
        m.sd = std::sqrt(ss / (n - 1.0));
        m.se = m.sd / std::sqrt(n);
    }
    return m;
}

std::vector<double> even_grid(std::span<const double> values, std::size_t points) {
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    std::vector<double> grid;
    grid.reserve(points);
    if (hi <= lo) {
        grid.push_back(lo);
        return grid;
    }
    for (std::size_t i = 0; i < points; ++i)
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(points - 1));
    return grid;
}

}  // namespace

MonteCarloSummary run_monte_carlo(const StrategySpec& spec, std::uint64_t m,
                                  const DelayParams& params, std::uint64_t trials,
                                  std::uint64_t seed,
                                  std::span<const double> latency_grid,
                                  std::span<const double> task_grid) {
    spec.validate();
    params.validate();
    if (spec.p != params.p)
        throw std::invalid_argument("strategy and delay model disagree on worker count");
    if (trials < 1) throw std::invalid_argument("need at least one trial");

    MonteCarloSummary s;
    s.trials.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::uint64_t ts = derive_seed(seed, t);
        switch (spec.kind) {
            case StrategySpec::Kind::Uncoded:
                s.trials.push_back(simulate_rep_trial(m, params, 1, ts));
                break;
            case StrategySpec::Kind::Replication:
                s.trials.push_back(simulate_rep_trial(m, params, spec.r, ts));
                break;
            case StrategySpec::Kind::Mds:
                s.trials.push_back(simulate_mds_trial(m, params, spec.k, ts));
                break;
            case StrategySpec::Kind::Lt:
                s.trials.push_back(simulate_lt_trial(
                    m, params, spec.alpha, MdMode::coupled(spec.c, spec.delta), ts));
                break;
        }
    }

    std::vector<double> lat, tasks;
    lat.reserve(trials);
    tasks.reserve(trials);
    std::uint64_t cap_bound = 0;
    double thr_sum = 0.0;
    for (const auto& t : s.trials) {
        lat.push_back(t.latency);
        tasks.push_back(static_cast<double>(t.total_tasks));
        if (t.cap_bound) ++cap_bound;
        thr_sum += static_cast<double>(t.decode_threshold);
    }
    Moments ml = moments(lat), mt = moments(tasks);
    s.mean_latency = ml.mean;
    s.sd_latency = ml.sd;
    s.se_latency = ml.se;
    s.mean_tasks = mt.mean;
    s.sd_tasks = mt.sd;
    s.se_tasks = mt.se;
    if (spec.kind == StrategySpec::Kind::Lt) {
        s.mean_decode_threshold = thr_sum / static_cast<double>(trials);
        s.cap_binding_fraction =
            static_cast<double>(cap_bound) / static_cast<double>(trials);
    }

    std::vector<double> lg(latency_grid.begin(), latency_grid.end());
    std::vector<double> tg(task_grid.begin(), task_grid.end());
    if (lg.empty()) lg = even_grid(lat, 41);
    if (tg.empty()) tg = even_grid(tasks, 41);
    s.latency_tail = empirical_tail(lat, lg);
    s.task_tail = empirical_tail(tasks, tg);
    return s;
}

}  // namespace ltmv
