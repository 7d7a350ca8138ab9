#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ltmv/delay_params.hpp"
#include "ltmv/strategies.hpp"

namespace ltmv {

struct TrialOutcome {
    double latency = 0.0;                  // T
    std::vector<std::uint64_t> tasks;      // completed tasks per worker at T
    std::uint64_t total_tasks = 0;         // C
    std::uint64_t decode_threshold = 0;    // m_d (LT trials only)
    bool cap_bound = false;                // some worker exhausted its cap (LT)
};

// How an LT trial picks its decode threshold m_d.
struct MdMode {
    enum class Kind { Fixed, Coupled };
    Kind kind = Kind::Coupled;
    double epsilon = 0.0;  // Fixed: m_d = ceil((1+epsilon)*m)
    double c = 0.03;       // Coupled: sample M' from a real synthetic decode
    double delta = 0.5;

    static MdMode fixed(double epsilon);
    static MdMode coupled(double c = 0.03, double delta = 0.5);
};

// Completed tasks of a worker with initial delay x by time t (cap applied).
// A task finishing exactly at t counts.
std::uint64_t tasks_completed_by(double t, double x, double tau, std::uint64_t cap);

// Deterministic cores taking the X_i vector directly (x.size() == p).
TrialOutcome lt_trial_with_delays(std::uint64_t m, const DelayParams& params,
                                  double alpha, std::uint64_t m_d,
                                  std::span<const double> x);
TrialOutcome mds_trial_with_delays(std::uint64_t m, const DelayParams& params,
                                   unsigned k, std::span<const double> x);
TrialOutcome rep_trial_with_delays(std::uint64_t m, const DelayParams& params,
                                   unsigned r, std::span<const double> x);

// Seeded trials: draw X_i ~ Exp(mu) and run the matching core.
TrialOutcome simulate_lt_trial(std::uint64_t m, const DelayParams& params, double alpha,
                               const MdMode& mode, std::uint64_t seed);
TrialOutcome simulate_mds_trial(std::uint64_t m, const DelayParams& params, unsigned k,
                                std::uint64_t seed);
TrialOutcome simulate_rep_trial(std::uint64_t m, const DelayParams& params, unsigned r,
                                std::uint64_t seed);

struct TailPoint {
    double threshold = 0.0;
    double probability = 0.0;  // Pr(value > threshold)
};

// Pr(V > t) for each grid point.
std::vector<TailPoint> empirical_tail(std::span<const double> values,
                                      std::span<const double> grid);
double empirical_tail_at(std::span<const double> values, double threshold);
// Order statistic at rank ceil(q*n) (q in (0,1]; q=0 gives the minimum).
double quantile(std::vector<double> values, double q);

struct MonteCarloSummary {
    std::vector<TrialOutcome> trials;
    double mean_latency = 0.0;
    double sd_latency = 0.0;  // sample standard deviation
    double se_latency = 0.0;  // standard error of the mean
    double mean_tasks = 0.0;
    double sd_tasks = 0.0;
    double se_tasks = 0.0;
    double mean_decode_threshold = 0.0;  // LT only
    double cap_binding_fraction = 0.0;   // LT only
    std::vector<TailPoint> latency_tail;
    std::vector<TailPoint> task_tail;
};

// Independent seeded trials for the given strategy. Empty grids are replaced
// by an even grid over the observed range. Uncoded runs as replication r=1.
MonteCarloSummary run_monte_carlo(const StrategySpec& spec, std::uint64_t m,
                                  const DelayParams& params, std::uint64_t trials,
                                  std::uint64_t seed,
                                  std::span<const double> latency_grid = {},
                                  std::span<const double> task_grid = {});

}  // namespace ltmv
