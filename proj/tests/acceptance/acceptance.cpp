// Acceptance gate: one criterion per number, one [PASS]/[FAIL] line each.
// Run with a criterion number (1..9) or no argument for the full gate.
// Tolerances are fixed here on purpose; loosening them is a design change,
// not a test fix.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "ltmv/analysis.hpp"
#include "ltmv/delaysim.hpp"
#include "ltmv/lt_decoder.hpp"
#include "ltmv/lt_graph.hpp"
#include "ltmv/manifest.hpp"
#include "ltmv/master.hpp"
#include "ltmv/matrix.hpp"
#include "ltmv/net.hpp"
#include "ltmv/rng.hpp"
#include "ltmv/soliton.hpp"
#include "ltmv/strategies.hpp"
#include "ltmv/wire.hpp"
#include "ltmv/worker.hpp"

using namespace ltmv;
namespace fs = std::filesystem;

namespace {

const DelayParams kRegime{0.2, 0.005, 10};  // mu, tau, p of the reference runs

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

Matrix integer_matrix(std::uint64_t rows, std::uint64_t cols, std::uint64_t seed) {
    Rng rng(seed);
    Matrix a(rows, cols);
    for (std::uint64_t i = 0; i < rows; ++i)
        for (std::uint64_t j = 0; j < cols; ++j)
            a.at(i, j) = double(rng.uniform_below(21)) - 10.0;
    return a;
}

std::vector<double> integer_vector(std::uint64_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = double(rng.uniform_below(21)) - 10.0;
    return x;
}

double frac_at_least(const std::vector<TrialOutcome>& trials, double threshold) {
    std::size_t count = 0;
    for (const auto& t : trials)
        if (double(t.total_tasks) >= threshold) ++count;
    return double(count) / double(trials.size());
}

// --- criterion 1: closed-form agreement ---------------------------------

bool criterion_1(std::string& detail) {
    Timer timer;
    const double mds_expected = 13.228174603174603;
    const double rep_expected = 15.708333333333332;

    auto mds = run_monte_carlo(StrategySpec::mds(10, 5), 10000, kRegime, 500, 101);
    auto rep = run_monte_carlo(StrategySpec::replication(10, 2), 10000, kRegime, 500, 102);
    double mds_err = std::fabs(mds.mean_latency - mds_expected) / mds_expected;
    double rep_err = std::fabs(rep.mean_latency - rep_expected) / rep_expected;
    double elapsed = timer.seconds();

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "mds mean %.4f vs %.4f (%.2f%%), rep mean %.4f vs %.4f (%.2f%%), %.1fs",
                  mds.mean_latency, mds_expected, 100 * mds_err, rep.mean_latency,
                  rep_expected, 100 * rep_err, elapsed);
    detail = buf;
    return mds_err <= 0.02 && rep_err <= 0.02 && elapsed < 10.0;
}

// --- criterion 2: lt latency sandwich -----------------------------------

bool criterion_2(std::string& detail) {
    Timer timer;
    bool ok = true;
    detail.clear();
    for (std::uint64_t m : {10000ull, 2000ull}) {
        auto lt = run_monte_carlo(StrategySpec::lt(10, 2.0), m, kRegime, 500, 201);
        auto [lo, hi] = lt_latency_bounds(
            std::uint64_t(lt.mean_decode_threshold + 0.5), kRegime);
        bool inside = lo <= lt.mean_latency && lt.mean_latency <= hi;
        ok = ok && inside;
        char buf[160];
        std::snprintf(buf, sizeof buf, "m=%llu: %.4f in [%.4f, %.4f] md=%.1f%s; ",
                      (unsigned long long)m, lt.mean_latency, lo, hi,
                      lt.mean_decode_threshold, inside ? "" : " OUT");
        detail += buf;
    }
    double elapsed = timer.seconds();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", elapsed);
    detail += buf;
    return ok && elapsed < 60.0;
}

// --- criterion 3: latency / computation ordering ------------------------

bool criterion_3(std::string& detail) {
    auto lt = run_monte_carlo(StrategySpec::lt(10, 2.0), 10000, kRegime, 500, 301);
    auto mds = run_monte_carlo(StrategySpec::mds(10, 5), 10000, kRegime, 500, 302);
    auto rep = run_monte_carlo(StrategySpec::replication(10, 2), 10000, kRegime, 500, 303);

    std::vector<double> lt_lat, mds_lat;
    for (const auto& t : lt.trials) lt_lat.push_back(t.latency);
    for (const auto& t : mds.trials) mds_lat.push_back(t.latency);
    double t90 = quantile(lt_lat, 0.9);
    double lt_tail = empirical_tail_at(lt_lat, t90);
    double mds_tail = empirical_tail_at(mds_lat, t90);

    bool latency_order = lt.mean_latency < mds.mean_latency &&
                         mds.mean_latency < rep.mean_latency;
    bool task_order = lt.mean_tasks < mds.mean_tasks && lt.mean_tasks < rep.mean_tasks;
    bool tail_order = lt_tail <= mds_tail;

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "T: %.3f < %.3f < %.3f (%s); C: %.0f vs %.0f/%.0f (%s); "
                  "tail@%.3f: %.3f <= %.3f (%s)",
                  lt.mean_latency, mds.mean_latency, rep.mean_latency,
                  latency_order ? "ok" : "BAD", lt.mean_tasks, mds.mean_tasks,
                  rep.mean_tasks, task_order ? "ok" : "BAD", t90, lt_tail, mds_tail,
                  tail_order ? "ok" : "BAD");
    detail = buf;
    return latency_order && task_order && tail_order;
}

// --- criterion 4: decoder correctness on integer instances --------------

bool criterion_4(std::string& detail) {
    const std::uint64_t m = 1000, n = 8;
    auto dist = DegreeDistribution::robust(m, 0.03, 0.5);
    unsigned completed = 0, exact = 0;
    for (unsigned i = 0; i < 100; ++i) {
        std::uint64_t seed = derive_seed(401, i);
        auto graph = generate_graph(m, 2.0, dist, derive_seed(seed, 0));
        Matrix a = integer_matrix(m, n, derive_seed(seed, 1));
        auto x = integer_vector(n, derive_seed(seed, 2));

        Matrix encoded = encode_matrix(a, graph);
        std::vector<std::pair<std::uint64_t, double>> symbols;
        for (std::uint64_t j = 0; j < encoded.rows(); ++j)
            symbols.push_back({j, dot(encoded.row(j), x)});

        auto out = decode_full(symbols, graph);
        if (!out.complete) continue;
        ++completed;
        if (out.values == matvec(a, x)) ++exact;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%u/100 complete within 2m, %u exact", completed,
                  exact);
    detail = buf;
    return completed >= 99 && exact == completed;
}

// --- criterion 5: avalanche decode profile ------------------------------

bool criterion_5(std::string& detail) {
    auto dist = DegreeDistribution::robust(10000, 0.03, 0.5);
    auto stats = estimate_overhead(dist, 2.0, 10, 1);
    bool ok = true;
    double worst = 0.0;
    for (const auto& trial : stats.trials) {
        if (!trial.completed) {
            ok = false;
            continue;
        }
        std::size_t at = std::size_t(0.8 * double(trial.symbols_used));
        double frac = double(trial.trajectory[at - 1]) / 10000.0;
        worst = std::max(worst, frac);
        ok = ok && frac <= 0.10;
        ok = ok && trial.trajectory[trial.symbols_used - 1] == 10000;
        for (std::size_t i = 1; i < trial.trajectory.size(); ++i)
            ok = ok && trial.trajectory[i] >= trial.trajectory[i - 1];
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%llu/10 complete, worst decoded frac at 0.8*M' = %.3f (limit 0.10)",
                  (unsigned long long)stats.completed_trials, worst);
    detail = buf;
    return ok && stats.completed_trials == 10;
}

// --- criterion 6: computation tail bounds -------------------------------

bool criterion_6(std::string& detail) {
    const std::uint64_t m = 10000, trials = 2000;
    auto mds = run_monte_carlo(StrategySpec::mds(10, 5), m, kRegime, trials, 1);
    auto rep = run_monte_carlo(StrategySpec::replication(10, 2), m, kRegime, trials, 2);

    bool ok = true;
    detail.clear();
    for (double c0 : {500.0, 1000.0, 2000.0}) {
        for (int which = 0; which < 2; ++which) {
            const auto& sim = which == 0 ? mds : rep;
            double emp = frac_at_least(sim.trials, 20000.0 - c0);
            double bound = which == 0 ? mds_comp_tail_bound(m, kRegime, 5, c0)
                                      : rep_comp_tail_bound(m, kRegime, 2, c0);
            double se = std::sqrt(emp * (1.0 - emp) / double(trials));
            bool holds = emp >= bound - 3.0 * se;
            ok = ok && holds;
            char buf[96];
            std::snprintf(buf, sizeof buf, "%s C0=%.0f: %.4f vs %.4f%s; ",
                          which == 0 ? "mds" : "rep", c0, emp, bound,
                          holds ? "" : " VIOLATED");
            detail += buf;
        }
    }
    if (!detail.empty()) detail.pop_back();
    return ok;
}

// --- criterion 7: exponential order statistics --------------------------

bool criterion_7(std::string& detail) {
    const unsigned p = 10;
    const double mu = 0.2;
    const std::size_t samples = 100000;
    Rng rng(701);

    std::vector<std::vector<double>> order(3);
    for (auto& v : order) v.reserve(samples);
    std::vector<double> draw(p);
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& d : draw) d = rng.exponential(mu);
        std::sort(draw.begin(), draw.end());
        order[0].push_back(draw[0]);
        order[1].push_back(draw[4]);
        order[2].push_back(draw[9]);
    }

    bool ok = true;
    detail.clear();
    const unsigned ks[3] = {1, 5, 10};
    for (int i = 0; i < 3; ++i) {
        double mean = 0.0;
        for (double v : order[i]) mean += v;
        mean /= double(samples);
        double var = 0.0;
        for (double v : order[i]) var += (v - mean) * (v - mean);
        double se = std::sqrt(var / double(samples - 1) / double(samples));
        double expected = exp_order_stat_mean(p, ks[i], mu);
        bool within = std::fabs(mean - expected) <= 3.0 * se;
        ok = ok && within;
        char buf[96];
        std::snprintf(buf, sizeof buf, "k=%u: %.4f vs %.4f (se %.4f)%s; ", ks[i], mean,
                      expected, se, within ? "" : " OFF");
        detail += buf;
    }
    if (!detail.empty()) detail.pop_back();
    return ok;
}

// --- criterion 8: end-to-end runtime ------------------------------------

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("ltmv_acceptance_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct JobResult {
    MasterReport report;
    std::vector<int> exit_codes;
};

JobResult run_job(const JobManifest& manifest, const std::vector<double>& x,
                  std::vector<WorkerConfig> workers) {
    MasterOptions opts;
    opts.setup_timeout_s = 10.0;
    opts.run_timeout_s = 25.0;
    Master master(manifest, x, opts);
    std::uint16_t port = master.port();

    JobResult result;
    result.exit_codes.assign(workers.size(), -1);
    std::thread master_thread([&] { result.report = master.run(); });
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < workers.size(); ++i) {
        workers[i].port = port;
        threads.emplace_back([&, i] { result.exit_codes[i] = run_worker(workers[i]); });
    }
    for (auto& t : threads) t.join();
    master_thread.join();
    return result;
}

bool criterion_8(std::string& detail) {
    Timer timer;
    const std::uint64_t m = 500, n = 200;
    Matrix a = integer_matrix(m, n, 81);
    auto x = integer_vector(n, 82);
    auto expected = matvec(a, x);

    // LT leg: worker 3 computes rows 10x slower than the rest.
    fs::path lt_dir = fresh_dir("lt");
    JobManifest lt_manifest =
        encode_and_stage(a, StrategySpec::lt(4, 2.0), 1, lt_dir.string());
    std::vector<WorkerConfig> workers;
    for (unsigned w = 0; w < 4; ++w) {
        WorkerConfig cfg;
        cfg.worker_id = w;
        cfg.rows_file = (lt_dir / lt_manifest.parts[w].file).string();
        cfg.start_index = lt_manifest.parts[w].start_index;
        cfg.per_task_delay_s = w == 3 ? 0.004 : 0.0004;
        workers.push_back(cfg);
    }
    auto lt_run = run_job(lt_manifest, x, workers);

    std::uint64_t straggler_used = lt_run.report.per_worker_used[3];
    std::uint64_t straggler_recv = lt_run.report.per_worker_received[3];
    bool lt_ok = lt_run.report.success && lt_run.report.b == expected &&
                 lt_run.report.results_used <= 2 * m && straggler_used >= 1 &&
                 straggler_recv < lt_manifest.parts[3].count;
    for (int code : lt_run.exit_codes) lt_ok = lt_ok && code == 0;

    // MDS leg: worker 1 dies right after taking the input vector.
    fs::path mds_dir = fresh_dir("mds");
    JobManifest mds_manifest =
        encode_and_stage(a, StrategySpec::mds(3, 2), 83, mds_dir.string());
    MasterOptions opts;
    opts.setup_timeout_s = 10.0;
    opts.run_timeout_s = 25.0;
    Master master(mds_manifest, x, opts);
    std::uint16_t port = master.port();
    MasterReport mds_report;
    std::thread master_thread([&] { mds_report = master.run(); });
    std::thread dead([&] {
        Socket sock = tcp_connect_retry("127.0.0.1", port, 25, 200);
        send_message(sock, SetupMsg{1, mds_manifest.parts[1].count, n});
        recv_message(sock);  // the input vector
    });
    std::vector<std::thread> threads;
    std::vector<int> codes(3, 0);
    for (unsigned w : {0u, 2u}) {
        WorkerConfig cfg;
        cfg.worker_id = w;
        cfg.port = port;
        cfg.rows_file = (mds_dir / mds_manifest.parts[w].file).string();
        cfg.start_index = mds_manifest.parts[w].start_index;
        threads.emplace_back([&codes, cfg, w] { codes[w] = run_worker(cfg); });
    }
    dead.join();
    for (auto& t : threads) t.join();
    master_thread.join();

    bool mds_ok = mds_report.success && codes[0] == 0 && codes[2] == 0 &&
                  mds_report.b.size() == expected.size();
    if (mds_ok)
        for (std::size_t i = 0; i < expected.size(); ++i)
            mds_ok = mds_ok && std::fabs(mds_report.b[i] - expected[i]) <=
                                   1e-9 * std::max(1.0, std::fabs(expected[i]));

    double elapsed = timer.seconds();
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "lt %s (used %llu <= %llu, straggler %llu/%llu of %llu), "
                  "mds-kill %s, %.1fs",
                  lt_ok ? "ok" : "BAD", (unsigned long long)lt_run.report.results_used,
                  (unsigned long long)(2 * m), (unsigned long long)straggler_used,
                  (unsigned long long)straggler_recv,
                  (unsigned long long)lt_manifest.parts[3].count, mds_ok ? "ok" : "BAD",
                  elapsed);
    detail = buf;
    return lt_ok && mds_ok && elapsed < 30.0;
}

// --- criterion 9: protocol round trip and late-result safety ------------

WireMessage random_message(Rng& rng) {
    switch (rng.uniform_below(6)) {
        case 0:
            return SetupMsg{std::uint32_t(rng.next_u64()), rng.next_u64(), rng.next_u64()};
        case 1: {
            VectorMsg m;
            std::uint64_t n = rng.uniform_below(40);
            for (std::uint64_t i = 0; i < n; ++i) m.x.push_back(rng.normal());
            return m;
        }
        case 2:
            return ResultMsg{rng.next_u64(), rng.normal() * 1e6};
        case 3:
            return ProgressMsg{rng.next_u64()};
        case 4:
            return DoneMsg{};
        default: {
            std::string text;
            std::uint64_t n = rng.uniform_below(60);
            for (std::uint64_t i = 0; i < n; ++i)
                text.push_back(char('a' + rng.uniform_below(26)));
            return ErrorMsg{std::move(text)};
        }
    }
}

bool criterion_9(std::string& detail) {
    Rng rng(901);
    unsigned exact = 0;
    for (unsigned i = 0; i < 10000; ++i) {
        WireMessage msg = random_message(rng);
        auto frame = encode_frame(msg);
        auto [decoded, used] = decode_frame(frame);
        if (used == frame.size() && decoded == msg && encode_frame(decoded) == frame)
            ++exact;
    }

    // Late-result safety: a worker that keeps talking after Done must not
    // disturb the finished job.
    const std::uint64_t m = 10, n = 4;
    Matrix a = integer_matrix(m, n, 91);
    auto x = integer_vector(n, 92);
    fs::path dir = fresh_dir("late");
    JobManifest manifest = encode_and_stage(a, StrategySpec::uncoded(1), 93, dir.string());

    MasterOptions opts;
    opts.setup_timeout_s = 10.0;
    opts.run_timeout_s = 25.0;
    Master master(manifest, x, opts);
    std::uint16_t port = master.port();
    MasterReport report;
    std::thread master_thread([&] { report = master.run(); });

    bool protocol_ok = true;
    {
        Socket sock = tcp_connect_retry("127.0.0.1", port, 25, 200);
        send_message(sock, SetupMsg{0, m, n});
        auto vec = recv_message(sock);
        protocol_ok = vec && std::holds_alternative<VectorMsg>(*vec);
        auto y = matvec(a, x);
        for (std::uint64_t i = 0; i < m && protocol_ok; ++i)
            send_message(sock, ResultMsg{i, y[i]});
        auto done = recv_message(sock);
        protocol_ok = protocol_ok && done && std::holds_alternative<DoneMsg>(*done);
        // The job is settled; this result is a lie and must be ignored.
        send_message(sock, ResultMsg{5, 999999.0});
    }
    master_thread.join();

    bool late_ok = protocol_ok && report.success && report.b == matvec(a, x) &&
                   report.results_received == m;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%u/10000 frames bit-exact, late result %s", exact,
                  late_ok ? "ignored" : "NOT IGNORED");
    detail = buf;
    return exact == 10000 && late_ok;
}

using CriterionFn = bool (*)(std::string&);

struct Criterion {
    int number;
    const char* summary;
    CriterionFn fn;
};

const Criterion kCriteria[] = {
    {1, "closed-form latency agreement", criterion_1},
    {2, "lt latency sandwich", criterion_2},
    {3, "strategy ordering", criterion_3},
    {4, "decoder correctness", criterion_4},
    {5, "avalanche profile", criterion_5},
    {6, "computation tail bounds", criterion_6},
    {7, "order statistics", criterion_7},
    {8, "end-to-end runtime", criterion_8},
    {9, "protocol", criterion_9},
};

int run_one(const Criterion& criterion) {
    std::string detail;
    bool ok = false;
    try {
        ok = criterion.fn(detail);
    } catch (const std::exception& ex) {
        detail = std::string("exception: ") + ex.what();
    }
    std::printf("[%s] criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", criterion.number,
                criterion.summary, detail.c_str());
    std::fflush(stdout);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) {
        int wanted = std::atoi(argv[1]);
        for (const auto& criterion : kCriteria)
            if (criterion.number == wanted) return run_one(criterion);
        std::fprintf(stderr, "unknown criterion %s\n", argv[1]);
        return 2;
    }
    int failures = 0;
    for (const auto& criterion : kCriteria) failures += run_one(criterion);
    return failures == 0 ? 0 : 1;
}
