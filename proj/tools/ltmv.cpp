// Command-line surface over the library: simulation, closed-form analysis,
// decode-overhead studies, and the distributed master/worker runtime. Every
// command echoes its fully resolved configuration as '#' comment lines, so a
// run is reproducible from any of its outputs.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "ltmv/analysis.hpp"
#include "ltmv/delaysim.hpp"
#include "ltmv/lt_decoder.hpp"
#include "ltmv/lt_graph.hpp"
#include "ltmv/manifest.hpp"
#include "ltmv/master.hpp"
#include "ltmv/matrix.hpp"
#include "ltmv/rng.hpp"
#include "ltmv/soliton.hpp"
#include "ltmv/worker.hpp"

namespace fs = std::filesystem;
using namespace ltmv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Resolved-config echo, prepended to stdout and every CSV artifact.
class Echo {
public:
    explicit Echo(std::string command) : command_(std::move(command)) {}
    void add(const std::string& key, const std::string& value) {
        items_.emplace_back(key, value);
    }
    void add(const std::string& key, double value) { add(key, fmt(value)); }
    void add(const std::string& key, std::uint64_t value) {
        add(key, std::to_string(value));
    }

    std::string header() const {
        std::string out = "# ltmv " + command_ + "\n";
        for (const auto& [k, v] : items_) out += "# " + k + "=" + v + "\n";
        return out;
    }
    void print() const { std::fputs(header().c_str(), stdout); }

private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> items_;
};

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

// Strategy flags shared by simulate/encode. The chosen strategy decides
// which of r/k/alpha/c/delta matter.
struct StrategyFlags {
    std::string name = "lt";
    unsigned p = 10;
    unsigned r = 2;
    unsigned k = 5;
    double alpha = 2.0;
    double c = 0.03;
    double delta = 0.5;

    void attach(CLI::App* cmd) {
        cmd->add_option("--strategy", name, "uncoded | rep | mds | lt")
            ->check(CLI::IsMember({"uncoded", "rep", "mds", "lt"}));
        cmd->add_option("--p", p, "worker count");
        cmd->add_option("--r", r, "replication factor (rep)");
        cmd->add_option("--k", k, "MDS data blocks (mds)");
        cmd->add_option("--alpha", alpha, "encoded row budget factor (lt)");
        cmd->add_option("--c", c, "robust soliton c (lt)");
        cmd->add_option("--delta", delta, "robust soliton delta (lt)");
    }

    StrategySpec resolve() const {
        StrategySpec spec;
        if (name == "uncoded") spec = StrategySpec::uncoded(p);
        else if (name == "rep") spec = StrategySpec::replication(p, r);
        else if (name == "mds") spec = StrategySpec::mds(p, k);
        else spec = StrategySpec::lt(p, alpha, c, delta);
        spec.validate();
        return spec;
    }

    void echo(Echo& echo, const StrategySpec& spec) const {
        echo.add("strategy", spec.name());
        echo.add("p", std::uint64_t(spec.p));
        switch (spec.kind) {
            case StrategySpec::Kind::Replication:
                echo.add("r", std::uint64_t(spec.r));
                break;
            case StrategySpec::Kind::Mds:
                echo.add("k", std::uint64_t(spec.k));
                break;
            case StrategySpec::Kind::Lt:
                echo.add("alpha", spec.alpha);
                echo.add("c", spec.c);
                echo.add("delta", spec.delta);
                break;
            case StrategySpec::Kind::Uncoded:
                break;
        }
    }
};

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (std::uint64_t(rd()) << 32) ^ rd();
}

// ---- simulate ----------------------------------------------------------

struct SimulateArgs {
    StrategyFlags strategy;
    std::uint64_t m = 10000;
    double mu = 0.2;
    double tau = 0.005;
    std::uint64_t trials = 500;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out = "sim_out";
};

int cmd_simulate(const SimulateArgs& args) {
    StrategySpec spec = args.strategy.resolve();
    DelayParams params{args.mu, args.tau, spec.p};
    params.validate();
    if (args.trials == 0) throw std::invalid_argument("trials must be positive");
    std::uint64_t seed = args.seed_given ? args.seed : entropy_seed();

    Echo echo("simulate");
    args.strategy.echo(echo, spec);
    echo.add("m", args.m);
    echo.add("mu", args.mu);
    echo.add("tau", args.tau);
    echo.add("trials", args.trials);
    echo.add("seed", seed);
    echo.add("out", args.out);
    echo.print();

    MonteCarloSummary summary =
        run_monte_carlo(spec, args.m, params, args.trials, seed);
    fs::create_directories(args.out);

    {
        auto out = open_out(fs::path(args.out) / "trials.csv");
        out << echo.header() << "trial,latency,total_tasks,decode_threshold,cap_bound";
        for (unsigned w = 0; w < spec.p; ++w) out << ",tasks_" << w;
        out << "\n";
        for (std::size_t t = 0; t < summary.trials.size(); ++t) {
            const TrialOutcome& trial = summary.trials[t];
            out << t << ',' << fmt(trial.latency) << ',' << trial.total_tasks << ','
                << trial.decode_threshold << ',' << (trial.cap_bound ? 1 : 0);
            for (auto tasks : trial.tasks) out << ',' << tasks;
            out << "\n";
        }
    }
    {
        auto out = open_out(fs::path(args.out) / "summary.csv");
        out << echo.header() << "quantity,value\n";
        out << "trials," << summary.trials.size() << "\n";
        out << "mean_latency," << fmt(summary.mean_latency) << "\n";
        out << "sd_latency," << fmt(summary.sd_latency) << "\n";
        out << "se_latency," << fmt(summary.se_latency) << "\n";
        out << "mean_tasks," << fmt(summary.mean_tasks) << "\n";
        out << "sd_tasks," << fmt(summary.sd_tasks) << "\n";
        out << "se_tasks," << fmt(summary.se_tasks) << "\n";
        if (spec.kind == StrategySpec::Kind::Lt) {
            out << "mean_decode_threshold," << fmt(summary.mean_decode_threshold) << "\n";
            out << "cap_binding_fraction," << fmt(summary.cap_binding_fraction) << "\n";
        }
    }
    {
        auto out = open_out(fs::path(args.out) / "tails.csv");
        out << echo.header() << "kind,threshold,probability\n";
        for (const auto& pt : summary.latency_tail)
            out << "latency," << fmt(pt.threshold) << ',' << fmt(pt.probability) << "\n";
        for (const auto& pt : summary.task_tail)
            out << "tasks," << fmt(pt.threshold) << ',' << fmt(pt.probability) << "\n";
    }

    std::printf("trials=%zu mean_latency=%s mean_tasks=%s\n", summary.trials.size(),
                fmt(summary.mean_latency).c_str(), fmt(summary.mean_tasks).c_str());
    return kExitOk;
}

// ---- analyze -----------------------------------------------------------

struct AnalyzeArgs {
    std::uint64_t m = 10000;
    unsigned p = 10;
    double mu = 0.2;
    double tau = 0.005;
    unsigned r = 2;
    unsigned k = 5;
    double alpha = 2.0;
    double c = 0.03;
    double delta = 0.5;
    std::uint64_t md = 0;  // 0: estimate from md_trials synthetic decodes
    std::uint64_t md_trials = 100;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::vector<double> c0_grid = {500.0, 1000.0, 2000.0};
    std::string out;  // optional CSV path
};

int cmd_analyze(const AnalyzeArgs& args) {
    DelayParams params{args.mu, args.tau, args.p};
    params.validate();
    StrategySpec::replication(args.p, args.r).validate();
    StrategySpec::mds(args.p, args.k).validate();
    StrategySpec::lt(args.p, args.alpha, args.c, args.delta).validate();
    std::uint64_t seed = args.seed_given ? args.seed : entropy_seed();

    // Decode threshold for the LT bounds: given, or the mean of seeded
    // synthetic decodes.
    double md_mean;
    if (args.md > 0) {
        md_mean = double(args.md);
    } else {
        if (args.md_trials == 0) throw std::invalid_argument("md-trials must be positive");
        auto dist = DegreeDistribution::robust(args.m, args.c, args.delta);
        double sum = 0.0;
        std::uint64_t completed = 0;
        for (std::uint64_t t = 0; t < args.md_trials; ++t) {
            auto threshold =
                sample_decode_threshold(dist, args.alpha, derive_seed(seed, t));
            if (threshold) {
                sum += double(*threshold);
                ++completed;
            }
        }
        if (completed == 0)
            throw std::runtime_error("no synthetic decode completed; cannot estimate m_d");
        md_mean = sum / double(completed);
    }

    Echo echo("analyze");
    echo.add("m", args.m);
    echo.add("p", std::uint64_t(args.p));
    echo.add("mu", args.mu);
    echo.add("tau", args.tau);
    echo.add("r", std::uint64_t(args.r));
    echo.add("k", std::uint64_t(args.k));
    echo.add("alpha", args.alpha);
    echo.add("c", args.c);
    echo.add("delta", args.delta);
    echo.add("m_d", md_mean);
    echo.add("seed", seed);
    echo.print();

    double uncoded = rep_latency_mean(args.m, params, 1);
    double rep = rep_latency_mean(args.m, params, args.r);
    double rep_approx = rep_latency_mean_approx(args.m, params, args.r);
    double mds = mds_latency_mean(args.m, params, args.k);
    double mds_approx = mds_latency_mean_approx(args.m, params, args.k);
    auto [lt_lo, lt_hi] = lt_latency_bounds(std::uint64_t(md_mean + 0.5), params);

    std::printf("%-10s %-22s %s\n", "strategy", "mean latency", "notes");
    std::printf("%-10s %-22s %s\n", "uncoded", fmt(uncoded).c_str(), "");
    std::printf("%-10s %-22s log-approx %s\n", "rep", fmt(rep).c_str(),
                fmt(rep_approx).c_str());
    std::printf("%-10s %-22s log-approx %s\n", "mds", fmt(mds).c_str(),
                fmt(mds_approx).c_str());
    std::printf("%-10s [%s, %s] at m_d=%s\n", "lt", fmt(lt_lo).c_str(),
                fmt(lt_hi).c_str(), fmt(md_mean).c_str());
    std::printf("\n%-8s %-22s %s\n", "C0", "mds tail bound", "rep tail bound");
    for (double c0 : args.c0_grid) {
        double mds_bound = mds_comp_tail_bound(args.m, params, args.k, c0);
        double rep_bound = rep_comp_tail_bound(args.m, params, args.r, c0);
        std::printf("%-8s %-22s %s\n", fmt(c0).c_str(), fmt(mds_bound).c_str(),
                    fmt(rep_bound).c_str());
    }

    if (!args.out.empty()) {
        auto out = open_out(args.out);
        out << echo.header() << "section,strategy,key,value\n";
        out << "means,uncoded,mean_latency," << fmt(uncoded) << "\n";
        out << "means,rep,mean_latency," << fmt(rep) << "\n";
        out << "means,rep,mean_latency_approx," << fmt(rep_approx) << "\n";
        out << "means,mds,mean_latency," << fmt(mds) << "\n";
        out << "means,mds,mean_latency_approx," << fmt(mds_approx) << "\n";
        out << "means,lt,latency_lower," << fmt(lt_lo) << "\n";
        out << "means,lt,latency_upper," << fmt(lt_hi) << "\n";
        out << "means,lt,m_d," << fmt(md_mean) << "\n";
        for (double c0 : args.c0_grid) {
            out << "tail,mds," << fmt(c0) << ','
                << fmt(mds_comp_tail_bound(args.m, params, args.k, c0)) << "\n";
            out << "tail,rep," << fmt(c0) << ','
                << fmt(rep_comp_tail_bound(args.m, params, args.r, c0)) << "\n";
        }
    }
    return kExitOk;
}

// ---- overhead ----------------------------------------------------------

struct OverheadArgs {
    std::uint64_t m = 10000;
    double alpha = 2.0;
    double c = 0.03;
    double delta = 0.5;
    std::uint64_t trials = 10;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out = "overhead_out";
};

int cmd_overhead(const OverheadArgs& args) {
    if (args.trials == 0) throw std::invalid_argument("trials must be positive");
    auto dist = DegreeDistribution::robust(args.m, args.c, args.delta);
    std::uint64_t seed = args.seed_given ? args.seed : entropy_seed();

    Echo echo("overhead");
    echo.add("m", args.m);
    echo.add("alpha", args.alpha);
    echo.add("c", args.c);
    echo.add("delta", args.delta);
    echo.add("trials", args.trials);
    echo.add("seed", seed);
    echo.add("out", args.out);
    echo.print();

    OverheadStats stats = estimate_overhead(dist, args.alpha, args.trials, seed);
    fs::create_directories(args.out);

    for (std::size_t t = 0; t < stats.trials.size(); ++t) {
        const OverheadTrial& trial = stats.trials[t];
        auto out = open_out(fs::path(args.out) /
                            ("trajectory_" + std::to_string(t) + ".csv"));
        out << echo.header() << "# trial=" << t << "\nreceived,decoded\n";
        for (std::size_t i = 0; i < trial.trajectory.size(); ++i)
            out << (i + 1) << ',' << trial.trajectory[i] << "\n";
    }
    {
        auto out = open_out(fs::path(args.out) / "overhead.csv");
        out << echo.header();
        out << "# completed_trials=" << stats.completed_trials << "\n";
        out << "# mean_symbols=" << fmt(stats.mean_symbols) << "\n";
        out << "# max_symbols=" << stats.max_symbols << "\n";
        out << "# epsilon_hat=" << fmt(stats.epsilon_hat) << "\n";
        out << "trial,completed,symbols_used\n";
        for (std::size_t t = 0; t < stats.trials.size(); ++t)
            out << t << ',' << (stats.trials[t].completed ? 1 : 0) << ','
                << stats.trials[t].symbols_used << "\n";
    }

    std::printf("completed=%llu/%llu mean_symbols=%s max_symbols=%llu epsilon_hat=%s\n",
                (unsigned long long)stats.completed_trials,
                (unsigned long long)args.trials, fmt(stats.mean_symbols).c_str(),
                (unsigned long long)stats.max_symbols, fmt(stats.epsilon_hat).c_str());
    return kExitOk;
}

// ---- gen / encode ------------------------------------------------------

struct GenArgs {
    std::uint64_t rows = 0;
    std::uint64_t cols = 1;
    long lo = -10;
    long hi = 10;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out;
};

int cmd_gen(const GenArgs& args) {
    if (args.rows == 0 || args.cols == 0)
        throw std::invalid_argument("rows and cols must be positive");
    if (args.lo > args.hi) throw std::invalid_argument("lo must not exceed hi");
    std::uint64_t seed = args.seed_given ? args.seed : entropy_seed();

    Echo echo("gen");
    echo.add("rows", args.rows);
    echo.add("cols", args.cols);
    echo.add("lo", std::to_string(args.lo));
    echo.add("hi", std::to_string(args.hi));
    echo.add("seed", seed);
    echo.add("out", args.out);
    echo.print();

    Rng rng(seed);
    Matrix a(args.rows, args.cols);
    std::uint64_t span = std::uint64_t(args.hi - args.lo) + 1;
    for (std::uint64_t i = 0; i < args.rows; ++i)
        for (std::uint64_t j = 0; j < args.cols; ++j)
            a.at(i, j) = double(long(rng.uniform_below(span)) + args.lo);
    save_matrix(a, args.out);
    return kExitOk;
}

struct EncodeArgs {
    StrategyFlags strategy;
    std::string matrix;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out = "job";
};

int cmd_encode(const EncodeArgs& args) {
    StrategySpec spec = args.strategy.resolve();
    std::uint64_t seed = args.seed_given ? args.seed : entropy_seed();

    Echo echo("encode");
    args.strategy.echo(echo, spec);
    echo.add("matrix", args.matrix);
    echo.add("seed", seed);
    echo.add("out", args.out);
    echo.print();

    Matrix a = load_matrix(args.matrix);
    JobManifest manifest = encode_and_stage(a, spec, seed, args.out);
    std::printf("m=%llu n=%llu m_e=%llu\nworker,file,start_index,count\n",
                (unsigned long long)manifest.m, (unsigned long long)manifest.n,
                (unsigned long long)manifest.m_e);
    for (std::size_t w = 0; w < manifest.parts.size(); ++w)
        std::printf("%zu,%s,%llu,%llu\n", w, manifest.parts[w].file.c_str(),
                    (unsigned long long)manifest.parts[w].start_index,
                    (unsigned long long)manifest.parts[w].count);
    return kExitOk;
}

// ---- master / worker ---------------------------------------------------

struct MasterArgs {
    std::string manifest;
    std::string x;
    std::uint16_t port = 0;
    double setup_timeout = 30.0;
    double run_timeout = 120.0;
    std::string save_b;
    std::string report;  // optional CSV path
};

int cmd_master(const MasterArgs& args) {
    JobManifest manifest = load_manifest(args.manifest);
    std::vector<double> x = load_vector(args.x);

    MasterOptions opts;
    opts.port = args.port;
    opts.setup_timeout_s = args.setup_timeout;
    opts.run_timeout_s = args.run_timeout;
    Master master(std::move(manifest), x, opts);

    Echo echo("master");
    echo.add("manifest", args.manifest);
    echo.add("x", args.x);
    echo.add("port", std::uint64_t(master.port()));
    echo.add("setup_timeout", args.setup_timeout);
    echo.add("run_timeout", args.run_timeout);
    echo.print();
    std::printf("listening on port %u\n", unsigned(master.port()));
    std::fflush(stdout);

    MasterReport report = master.run();

    std::string csv = echo.header() + "scope,key,value\n";
    csv += "job,success," + std::to_string(report.success ? 1 : 0) + "\n";
    csv += "job,decode_seconds," + fmt(report.decode_seconds) + "\n";
    csv += "job,results_used," + std::to_string(report.results_used) + "\n";
    csv += "job,results_received," + std::to_string(report.results_received) + "\n";
    for (std::size_t w = 0; w < report.per_worker_used.size(); ++w) {
        csv += "worker_" + std::to_string(w) + ",used," +
               std::to_string(report.per_worker_used[w]) + "\n";
        csv += "worker_" + std::to_string(w) + ",received," +
               std::to_string(report.per_worker_received[w]) + "\n";
    }
    if (!report.success) csv += "job,failure_reason," + report.failure_reason + "\n";
    std::fputs(csv.c_str(), stdout);
    if (!args.report.empty()) open_out(args.report) << csv;

    if (!report.success) {
        std::fprintf(stderr, "job failed: %s\n", report.failure_reason.c_str());
        return kExitRuntime;
    }
    if (!args.save_b.empty()) save_vector(report.b, args.save_b);
    return kExitOk;
}

struct WorkerArgs {
    WorkerConfig cfg;
    unsigned port = 0;
};

int cmd_worker(const WorkerArgs& args) {
    WorkerConfig cfg = args.cfg;
    cfg.port = std::uint16_t(args.port);

    Echo echo("worker");
    echo.add("id", std::uint64_t(cfg.worker_id));
    echo.add("host", cfg.host);
    echo.add("port", std::uint64_t(cfg.port));
    echo.add("rows", cfg.rows_file);
    echo.add("start_index", cfg.start_index);
    echo.add("initial_delay", cfg.initial_delay_s);
    echo.add("task_delay", cfg.per_task_delay_s);
    echo.print();
    std::fflush(stdout);

    return run_worker(cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rateless-coded distributed matrix-vector toolkit"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo delay simulation");
    sim.strategy.attach(sim_cmd);
    sim_cmd->add_option("--m", sim.m, "source rows");
    sim_cmd->add_option("--mu", sim.mu, "exponential delay rate");
    sim_cmd->add_option("--tau", sim.tau, "per-task compute time");
    sim_cmd->add_option("--trials", sim.trials, "Monte-Carlo trials");
    sim_cmd->add_option("--seed", sim.seed)->each([&](const std::string&) {
        sim.seed_given = true;
    });
    sim_cmd->add_option("--out", sim.out, "output directory");

    AnalyzeArgs ana;
    auto* ana_cmd = app.add_subcommand("analyze", "closed-form means and bounds");
    ana_cmd->add_option("--m", ana.m, "source rows");
    ana_cmd->add_option("--p", ana.p, "worker count");
    ana_cmd->add_option("--mu", ana.mu, "exponential delay rate");
    ana_cmd->add_option("--tau", ana.tau, "per-task compute time");
    ana_cmd->add_option("--r", ana.r, "replication factor");
    ana_cmd->add_option("--k", ana.k, "MDS data blocks");
    ana_cmd->add_option("--alpha", ana.alpha, "encoded row budget factor");
    ana_cmd->add_option("--c", ana.c, "robust soliton c");
    ana_cmd->add_option("--delta", ana.delta, "robust soliton delta");
    ana_cmd->add_option("--md", ana.md, "decode threshold override (0 = estimate)");
    ana_cmd->add_option("--md-trials", ana.md_trials, "synthetic decodes for m_d");
    ana_cmd->add_option("--seed", ana.seed)->each([&](const std::string&) {
        ana.seed_given = true;
    });
    ana_cmd->add_option("--c0-grid", ana.c0_grid, "tail bound thresholds");
    ana_cmd->add_option("--out", ana.out, "optional CSV path");

    OverheadArgs ovh;
    auto* ovh_cmd = app.add_subcommand("overhead", "decode overhead trajectories");
    ovh_cmd->add_option("--m", ovh.m, "source rows");
    ovh_cmd->add_option("--alpha", ovh.alpha, "encoded row budget factor");
    ovh_cmd->add_option("--c", ovh.c, "robust soliton c");
    ovh_cmd->add_option("--delta", ovh.delta, "robust soliton delta");
    ovh_cmd->add_option("--trials", ovh.trials, "decode trials");
    ovh_cmd->add_option("--seed", ovh.seed)->each([&](const std::string&) {
        ovh.seed_given = true;
    });
    ovh_cmd->add_option("--out", ovh.out, "output directory");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate an integer matrix file");
    gen_cmd->add_option("--rows", gen.rows, "row count")->required();
    gen_cmd->add_option("--cols", gen.cols, "column count");
    gen_cmd->add_option("--lo", gen.lo, "smallest entry");
    gen_cmd->add_option("--hi", gen.hi, "largest entry");
    gen_cmd->add_option("--seed", gen.seed)->each([&](const std::string&) {
        gen.seed_given = true;
    });
    gen_cmd->add_option("--out", gen.out, "output file")->required();

    EncodeArgs enc;
    auto* enc_cmd = app.add_subcommand("encode", "encode and stage a job");
    enc.strategy.attach(enc_cmd);
    enc_cmd->add_option("--matrix", enc.matrix, "input matrix file")->required();
    enc_cmd->add_option("--seed", enc.seed)->each([&](const std::string&) {
        enc.seed_given = true;
    });
    enc_cmd->add_option("--out", enc.out, "staging directory");

    MasterArgs mas;
    auto* mas_cmd = app.add_subcommand("master", "run the job master");
    mas_cmd->add_option("--manifest", mas.manifest, "manifest path")->required();
    mas_cmd->add_option("--x", mas.x, "input vector file")->required();
    mas_cmd->add_option("--port", mas.port, "listen port (0 = ephemeral)");
    mas_cmd->add_option("--setup-timeout", mas.setup_timeout, "seconds");
    mas_cmd->add_option("--run-timeout", mas.run_timeout, "seconds");
    mas_cmd->add_option("--save-b", mas.save_b, "write the output vector here");
    mas_cmd->add_option("--report", mas.report, "write the report CSV here");

    WorkerArgs wrk;
    auto* wrk_cmd = app.add_subcommand("worker", "run one worker");
    wrk_cmd->add_option("--id", wrk.cfg.worker_id, "worker id")->required();
    wrk_cmd->add_option("--host", wrk.cfg.host, "master host");
    wrk_cmd->add_option("--port", wrk.port, "master port")->required();
    wrk_cmd->add_option("--rows", wrk.cfg.rows_file, "row file")->required();
    wrk_cmd->add_option("--start-index", wrk.cfg.start_index, "first encoded index");
    wrk_cmd->add_option("--initial-delay", wrk.cfg.initial_delay_s, "seconds");
    wrk_cmd->add_option("--task-delay", wrk.cfg.per_task_delay_s, "seconds per row");
    wrk_cmd->add_option("--connect-attempts", wrk.cfg.connect_attempts);
    wrk_cmd->add_option("--connect-delay-ms", wrk.cfg.connect_delay_ms);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sim_cmd) return cmd_simulate(sim);
        if (*ana_cmd) return cmd_analyze(ana);
        if (*ovh_cmd) return cmd_overhead(ovh);
        if (*gen_cmd) return cmd_gen(gen);
        if (*enc_cmd) return cmd_encode(enc);
        if (*mas_cmd) return cmd_master(mas);
        if (*wrk_cmd) return cmd_worker(wrk);
    } catch (const std::invalid_argument& ex) {
        std::fprintf(stderr, "usage error: %s\n", ex.what());
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return kExitRuntime;
    }
    return kExitUsage;
}
