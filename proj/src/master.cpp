#include "ltmv/master.hpp"

#include <sys/socket.h>

#include <chrono>
#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "ltmv/lt_decoder.hpp"
#include "ltmv/lt_graph.hpp"
#include "ltmv/soliton.hpp"

namespace ltmv {

namespace {

using Clock = std::chrono::steady_clock;

struct Event {
    std::size_t conn;
    std::optional<WireMessage> msg;  // empty = connection closed
};

struct EventQueue {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<Event> events;

    void push(Event ev) {
        {
            std::lock_guard lock(mu);
            events.push_back(std::move(ev));
        }
        cv.notify_one();
    }

    std::optional<Event> pop_until(Clock::time_point deadline) {
        std::unique_lock lock(mu);
        if (!cv.wait_until(lock, deadline, [&] { return !events.empty(); }))
            return std::nullopt;
        Event ev = std::move(events.front());
        events.pop_front();
        return ev;
    }
};

struct Conn {
    Socket sock;
    std::thread reader;
    int worker_id = -1;  // set after a valid Setup
    bool open = true;
};

// Accumulates rows for block strategies (uncoded, replication, MDS): value
// per encoded index, first writer wins, with per-block fill counts.
class BlockSink {
public:
    BlockSink(std::uint64_t m_e, std::uint64_t block_len, unsigned needed)
        : block_len_(block_len),
          needed_(needed),
          values_(m_e, 0.0),
          present_(m_e, false),
          fill_(m_e / block_len, 0) {}

    // Returns true when this result newly contributed.
    bool ingest(std::uint64_t index, double value) {
        if (index >= values_.size()) throw std::out_of_range("encoded index out of range");
        if (present_[index]) return false;
        present_[index] = true;
        values_[index] = value;
        std::uint64_t block = index / block_len_;
        if (++fill_[block] == block_len_) completed_.push_back(unsigned(block));
        return true;
    }

    bool complete() const { return completed_.size() >= needed_; }
    const std::vector<unsigned>& completed_blocks() const { return completed_; }
    std::uint64_t block_len() const { return block_len_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::uint64_t block_len_;
    unsigned needed_;
    std::vector<double> values_;
    std::vector<bool> present_;
    std::vector<std::uint64_t> fill_;
    std::vector<unsigned> completed_;
};

}  // namespace

Master::Master(JobManifest manifest, std::vector<double> x, MasterOptions opts)
    : manifest_(std::move(manifest)), x_(std::move(x)), opts_(opts) {
    manifest_.strategy.validate();
    if (x_.size() != manifest_.n)
        throw std::invalid_argument("input vector length does not match the manifest");
    if (manifest_.parts.size() != manifest_.strategy.p)
        throw std::invalid_argument("manifest worker entries do not match p");
    listener_ = tcp_listen(opts_.port);
    port_ = local_port(listener_);
}

MasterReport Master::run() {
    const unsigned p = manifest_.strategy.p;
    const auto kind = manifest_.strategy.kind;
    MasterReport report;
    report.per_worker_used.assign(p, 0);
    report.per_worker_received.assign(p, 0);

    // Strategy decoding state.
    std::optional<EncodingGraph> graph;
    std::optional<PeelingDecoder> lt;
    std::optional<BlockSink> blocks;
    std::optional<Matrix> generator;
    switch (kind) {
        case StrategySpec::Kind::Lt: {
            auto dist = DegreeDistribution::robust(manifest_.m, manifest_.strategy.c,
                                                   manifest_.strategy.delta);
            graph.emplace(generate_graph(manifest_.m, manifest_.strategy.alpha, dist,
                                         manifest_.seed));
            if (graph->encoded_count() != manifest_.m_e)
                throw std::runtime_error("manifest m_e does not match the seeded graph");
            lt.emplace(*graph);
            break;
        }
        case StrategySpec::Kind::Uncoded:
        case StrategySpec::Kind::Replication: {
            unsigned r = kind == StrategySpec::Kind::Uncoded ? 1 : manifest_.strategy.r;
            unsigned groups = p / r;
            blocks.emplace(manifest_.m, manifest_.m / groups, groups);
            break;
        }
        case StrategySpec::Kind::Mds: {
            unsigned k = manifest_.strategy.k;
            blocks.emplace(manifest_.m_e, manifest_.m / k, k);
            generator.emplace(mds_generator(p, k, manifest_.seed));
            break;
        }
    }

    EventQueue queue;
    std::vector<std::unique_ptr<Conn>> conns;
    std::vector<int> conn_of_worker(p, -1);
    std::vector<bool> worker_finished(p, false);

    auto start_reader = [&](std::size_t idx) {
        Conn& conn = *conns[idx];
        conn.reader = std::thread([&queue, &conn, idx] {
            try {
                while (auto msg = recv_message(conn.sock)) queue.push({idx, std::move(msg)});
            } catch (const std::exception&) {
                // fall through to the close event
            }
            queue.push({idx, std::nullopt});
        });
    };

    auto teardown = [&] {
        for (auto& conn : conns) {
            if (conn->sock.valid()) ::shutdown(conn->sock.fd(), SHUT_RDWR);
        }
        for (auto& conn : conns)
            if (conn->reader.joinable()) conn->reader.join();
    };

    auto fail = [&](const std::string& reason) {
        for (auto& conn : conns) {
            if (!conn->open) continue;
            try {
                send_message(conn->sock, ErrorMsg{reason});
            } catch (const std::exception&) {
            }
        }
        teardown();
        report.success = false;
        report.failure_reason = reason;
        return report;
    };

    // Phase 1: accept connections until every worker id has checked in.
    const auto setup_deadline =
        Clock::now() + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(opts_.setup_timeout_s));
    unsigned ready = 0;
    while (ready < p) {
        // Accept anything pending, then process queued Setups.
        while (auto sock = tcp_accept(listener_, 0)) {
            conns.push_back(std::make_unique<Conn>(Conn{std::move(*sock), {}, -1, true}));
            start_reader(conns.size() - 1);
        }
        auto ev = queue.pop_until(std::min(setup_deadline, Clock::now() + std::chrono::milliseconds(50)));
        if (!ev) {
            if (Clock::now() >= setup_deadline)
                return fail("setup timeout: not all workers connected");
            continue;
        }
        Conn& conn = *conns[ev->conn];
        if (!ev->msg) {
            conn.open = false;
            if (conn.worker_id >= 0)
                return fail("worker disconnected during setup");
            continue;  // stray connection came and went
        }
        auto* setup = std::get_if<SetupMsg>(&*ev->msg);
        if (!setup) continue;  // ignore anything early and odd
        if (setup->worker_id >= p)
            return fail("setup: worker id out of range");
        if (conn_of_worker[setup->worker_id] >= 0)
            return fail("setup: duplicate worker id");
        const auto& part = manifest_.parts[setup->worker_id];
        if (setup->rows != part.count || setup->cols != manifest_.n)
            return fail("setup: worker row file does not match the manifest");
        conn.worker_id = int(setup->worker_id);
        conn_of_worker[setup->worker_id] = int(ev->conn);
        ++ready;
    }

    // Phase 2: broadcast x and ingest results.
    for (unsigned w = 0; w < p; ++w) {
        try {
            send_message(conns[conn_of_worker[w]]->sock, VectorMsg{x_});
        } catch (const std::exception&) {
            return fail("failed to send the input vector to worker " + std::to_string(w));
        }
    }
    const auto t0 = Clock::now();
    const auto run_deadline =
        t0 + std::chrono::duration_cast<Clock::duration>(
                 std::chrono::duration<double>(opts_.run_timeout_s));

    auto complete = [&] {
        return kind == StrategySpec::Kind::Lt ? lt->complete() : blocks->complete();
    };
    auto feasible = [&]() -> bool {
        // Can any needed result still arrive?
        auto worker_live = [&](unsigned w) {
            int ci = conn_of_worker[w];
            return ci >= 0 && conns[ci]->open && !worker_finished[w];
        };
        if (kind == StrategySpec::Kind::Lt) {
            for (unsigned w = 0; w < p; ++w)
                if (worker_live(w) &&
                    report.per_worker_received[w] < manifest_.parts[w].count)
                    return true;
            return false;
        }
        // Block strategies: count blocks that can still be completed.
        std::uint64_t block_len = blocks->block_len();
        unsigned total_blocks = unsigned(manifest_.m_e / block_len);
        std::vector<bool> obtainable(total_blocks, false);
        for (unsigned b : blocks->completed_blocks()) obtainable[b] = true;
        for (unsigned w = 0; w < p; ++w) {
            if (!worker_live(w) && report.per_worker_received[w] < manifest_.parts[w].count)
                continue;
            // Finished or live workers make their blocks obtainable.
            std::uint64_t first = manifest_.parts[w].start_index / block_len;
            std::uint64_t last =
                (manifest_.parts[w].start_index + manifest_.parts[w].count - 1) / block_len;
            for (std::uint64_t b = first; b <= last; ++b) obtainable[b] = true;
        }
        unsigned needed = kind == StrategySpec::Kind::Mds ? manifest_.strategy.k
                                                          : total_blocks;
        unsigned have = 0;
        for (bool b : obtainable)
            if (b) ++have;
        return have >= needed;
    };

    bool done = false;
    while (!done) {
        auto ev = queue.pop_until(run_deadline);
        if (!ev) return fail("job timeout");
        Conn& conn = *conns[ev->conn];
        if (!ev->msg) {
            conn.open = false;
            if (!complete() && !feasible())
                return fail("worker loss left the job infeasible");
            continue;
        }
        if (conn.worker_id < 0) continue;  // ignore chatter from strays
        auto w = unsigned(conn.worker_id);
        if (auto* res = std::get_if<ResultMsg>(&*ev->msg)) {
            ++report.results_received;
            ++report.per_worker_received[w];
            if (complete()) continue;  // late result: no-op by design
            bool used = false;
            try {
                if (kind == StrategySpec::Kind::Lt) {
                    used = lt->ingest(res->encoded_index, res->value) ==
                           PeelingDecoder::Ingest::Accepted;
                } else {
                    used = blocks->ingest(res->encoded_index, res->value);
                }
            } catch (const std::out_of_range&) {
                return fail("worker " + std::to_string(w) +
                            " sent an out-of-range result index");
            }
            if (used) ++report.per_worker_used[w];
            if (complete()) done = true;
        } else if (std::get_if<ProgressMsg>(&*ev->msg)) {
            worker_finished[w] = true;
            if (!complete() && !feasible())
                return fail("all workers exhausted before the decode finished");
        } else if (auto* err = std::get_if<ErrorMsg>(&*ev->msg)) {
            conn.open = false;
            if (!complete() && !feasible())
                return fail("worker " + std::to_string(w) + " failed: " + err->text);
        }
    }
    // Phase 3: harvest the output, broadcast Done, drain.
    try {
        switch (kind) {
            case StrategySpec::Kind::Lt:
                report.b = lt->values();
                report.results_used = lt->received();
                break;
            case StrategySpec::Kind::Uncoded:
            case StrategySpec::Kind::Replication:
                report.b = blocks->values();
                report.results_used = manifest_.m;
                break;
            case StrategySpec::Kind::Mds: {
                unsigned k = manifest_.strategy.k;
                std::uint64_t len = blocks->block_len();
                std::vector<std::vector<double>> picked;
                std::vector<unsigned> ids;
                for (unsigned b : blocks->completed_blocks()) {
                    if (ids.size() == k) break;
                    ids.push_back(b);
                    auto begin = blocks->values().begin() + b * len;
                    picked.emplace_back(begin, begin + len);
                }
                report.b = mds_decode(picked, ids, *generator);
                report.results_used = std::uint64_t(k) * len;
                break;
            }
        }
    } catch (const std::exception& ex) {
        return fail(std::string("decode failed: ") + ex.what());
    }
    report.decode_seconds = std::chrono::duration<double>(Clock::now() - t0).count();

    for (auto& conn : conns) {
        if (!conn->open) continue;
        try {
            send_message(conn->sock, DoneMsg{});
        } catch (const std::exception&) {
        }
    }

    // Let workers hang up on their own; force the stragglers.
    const auto drain_deadline =
        Clock::now() + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(opts_.drain_timeout_s));
    auto open_count = [&] {
        std::size_t n = 0;
        for (auto& conn : conns)
            if (conn->open) ++n;
        return n;
    };
    while (open_count() > 0) {
        auto ev = queue.pop_until(drain_deadline);
        if (!ev) break;
        if (!ev->msg) conns[ev->conn]->open = false;
        // Late frames (Results in flight when Done went out) land here, by
        // design without effect.
    }
    teardown();
    report.success = true;
    return report;
}

}  // namespace ltmv
