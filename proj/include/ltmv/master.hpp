#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltmv/manifest.hpp"
#include "ltmv/net.hpp"

namespace ltmv {

struct MasterOptions {
    std::uint16_t port = 0;         // 0 binds an ephemeral loopback port
    double setup_timeout_s = 30.0;  // all workers connected and validated
    double run_timeout_s = 120.0;   // whole job, from the Vector broadcast
    double drain_timeout_s = 2.0;   // wait for workers to hang up after Done
};

struct MasterReport {
    bool success = false;
    std::vector<double> b;
    double decode_seconds = 0.0;     // Vector broadcast to completion
    std::uint64_t results_used = 0;  // results that fed the decode
    std::uint64_t results_received = 0;
    std::vector<std::uint64_t> per_worker_used;
    std::vector<std::uint64_t> per_worker_received;
    std::string failure_reason;
};

// One job: bind, wait for the manifest's p workers, broadcast x, ingest
// results into the strategy's decoder, broadcast Done, report. The listener
// is bound in the constructor so port() is valid before run().
class Master {
public:
    Master(JobManifest manifest, std::vector<double> x, MasterOptions opts = {});
    std::uint16_t port() const { return port_; }
    MasterReport run();

private:
    JobManifest manifest_;
    std::vector<double> x_;
    MasterOptions opts_;
    Socket listener_;
    std::uint16_t port_ = 0;
};

}  // namespace ltmv
